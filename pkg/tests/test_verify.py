import dataclasses
from fractions import Fraction

import pytest

from noa.algebra import Polynomial, adjoint
from noa.fock import RationalMatrix, evaluate_matrices, fock
from noa.presentations import alpha, catalog, tensor
from noa.verify import (
    green_ansatz_check,
    green_polynomial,
    non_derivability,
    susy_suite,
    verify_identity,
    verify_number_operators,
    verify_q_number,
)

import oracles

BETAS = [Fraction(2), Fraction(-1), Fraction(1, 3)]


def para_green_poly(P):
    return green_polynomial(P.gen("f+"), P.gen("f-"))


# verify_identity

def test_identity_orthofermion_cross_term():
    O = catalog("orthofermion", n=2)
    rep = verify_identity(O, [O.expr("a1- a2+")])
    assert rep.passed and rep.residuals() == [0]


def test_identity_reports_normal_form():
    F = catalog("fermion", n=1)
    rep = verify_identity(F, [F.expr("f+ f-")])
    assert rep.status == "fail" and rep.residuals() == [F.expr("f+ f-")]


def test_identity_quasi_ortho_hamiltonian():
    P = catalog("quasi_orthofermion", beta=2)
    n1, n2 = P.number_operators
    assert verify_identity(P, [n1 + n2 - P.hamiltonian]).passed


def test_identity_inconclusive_without_confluence():
    P = catalog("parafermion", two_j=3)
    rep = verify_identity(P, [P.gen("f-")])
    assert rep.status == "inconclusive"


# number operators

@pytest.mark.parametrize("kind,params", [
    ("boson", {"n": 1}), ("boson", {"n": 2}), ("fermion", {"n": 1}), ("fermion", {"n": 2}),
    ("pseudo_fermion", {"n": 2}), ("pseudo_fermion", {"n": 3}), ("pseudo_boson", {"n": 2}),
    ("orthofermion", {"n": 3}),
    *[("quasi_orthofermion", {"beta": b}) for b in BETAS],
])
def test_number_operators_pass(kind, params):
    rep = verify_number_operators(catalog(kind, **params))
    assert rep.passed, rep.to_text()
    assert all(r == 0 for r in rep.residuals())
    if len(rep.presentation.number_operators) > 1:
        assert any(i.label.startswith("[N1, N2]") for i in rep.identities)


def test_wrong_number_operator_fails_with_witness():
    F = catalog("fermion", n=1)
    bad = dataclasses.replace(F, number_operators=(F.expr("f- f+"),), hamiltonian=None)
    rep = verify_number_operators(bad)
    assert rep.status == "fail"
    by_label = {r.label: r.residual for r in rep.identities}
    assert by_label["[N1, f+] - 1 f+ = 0"] == F.expr("-2 f+")


def test_number_operators_require_numbers():
    with pytest.raises(ValueError):
        verify_number_operators(catalog("parafermion", two_j=2))


# q-number series

def test_q_number_frontier():
    rep = verify_q_number(Fraction(1, 2), 3)
    assert rep.passed and rep.metadata["residual_min_degree"] >= 7


def test_q_number_q_zero():
    rep = verify_q_number(0, 1)
    assert rep.passed
    assert all(r.min_degree >= 3 for r in rep.residuals())


def test_q_number_monotone():
    d = [verify_q_number(Fraction(1, 2), K).metadata["residual_min_degree"] for K in (1, 2, 3)]
    assert d[0] < d[1] < d[2]


def test_q_number_matrix_oracle():
    # residual of [N_K, a+] - a+ on Fock states: only states >= K are affected
    q = Fraction(1, 2)
    P = catalog("q_boson", q=q)
    rep = fock(P, cutoff=8)
    for K in (1, 2, 3):
        r = verify_q_number(q, K).residuals()[0]
        m = evaluate_matrices(r, rep.matrices)
        assert all(m[i, j] == 0 for i in range(8) for j in range(min(K, 7)))


# SUSY suites

def test_n1_susy():
    rep = susy_suite("n1_susy")
    assert rep.passed and len(rep.identities) == 5


@pytest.mark.parametrize("n", [1, 2, 3])
def test_ortho_susy(n):
    rep = susy_suite("ortho", n=n)
    assert rep.passed and len(rep.identities) == 3 * n * n + 2 * n


@pytest.mark.parametrize("beta", BETAS)
def test_quasi_ortho_susy(beta):
    rep = susy_suite("quasi_ortho", beta=beta)
    assert rep.passed and all(r == 0 for r in rep.residuals())


def test_n1_matches_ortho_one():
    a, b = susy_suite("n1_susy"), susy_suite("ortho", n=1)
    assert [r.passed for r in a.identities] == [r.passed for r in b.identities]
    assert [str(r.residual) for r in a.identities] == [str(r.residual) for r in b.identities]


def _para_green_matrix_c(two_j, low=2):
    """Solve for c on matrices of boson (x) pseudo_fermion(2j); columns with few bosons only."""
    cutoff = low + two_j + 2
    A = tensor(catalog("boson", n=1), catalog("pseudo_fermion", n=two_j))
    rb = fock(catalog("boson", n=1), cutoff=cutoff)
    rf = fock(catalog("pseudo_fermion", n=two_j))
    Ib, If = RationalMatrix.identity(cutoff), RationalMatrix.identity(rf.dimension)
    mats = [m.kron(If) for m in rb.matrices] + [Ib.kron(m) for m in rf.matrices]
    fm = sum((A.gen(f"a{i}-") for i in range(1, two_j + 1)), Polynomial.zero(A.alphabet))
    q = A.gen("b+") * fm
    Q = evaluate_matrices(q, mats)
    Qd = evaluate_matrices(adjoint(q), mats)
    H = evaluate_matrices(A.hamiltonian, mats)
    D = Q.rows
    powers = [RationalMatrix.identity(D)]
    for _ in range(two_j):
        powers.append(powers[-1] @ Q)
    lhs = RationalMatrix.zeros(D)
    for k in range(two_j + 1):
        lhs = lhs + powers[two_j - k] @ Qd @ powers[k]
    a = alpha(two_j)
    base = lhs - (powers[two_j - 1] @ H).scale(a)
    shift = powers[two_j - 1].scale(a)
    ratios = set()
    for i in range(D):
        for j in range(low * rf.dimension):  # boson occupation < low
            if shift[i, j]:
                ratios.add(base[i, j] / shift[i, j])
            else:
                assert base[i, j] == 0
    return ratios


@pytest.mark.parametrize("two_j", [1, 2, 3])
def test_para_green_constant_matches_matrix_oracle(two_j):
    rep = susy_suite("para_green", two_j=two_j)
    assert rep.passed
    assert _para_green_matrix_c(two_j) == {rep.constants["c"]}


def test_para_green_two_reports_alpha_four():
    rep = susy_suite("para_green", two_j=2)
    assert rep.passed and rep.metadata["alpha"] == "4" and rep.constants["c"] == Fraction(-1, 2)


@pytest.mark.parametrize("kind,params", [
    ("bogus", {}), ("ortho", {"n": 0}), ("quasi_ortho", {}), ("para_green", {"two_j": 0}),
    ("quasi_ortho", {"beta": 1}),
])
def test_susy_errors(kind, params):
    with pytest.raises(ValueError):
        susy_suite(kind, **params)


def test_reports_deterministic():
    for kind, params in [("ortho", {"n": 2}), ("para_green", {"two_j": 2})]:
        assert susy_suite(kind, **params).to_json() == susy_suite(kind, **params).to_json()


# Green ansatz

@pytest.mark.parametrize("two_j", [1, 2, 3])
def test_green_ansatz(two_j):
    rep = green_ansatz_check(two_j)
    assert rep.passed and len(rep.identities) == 6


def test_green_square_two_modes():
    P = catalog("pseudo_fermion", n=2)
    fm = P.gen("a1-") + P.gen("a2-")
    assert P.reduce(fm * fm) == P.expr("2 a1- a2-")


# non-derivability

def test_green_derivable_for_single_fermion():
    P = catalog("parafermion", two_j=1)
    assert non_derivability(P, para_green_poly(P)).status == "fail"


@pytest.mark.parametrize("two_j", [2, 4, 5])
def test_green_not_derivable_by_normal_form(two_j):
    P = catalog("parafermion", two_j=two_j)
    rep = non_derivability(P, para_green_poly(P))
    assert rep.passed and rep.metadata["certificate"] == "normal form"
    assert rep.residuals()[0] != 0


def test_green_normal_form_two_j_two():
    P = catalog("parafermion", two_j=2)
    assert P.reduce(para_green_poly(P)) == P.expr("6 f- - 3 f- f+ f-")


def test_green_not_derivable_by_witness_two_j_three():
    P = catalog("parafermion", two_j=3)
    poly = para_green_poly(P)
    rep = non_derivability(P, poly)
    assert rep.passed and rep.metadata["certificate"] == "representation"
    # re-check the witness independently of the engine
    names = P.alphabet.names
    mats = [[[Fraction(x) for x in row] for row in rep.metadata["witness"][n]] for n in names]
    for r in P.relations:
        assert all(x == 0 for row in oracles.mat_eval(r.terms, mats) for x in row)
    assert any(x != 0 for row in oracles.mat_eval(poly.terms, mats) for x in row)


def test_non_derivability_inconclusive_without_witness():
    P = catalog("parafermion", two_j=3)
    assert non_derivability(P, para_green_poly(P), witness=None).status == "inconclusive"


@pytest.mark.parametrize("two_j", [2, 3, 4])
def test_green_form_derivable_in_pseudo_fermions(two_j):
    P = catalog("pseudo_fermion", n=two_j)
    fm = sum((P.gen(f"a{i}-") for i in range(1, two_j + 1)), Polynomial.zero(P.alphabet))
    rep = non_derivability(P, green_polynomial(adjoint(fm), fm))
    assert rep.status == "fail" and rep.residuals() == [0]


def test_report_document_shape():
    doc = susy_suite("para_green", two_j=2).to_doc()
    assert set(doc) == {"check", "status", "identities", "constants", "metadata", "presentation"}
    assert doc["constants"] == {"c": "-1/2"}
    assert set(doc["identities"][0]) >= {"label", "residual", "pass"}
