"""Identity checks by normal-form reduction: NOA axioms, SUSY suites, Green ansatz."""

from __future__ import annotations

import itertools
from fractions import Fraction

from .algebra import Polynomial, adjoint, anticommutator, commutator, format_rational
from .fock import RationalMatrix, evaluate_matrices
from .presentations import Presentation, alpha, catalog, tensor, truncated_q_number
from .report import INCONCLUSIVE, CheckReport, IdentityResult

__all__ = [
    "corner_witnesses",
    "find_witness",
    "green_ansatz_check",
    "green_polynomial",
    "non_derivability",
    "susy_suite",
    "verify_identity",
    "verify_number_operators",
    "verify_q_number",
]

SUSY_KINDS = ("n1_susy", "ortho", "quasi_ortho", "para_green")


def _metadata(P: Presentation, **extra):
    meta = {
        "presentation": P.name,
        "params": {k: format_rational(v) for k, v in sorted(P.params.items())},
        "completion": P.status,
        "rules": len(P.system.rules),
    }
    meta.update(extra)
    return meta


def _inconclusive(check, P, labels, **meta):
    results = [IdentityResult(label, None, False, "completion bounded") for label in labels]
    return CheckReport.build(check, results, P, status=INCONCLUSIVE, metadata=_metadata(P, **meta))


def _run(check, P: Presentation, labelled, constants=None, **meta) -> CheckReport:
    """Reduce every ``(label, poly)`` pair; pass iff all normal forms vanish."""
    if not P.confluent:
        return _inconclusive(check, P, [label for label, _ in labelled], **meta)
    results = []
    for label, poly in labelled:
        r = P.reduce(poly)
        results.append(IdentityResult(label, r, not r))
    return CheckReport.build(check, results, P, constants=constants, metadata=_metadata(P, **meta))


def verify_identity(P: Presentation, polys, labels=None) -> CheckReport:
    polys = list(polys)
    if labels is None:
        labels = [f"{p} = 0" for p in polys]
    return _run("identity", P, list(zip(labels, polys)))


def verify_number_operators(P: Presentation) -> CheckReport:
    """[N_i, a_j^±] = ±δ_ij a_j^±, [N_i, N_j] = 0, and [H, a_i^±] = ±a_i^± when H is given."""
    if P.number_operators is None:
        raise ValueError(f"presentation {P.name!r} has no number operators")
    alph = P.alphabet
    modes = alph.modes()
    ns = P.number_operators
    if len(ns) != len(modes):
        raise ValueError(f"{len(ns)} number operators for {len(modes)} modes")
    gen = lambda g: Polynomial.monomial(alph, (g,))  # noqa: E731
    name = alph.names
    checks = []
    for i, n in enumerate(ns, start=1):
        for j, (plus, minus) in enumerate(modes, start=1):
            d = 1 if i == j else 0
            checks.append((f"[N{i}, {name[plus]}] - {d} {name[plus]} = 0",
                           commutator(n, gen(plus)) - d * gen(plus)))
            checks.append((f"[N{i}, {name[minus]}] + {d} {name[minus]} = 0",
                           commutator(n, gen(minus)) + d * gen(minus)))
    for i in range(len(ns)):
        for j in range(i + 1, len(ns)):
            checks.append((f"[N{i + 1}, N{j + 1}] = 0", commutator(ns[i], ns[j])))
    if P.hamiltonian is not None:
        h = P.hamiltonian
        for plus, minus in modes:
            checks.append((f"[H, {name[plus]}] - {name[plus]} = 0", commutator(h, gen(plus)) - gen(plus)))
            checks.append((f"[H, {name[minus]}] + {name[minus]} = 0", commutator(h, gen(minus)) + gen(minus)))
    return _run("number_operators", P, checks)


def verify_q_number(q, K: int) -> CheckReport:
    """Truncated q-number series: [N_K, a^±] ∓ a^± must only contain words of degree >= 2K+1."""
    q = Fraction(q)
    P = catalog("q_boson", q=q)
    n = truncated_q_number(q, K, P.alphabet)
    ap, am = P.gen("a+"), P.gen("a-")
    frontier = 2 * K + 1
    if not P.confluent:
        return _inconclusive("q_number", P, ["[N_K, a+] - a+", "[N_K, a-] + a-"], K=K)
    results = []
    degrees = []
    for label, poly in (("[N_K, a+] - a+", commutator(n, ap) - ap),
                        ("[N_K, a-] + a-", commutator(n, am) + am)):
        r = P.reduce(poly)
        ok = r.min_degree >= frontier
        degrees.append(r.min_degree)
        results.append(IdentityResult(f"{label}: all words of degree >= {frontier}", r, ok,
                                      None if ok else f"minimum degree {r.min_degree}"))
    low = min(degrees)
    meta = {"K": K, "frontier": frontier,
            "residual_min_degree": None if low == float("inf") else int(low)}
    return CheckReport.build("q_number", results, P, metadata=_metadata(P, **meta))


def _para_sum(minus, plus, two_j, P):
    """sum_{k=0}^{2j} X^{2j-k} X^+ X^k, reduced as it is built."""
    powers = [Polynomial.one(minus.alphabet)]
    for _ in range(two_j):
        powers.append(P.reduce(powers[-1] * minus))
    total = Polynomial.zero(minus.alphabet)
    for k in range(two_j + 1):
        total = total + P.reduce(powers[two_j - k] * plus * powers[k])
    return total, powers


def _boson_tensor(Q: Presentation):
    return tensor(catalog("boson", n=1), Q)


def _n1_susy():
    A = _boson_tensor(catalog("fermion", n=1))
    q = A.gen("b+") * A.gen("f-")
    qd = adjoint(q)
    h = A.hamiltonian
    checks = [
        ("Q Q = 0", q * q),
        ("Q+ Q+ = 0", qd * qd),
        ("Q Q+ + Q+ Q = H", anticommutator(q, qd) - h),
        ("[H, Q] = 0", commutator(h, q)),
        ("[H, Q+] = 0", commutator(h, qd)),
    ]
    return _run("susy:n1_susy", A, checks)


def _ortho(n):
    A = _boson_tensor(catalog("orthofermion", n=n))
    qs = [A.gen("b+") * A.gen(f"a{i}-") for i in range(1, n + 1)]
    qds = [adjoint(q) for q in qs]
    h = A.hamiltonian
    rng = range(n)
    checks = [(f"Q{i + 1} Q{j + 1} = 0", qs[i] * qs[j]) for i in rng for j in rng]
    checks += [(f"Q{i + 1}+ Q{j + 1}+ = 0", qds[i] * qds[j]) for i in rng for j in rng]
    sq = sum((qds[k] * qs[k] for k in rng), Polynomial.zero(A.alphabet))
    for i in rng:
        for j in rng:
            d = 1 if i == j else 0
            checks.append((f"Q{i + 1} Q{j + 1}+ + {d} sum Qk+ Qk = {d} H",
                           qs[i] * qds[j] + d * sq - d * h))
    checks += [(f"[H, Q{i + 1}] = 0", commutator(h, qs[i])) for i in rng]
    checks += [(f"[H, Q{i + 1}+] = 0", commutator(h, qds[i])) for i in rng]
    return _run("susy:ortho", A, checks, n=n)


def _quasi_ortho(beta):
    A = _boson_tensor(catalog("quasi_orthofermion", beta=beta))
    beta = Fraction(beta)
    qs = [A.gen("b+") * A.gen(f"a{i}-") for i in (1, 2)]
    qds = [adjoint(q) for q in qs]
    h = A.hamiltonian
    checks = [(f"Q{i + 1} Q{j + 1} = 0", qs[i] * qs[j]) for i in range(2) for j in range(2)]
    checks += [(f"Q{i + 1}+ Q{j + 1}+ = 0", qds[i] * qds[j]) for i in range(2) for j in range(2)]
    s = sum((qs[i] * qds[i] + beta * (qds[i] * qs[i]) for i in range(2)), Polynomial.zero(A.alphabet))
    checks.append(("sum Qi Qi+ + beta sum Qi+ Qi = H", s - h))
    checks += [(f"[H, Q{i + 1}] = 0", commutator(h, qs[i])) for i in range(2)]
    checks += [(f"[H, Q{i + 1}+] = 0", commutator(h, qds[i])) for i in range(2)]
    return _run("susy:quasi_ortho", A, checks, beta=format_rational(beta))


def _para_green(two_j):
    """paraSUSY of order 2j realized by a boson and 2j pseudo-fermions.

    H = H_b + H_pf + c with the additive constant c solved from the residual.
    """
    A = _boson_tensor(catalog("pseudo_fermion", n=two_j))
    label = f"sum_k Q^(2j-k) Q+ Q^k = alpha Q^(2j-1) (H + c), 2j={two_j}"
    if not A.confluent:
        return _inconclusive("susy:para_green", A, [label], two_j=two_j)
    a = alpha(two_j)
    fm = sum((A.gen(f"a{i}-") for i in range(1, two_j + 1)), Polynomial.zero(A.alphabet))
    q = A.gen("b+") * fm
    qd = adjoint(q)
    lhs, powers = _para_sum(q, qd, two_j, A)
    base = A.reduce(lhs - a * powers[two_j - 1] * A.hamiltonian)
    shift = A.reduce(a * powers[two_j - 1])  # residual = base - c * shift
    c = None
    consistent = True
    for w, s in shift.items():
        cand = base.coefficient(w) / s
        if c is None:
            c = cand
        elif cand != c:
            consistent = False
    if c is None:
        c = Fraction(0)
        consistent = not base
    residual = A.reduce(base - c * shift)
    ok = consistent and not residual
    results = [IdentityResult(label, residual if ok else base, ok,
                              None if ok else "no rational c makes the residual vanish")]
    meta = {"two_j": two_j, "alpha": format_rational(a)}
    constants = {"c": c} if ok else {}
    return CheckReport.build("susy:para_green", results, A, constants=constants,
                             metadata=_metadata(A, **meta))


def susy_suite(kind: str, **params) -> CheckReport:
    if kind == "n1_susy":
        return _n1_susy()
    if kind == "ortho":
        n = int(params.get("n", 1))
        if n < 1:
            raise ValueError("n must be >= 1")
        return _ortho(n)
    if kind == "quasi_ortho":
        if "beta" not in params:
            raise ValueError("quasi_ortho needs beta")
        return _quasi_ortho(params["beta"])
    if kind == "para_green":
        two_j = int(params.get("two_j", 0))
        if two_j < 1:
            raise ValueError("two_j must be an integer >= 1")
        return _para_green(two_j)
    raise ValueError(f"unknown SUSY kind {kind!r}; choose from {', '.join(SUSY_KINDS)}")


def green_polynomial(plus: Polynomial, minus: Polynomial) -> Polynomial:
    """[[X+, X-], X-] + 2 X-, which vanishes exactly when Green's equation holds."""
    return commutator(commutator(plus, minus), minus) + 2 * minus


def green_ansatz_check(two_j: int) -> CheckReport:
    """F± = sum_i a_i^± in pseudo_fermion(2j): parafermion relations and Green's equations."""
    if two_j < 1:
        raise ValueError("two_j must be >= 1")
    P = catalog("pseudo_fermion", n=two_j)
    zero = Polynomial.zero(P.alphabet)
    fm = sum((P.gen(f"a{i}-") for i in range(1, two_j + 1)), zero)
    fp = adjoint(fm)
    a = alpha(two_j)
    if not P.confluent:
        return _inconclusive("green_ansatz", P, ["F relations"], two_j=two_j)
    lhs, powers = _para_sum(fm, fp, two_j, P)
    para = lhs - a * powers[two_j - 1]
    green = green_polynomial(fp, fm)
    checks = [
        (f"F-^{two_j + 1} = 0", P.reduce(powers[two_j] * fm)),
        (f"F+^{two_j + 1} = 0", adjoint(P.reduce(powers[two_j] * fm))),
        ("sum_k F-^(2j-k) F+ F-^k = alpha F-^(2j-1)", para),
        ("adjoint: sum_k F+^k F- F+^(2j-k) = alpha F+^(2j-1)", adjoint(para)),
        ("[[F+, F-], F-] = -2 F-", green),
        ("[[F+, F-], F+] = 2 F+", adjoint(green)),
    ]
    return _run("green_ansatz", P, checks, two_j=two_j, alpha=format_rational(a))


def corner_witnesses(alphabet, max_generators=4):
    """2x2 candidates sending each generator to 0, E12 or E21."""
    n = len(alphabet)
    if n > max_generators:
        return
    choices = (RationalMatrix.zeros(2), RationalMatrix.unit(2, 0, 1), RationalMatrix.unit(2, 1, 0))
    for combo in itertools.product(choices, repeat=n):
        yield combo


def find_witness(P: Presentation, poly: Polynomial, candidates=None):
    """First candidate homomorphism killing every relation but not ``poly``."""
    if candidates is None:
        candidates = corner_witnesses(P.alphabet)
    for mats in candidates:
        if all(evaluate_matrices(r, mats).is_zero() for r in P.relations):
            if not evaluate_matrices(poly, mats).is_zero():
                return tuple(mats)
    return None


def non_derivability(P: Presentation, poly: Polynomial, witness="search") -> CheckReport:
    """Pass iff ``poly`` is certified to lie outside the ideal.

    With a confluent system the certificate is a nonzero normal form.  When
    completion was bounded, normal forms are not canonical; a matrix
    homomorphism that kills every relation but not ``poly`` is accepted as
    the certificate instead (``witness="search"`` tries 2x2 corner
    matrices, ``None`` disables this, a sequence gives explicit matrices).
    """
    label = f"{poly} is not derivable"
    r = P.reduce(poly)
    if P.confluent:
        res = IdentityResult(label, r, bool(r), None if r else "reduces to zero: it IS derivable")
        return CheckReport.build("non_derivability", [res], P,
                                 metadata=_metadata(P, certificate="normal form"))
    mats = None
    if witness == "search":
        mats = find_witness(P, poly)
    elif witness is not None:
        mats = find_witness(P, poly, [tuple(witness)])
    if mats is None:
        res = IdentityResult(label, r, False, "completion bounded; normal form not canonical")
        return CheckReport.build("non_derivability", [res], P, status=INCONCLUSIVE,
                                 metadata=_metadata(P))
    names = P.alphabet.names
    images = {names[g]: m.to_doc() for g, m in enumerate(mats)}
    res = IdentityResult(label, r, True, "relations vanish in witness, poly does not")
    return CheckReport.build("non_derivability", [res], P,
                             metadata=_metadata(P, certificate="representation", witness=images))
