from fractions import Fraction

import pytest
from hypothesis import strategies as st

from noa.algebra import Alphabet, Polynomial
from noa.presentations import catalog

# every catalog presentation exercised by the property suites
CATALOG_CASES = [
    ("boson", {"n": 1}),
    ("boson", {"n": 2}),
    ("fermion", {"n": 1}),
    ("fermion", {"n": 2}),
    ("pseudo_fermion", {"n": 1}),
    ("pseudo_fermion", {"n": 2}),
    ("pseudo_fermion", {"n": 3}),
    ("pseudo_boson", {"n": 1}),
    ("pseudo_boson", {"n": 2}),
    ("orthofermion", {"n": 1}),
    ("orthofermion", {"n": 2}),
    ("orthofermion", {"n": 3}),
    ("parafermion", {"two_j": 1}),
    ("parafermion", {"two_j": 2}),
    ("parafermion", {"two_j": 3}),
    ("parafermion", {"two_j": 4}),
    ("q_boson", {"q": Fraction(1, 2)}),
    ("q_boson", {"q": Fraction(0)}),
    ("quasi_orthofermion", {"beta": Fraction(2)}),
    ("quasi_orthofermion", {"beta": Fraction(-1)}),
    ("quasi_orthofermion", {"beta": Fraction(1, 3)}),
]


def case_id(case):
    kind, params = case
    return kind + "(" + ",".join(f"{k}={v}" for k, v in params.items()) + ")"


@pytest.fixture(params=CATALOG_CASES, ids=case_id)
def presentation(request):
    kind, params = request.param
    return catalog(kind, **params)


ALPH = Alphabet.from_pairs([("x+", "x-"), ("y+", "y-"), ("x-", "x+"), ("y-", "y+")])

coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=6)
words = st.lists(st.integers(0, len(ALPH) - 1), max_size=4).map(tuple)


@st.composite
def polys(draw, alphabet=ALPH, max_terms=4):
    terms = draw(st.lists(st.tuples(words, coeffs), max_size=max_terms))
    return Polynomial(alphabet, terms)


# acceptance criterion outcomes, filled by test_acceptance and echoed at the end of the run
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[number])
