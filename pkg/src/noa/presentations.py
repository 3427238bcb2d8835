"""Catalog of involutive algebra presentations, tensor products, file format."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .algebra import (
    Alphabet,
    Polynomial,
    adjoint,
    anticommutator,
    commutator,
    format_rational,
    parse_rational,
)
from .rewrite import DegLex, complete, normal_words, orient

__all__ = [
    "KINDS",
    "Presentation",
    "PresentationError",
    "alpha",
    "catalog",
    "dumps",
    "loads",
    "parse",
    "serialize",
    "tensor",
    "truncated_q_number",
]


class PresentationError(ValueError):
    pass


@dataclass(eq=False)
class Presentation:
    name: str
    alphabet: Alphabet
    relations: tuple
    order: DegLex
    number_operators: tuple | None = None
    hamiltonian: Polynomial | None = None
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        self.relations = tuple(self.relations)
        if self.number_operators is not None:
            self.number_operators = tuple(self.number_operators)

    def __eq__(self, other):
        if not isinstance(other, Presentation):
            return NotImplemented
        return (
            self.name == other.name
            and self.alphabet == other.alphabet
            and self.relations == other.relations
            and self.order == other.order
            and self.number_operators == other.number_operators
            and self.hamiltonian == other.hamiltonian
            and self.params == other.params
        )

    def gen(self, name):
        return self.alphabet.gen(name)

    def expr(self, text):
        from .algebra import parse_expr

        return parse_expr(text, self.alphabet)

    def modes(self):
        return self.alphabet.modes()

    @cached_property
    def oriented(self):
        return orient(self.relations, self.order, self.alphabet)

    @cached_property
    def _completion(self):
        return complete(self.oriented)

    @property
    def system(self):
        """Completed rewrite system (see :attr:`status`)."""
        return self._completion[0]

    @property
    def status(self):
        return self._completion[1]

    @property
    def confluent(self):
        return self.status == "confluent"

    def reduce(self, p, **kw):
        return self.system.reduce(p, **kw)

    def basis(self, max_degree=8):
        return normal_words(self.system, max_degree, confluent=self.confluent)


def alpha(two_j) -> Fraction:
    """(2/3) j (j+1) (2j+1) with j = two_j / 2."""
    j = Fraction(two_j, 2)
    return Fraction(2, 3) * j * (j + 1) * (2 * j + 1)


def _mode_alphabet(prefix, n, indexed):
    labels = [f"{prefix}{i}" if indexed else prefix for i in range(1, n + 1)]
    pairs = [(f"{l}+", f"{l}-") for l in labels] + [(f"{l}-", f"{l}+") for l in labels]
    return Alphabet.from_pairs(pairs), labels


def _identity_order(alphabet):
    return DegLex(tuple(range(len(alphabet))))


def _ladders(alphabet, labels):
    plus = [alphabet.gen(f"{l}+") for l in labels]
    minus = [alphabet.gen(f"{l}-") for l in labels]
    return plus, minus


def _check_int(value, name, minimum=1):
    v = parse_rational(value)
    if v.denominator != 1 or v < minimum:
        raise PresentationError(f"{name} must be an integer >= {minimum}, got {format_rational(v)}")
    return int(v)


def _numbers(plus, minus):
    ns = [p * m for p, m in zip(plus, minus)]
    return ns, sum(ns[1:], ns[0])


def _two_mode_family(kind, n, prefix, same, cross_sign):
    """Per-mode relations ``same`` plus cross-mode (anti)commutation of every pair."""
    alph, labels = _mode_alphabet(prefix, n, indexed=n > 1 or kind not in ("boson", "fermion"))
    plus, minus = _ladders(alph, labels)
    rels = []
    for i in range(n):
        rels.extend(same(plus[i], minus[i]))
    gens = [(plus[i], minus[i]) for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            for x in gens[i]:
                for y in gens[j]:
                    rels.append(x * y + cross_sign * (y * x))
    ns, h = _numbers(plus, minus)
    return Presentation(
        kind, alph, rels, _identity_order(alph), ns, h, {"n": Fraction(n)}
    )


def _boson_rel(p, m):
    return [commutator(m, p) - 1]


def _fermion_rel(p, m):
    return [anticommutator(m, p) - 1, m * m, p * p]


def boson(n=1):
    return _two_mode_family("boson", n, "b", _boson_rel, -1)


def fermion(n=1):
    return _two_mode_family("fermion", n, "f", _fermion_rel, +1)


def pseudo_fermion(n=1):
    return _two_mode_family("pseudo_fermion", n, "a", _fermion_rel, -1)


def pseudo_boson(n=1):
    return _two_mode_family("pseudo_boson", n, "a", _boson_rel, +1)


def orthofermion(n=1):
    alph, labels = _mode_alphabet("a", n, indexed=True)
    plus, minus = _ladders(alph, labels)
    ns, h = _numbers(plus, minus)
    rels = []
    for i in range(n):
        for j in range(n):
            rels.append(minus[i] * minus[j])
            rels.append(plus[i] * plus[j])
    for i in range(n):
        for j in range(n):
            r = minus[i] * plus[j]
            if i == j:
                r = r + h - 1
            rels.append(r)
    return Presentation("orthofermion", alph, rels, _identity_order(alph), ns, h, {"n": Fraction(n)})


def parafermion(two_j):
    alph, _ = _mode_alphabet("f", 1, indexed=False)
    fp, fm = alph.gen("f+"), alph.gen("f-")
    a = alpha(two_j)
    lhs = sum((fm ** (two_j - k) * fp * fm ** k for k in range(1, two_j + 1)), fm ** two_j * fp)
    rel = lhs - a * fm ** (two_j - 1)
    rels = [rel, adjoint(rel), fm ** (two_j + 1), fp ** (two_j + 1)]
    return Presentation(
        "parafermion", alph, rels, _identity_order(alph), None, None, {"two_j": Fraction(two_j)}
    )


def q_boson(q):
    alph, _ = _mode_alphabet("a", 1, indexed=False)
    ap, am = alph.gen("a+"), alph.gen("a-")
    rel = am * ap - q * (ap * am) - 1
    return Presentation("q_boson", alph, [rel], _identity_order(alph), None, None, {"q": Fraction(q)})


def quasi_orthofermion(beta):
    alph, labels = _mode_alphabet("a", 2, indexed=True)
    (p1, p2), (m1, m2) = _ladders(alph, labels)
    rels = [x * y for x in (m1, m2) for y in (m1, m2)]
    rels += [x * y for x in (p1, p2) for y in (p1, p2)]
    rels.append(m1 * p1 + m2 * p2 + beta * (p1 * m1) + beta * (p2 * m2) - 1)
    k = beta / (beta - 1)
    n1 = k * (m1 * p1 + beta * (p1 * m1)) + beta * (p2 * m2)
    n2 = -k * (m1 * p1 + p1 * m1)
    h = beta * (p1 * m1 + p2 * m2)
    return Presentation(
        "quasi_orthofermion", alph, rels, _identity_order(alph), (n1, n2), h, {"beta": Fraction(beta)}
    )


KINDS = {
    "boson": ("n",),
    "fermion": ("n",),
    "pseudo_fermion": ("n",),
    "pseudo_boson": ("n",),
    "orthofermion": ("n",),
    "parafermion": ("two_j",),
    "q_boson": ("q",),
    "quasi_orthofermion": ("beta",),
}

_BUILDERS = {
    "boson": boson,
    "fermion": fermion,
    "pseudo_fermion": pseudo_fermion,
    "pseudo_boson": pseudo_boson,
    "orthofermion": orthofermion,
    "parafermion": parafermion,
    "q_boson": q_boson,
    "quasi_orthofermion": quasi_orthofermion,
}

_CACHE = {}


def catalog(kind, **params) -> Presentation:
    """Catalog presentation ``kind`` with validated parameters.

    Instances are cached, so repeated lookups share one completed system.
    """
    if kind not in KINDS:
        raise PresentationError(f"unknown kind {kind!r}; choose from {', '.join(KINDS)}")
    (pname,) = KINDS[kind]
    extra = set(params) - {pname}
    if extra:
        raise PresentationError(f"{kind} takes only {pname!r}, got {sorted(extra)}")
    if pname == "n":
        value = _check_int(params.get("n", 1), "n")
    elif pname == "two_j":
        if "two_j" not in params:
            raise PresentationError("parafermion needs two_j")
        value = _check_int(params["two_j"], "two_j")
    elif pname == "q":
        if "q" not in params:
            raise PresentationError("q_boson needs q")
        value = parse_rational(params["q"])
        if value in (1, -1):
            raise PresentationError("q must differ from 1 and -1")
    else:
        if "beta" not in params:
            raise PresentationError("quasi_orthofermion needs beta")
        value = parse_rational(params["beta"])
        if value in (0, 1):
            raise PresentationError("beta must differ from 0 and 1")
    key = (kind, value)
    if key not in _CACHE:
        _CACHE[key] = _BUILDERS[kind](value)
    return _CACHE[key]


def tensor(P: Presentation, Q: Presentation, name=None) -> Presentation:
    """Tensor product: union of both presentations plus ``[x, y] = 0`` across them."""
    clash = set(P.alphabet.names) & set(Q.alphabet.names)
    if clash:
        raise PresentationError(f"generator names collide: {sorted(clash)}")
    nP = len(P.alphabet)
    names = P.alphabet.names + Q.alphabet.names
    inv = P.alphabet.involution + tuple(nP + j for j in Q.alphabet.involution)
    alph = Alphabet(names, inv)

    def lift(p, shift):
        if p is None:
            return None
        return Polynomial(alph, [(tuple(g + shift for g in w), c) for w, c in p.items()])

    rels = [lift(r, 0) for r in P.relations] + [lift(r, nP) for r in Q.relations]
    for x in range(nP):
        for y in range(len(Q.alphabet)):
            gx = Polynomial.monomial(alph, (x,))
            gy = Polynomial.monomial(alph, (nP + y,))
            rels.append(commutator(gx, gy))
    order = DegLex(P.order.precedence + tuple(nP + g for g in Q.order.precedence))
    numbers = None
    if P.number_operators is not None and Q.number_operators is not None:
        numbers = tuple(lift(n, 0) for n in P.number_operators) + tuple(
            lift(n, nP) for n in Q.number_operators
        )
    h = None
    if P.hamiltonian is not None and Q.hamiltonian is not None:
        h = lift(P.hamiltonian, 0) + lift(Q.hamiltonian, nP)
    params = {f"{P.name}.{k}": v for k, v in P.params.items()}
    params.update({f"{Q.name}.{k}": v for k, v in Q.params.items()})
    return Presentation(name or f"{P.name}*{Q.name}", alph, rels, order, numbers, h, params)


def truncated_q_number(q, K: int, alphabet: Alphabet | None = None) -> Polynomial:
    """``sum_{k=1..K} (1-q)^k / (1-q^k) (a+)^k (a-)^k`` over the q-boson alphabet."""
    q = parse_rational(q)
    if q in (1, -1):
        raise ValueError("q must differ from 1 and -1")
    if K < 1:
        raise ValueError("K must be >= 1")
    if alphabet is None:
        alphabet = catalog("q_boson", q=q).alphabet
    ap, am = alphabet.gen("a+"), alphabet.gen("a-")
    total = Polynomial.zero(alphabet)
    for k in range(1, K + 1):
        den = 1 - q ** k
        if den == 0:
            raise ZeroDivisionError(f"q^{k} = 1")
        total = total + ((1 - q) ** k / den) * (ap ** k * am ** k)
    return total


# serialization ------------------------------------------------------------


def poly_to_doc(p: Polynomial):
    names = p.alphabet.names
    return [{"c": format_rational(c), "w": [names[g] for g in w]} for w, c in p.items()]


def poly_from_doc(doc, alphabet, where):
    if not isinstance(doc, list):
        raise PresentationError(f"{where}: polynomial must be a list of terms")
    terms = []
    for k, term in enumerate(doc):
        at = f"{where}[{k}]"
        if not isinstance(term, dict) or set(term) != {"c", "w"}:
            raise PresentationError(f"{at}: term must be an object with exactly 'c' and 'w'")
        try:
            c = parse_rational(term["c"]) if isinstance(term["c"], str) else None
        except ValueError as exc:
            raise PresentationError(f"{at}.c: {exc}") from None
        if c is None:
            raise PresentationError(f"{at}.c: coefficient must be a rational string")
        if not isinstance(term["w"], list):
            raise PresentationError(f"{at}.w: word must be a list of generator names")
        word = []
        for m, name in enumerate(term["w"]):
            if name not in alphabet:
                raise PresentationError(f"{at}.w[{m}]: unknown generator {name!r}")
            word.append(alphabet.index(name))
        terms.append((tuple(word), c))
    return Polynomial(alphabet, terms)


def serialize(P: Presentation) -> dict:
    names = P.alphabet.names
    doc = {
        "name": P.name,
        "params": {k: format_rational(v) for k, v in sorted(P.params.items())},
        "generators": [
            {"name": n, "adjoint": names[P.alphabet.involution[i]]} for i, n in enumerate(names)
        ],
        "order": [names[g] for g in P.order.precedence],
        "relations": [poly_to_doc(r) for r in P.relations],
    }
    if P.number_operators is not None:
        doc["number_operators"] = [poly_to_doc(n) for n in P.number_operators]
    if P.hamiltonian is not None:
        doc["hamiltonian"] = poly_to_doc(P.hamiltonian)
    return doc


def parse(doc) -> Presentation:
    """Build a presentation from a parsed document, with field-path diagnostics."""
    if not isinstance(doc, dict):
        raise PresentationError("document must be an object")
    required = {"name", "params", "generators", "order", "relations"}
    missing = required - set(doc)
    if missing:
        raise PresentationError(f"missing field(s): {', '.join(sorted(missing))}")
    unknown = set(doc) - required - {"number_operators", "hamiltonian"}
    if unknown:
        raise PresentationError(f"unknown field(s): {', '.join(sorted(unknown))}")
    if not isinstance(doc["name"], str):
        raise PresentationError("name: must be a string")
    if not isinstance(doc["params"], dict):
        raise PresentationError("params: must be an object")
    params = {}
    for k, v in doc["params"].items():
        if not isinstance(v, str):
            raise PresentationError(f"params.{k}: must be a rational string")
        try:
            params[k] = parse_rational(v)
        except ValueError as exc:
            raise PresentationError(f"params.{k}: {exc}") from None
    gens = doc["generators"]
    if not isinstance(gens, list) or not gens:
        raise PresentationError("generators: must be a non-empty list")
    pairs = []
    for i, g in enumerate(gens):
        if not isinstance(g, dict) or set(g) != {"name", "adjoint"}:
            raise PresentationError(f"generators[{i}]: must be an object with 'name' and 'adjoint'")
        pairs.append((g["name"], g["adjoint"]))
    try:
        alph = Alphabet.from_pairs(pairs)
    except (ValueError, TypeError) as exc:
        raise PresentationError(f"generators: {exc}") from None
    order_names = doc["order"]
    if not isinstance(order_names, list):
        raise PresentationError("order: must be a list of generator names")
    for i, n in enumerate(order_names):
        if n not in alph:
            raise PresentationError(f"order[{i}]: unknown generator {n!r}")
    try:
        order = DegLex.from_names(alph, order_names)
    except ValueError as exc:
        raise PresentationError(f"order: {exc}") from None
    if not isinstance(doc["relations"], list):
        raise PresentationError("relations: must be a list")
    rels = [poly_from_doc(r, alph, f"relations[{i}]") for i, r in enumerate(doc["relations"])]
    numbers = None
    if "number_operators" in doc:
        if not isinstance(doc["number_operators"], list):
            raise PresentationError("number_operators: must be a list")
        numbers = tuple(
            poly_from_doc(n, alph, f"number_operators[{i}]")
            for i, n in enumerate(doc["number_operators"])
        )
    h = poly_from_doc(doc["hamiltonian"], alph, "hamiltonian") if "hamiltonian" in doc else None
    return Presentation(doc["name"], alph, rels, order, numbers, h, params)


def dumps(P: Presentation) -> str:
    return json.dumps(serialize(P), indent=2, ensure_ascii=False) + "\n"


def loads(text: str) -> Presentation:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise PresentationError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return parse(doc)
