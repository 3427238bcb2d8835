"""Exact rational Fock matrix models used as an independent oracle."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .algebra import Polynomial, format_rational
from .presentations import Presentation
from .report import CheckReport, IdentityResult

__all__ = [
    "RationalMatrix",
    "Representation",
    "UnsupportedRepresentation",
    "cross_check",
    "evaluate",
    "evaluate_matrices",
    "fock",
    "random_polynomial",
    "verify_representation",
]


class UnsupportedRepresentation(ValueError):
    pass


class RationalMatrix:
    """Dense matrix of Fractions; immutable."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries):
        self.entries = tuple(tuple(Fraction(x) for x in row) for row in entries)
        self.rows = len(self.entries)
        self.cols = len(self.entries[0]) if self.entries else 0
        if any(len(r) != self.cols for r in self.entries):
            raise ValueError("ragged matrix")

    @classmethod
    def zeros(cls, rows, cols=None):
        cols = rows if cols is None else cols
        return cls([[0] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def unit(cls, n, i, j):
        m = [[0] * n for _ in range(n)]
        m[i][j] = 1
        return cls(m)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        return isinstance(other, RationalMatrix) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        body = "; ".join(" ".join(format_rational(x) for x in row) for row in self.entries)
        return f"RationalMatrix([{body}])"

    def _check_shape(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("dimension mismatch")

    def __add__(self, other):
        self._check_shape(other)
        return RationalMatrix(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)]
        )

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        c = Fraction(c)
        return RationalMatrix([[c * x for x in row] for row in self.entries])

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        cols = list(zip(*other.entries))
        return RationalMatrix(
            [[sum((a * b for a, b in zip(row, col) if a and b), Fraction(0)) for col in cols]
             for row in self.entries]
        )

    def transpose(self):
        return RationalMatrix(list(zip(*self.entries)))

    def kron(self, other):
        out = []
        for row in self.entries:
            for orow in other.entries:
                out.append([a * b for a in row for b in orow])
        return RationalMatrix(out)

    def is_zero(self):
        return not any(any(row) for row in self.entries)

    def nonzero_columns(self):
        return [j for j in range(self.cols) if any(self.entries[i][j] for i in range(self.rows))]

    def flat(self):
        return [x for row in self.entries for x in row]

    def to_doc(self):
        return [[format_rational(x) for x in row] for row in self.entries]


def rank(vectors) -> int:
    """Rank of a list of equal-length rational vectors (exact Gaussian elimination)."""
    rows = [list(map(Fraction, v)) for v in vectors]
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        pr = rows[r]
        for i in range(r + 1, len(rows)):
            f = rows[i][c]
            if f:
                f = f / pr[c]
                rows[i] = [x - f * y for x, y in zip(rows[i], pr)]
        r += 1
    return r


@dataclass(frozen=True)
class Representation:
    presentation: Presentation
    dimension: int
    matrices: tuple  # one RationalMatrix per generator index
    valid_subspace: tuple
    star_compatible: bool

    def matrix(self, name):
        return self.matrices[self.presentation.alphabet.index(name)]


_TRUNCATED = ("boson", "q_boson")

_LOWER = RationalMatrix([[0, 1], [0, 0]])  # |0><1|
_RAISE = _LOWER.transpose()
_PARITY = RationalMatrix([[1, 0], [0, -1]])
_ID2 = RationalMatrix.identity(2)


def _kron_all(ms):
    out = ms[0]
    for m in ms[1:]:
        out = out.kron(m)
    return out


def fock(P: Presentation, cutoff: int | None = None) -> Representation:
    """Fock model of a catalog presentation.

    Finite kinds are exact and star compatible.  Bosons and q-bosons are
    truncated weighted shifts on ``cutoff`` states; their defining relations
    fail only on the top state, which is left out of ``valid_subspace``.
    """
    kind = P.name
    alph = P.alphabet
    mats = [None] * len(alph)
    if kind == "orthofermion":
        n = int(P.params["n"])
        D = n + 1
        for k, (plus, minus) in enumerate(alph.modes(), start=1):
            mats[minus] = RationalMatrix.unit(D, 0, k)
            mats[plus] = RationalMatrix.unit(D, k, 0)
        return Representation(P, D, tuple(mats), tuple(range(D)), True)
    if kind in ("fermion", "pseudo_fermion"):
        n = int(P.params["n"])
        D = 2 ** n
        for k, (plus, minus) in enumerate(alph.modes()):
            left = [_PARITY if kind == "fermion" else _ID2] * k
            right = [_ID2] * (n - k - 1)
            mats[minus] = _kron_all(left + [_LOWER] + right)
            mats[plus] = _kron_all(left + [_RAISE] + right)
        return Representation(P, D, tuple(mats), tuple(range(D)), True)
    if kind in _TRUNCATED:
        if cutoff is None or cutoff < 2:
            raise ValueError("cutoff >= 2 required for truncated representations")
        if kind == "boson" and int(P.params["n"]) != 1:
            raise UnsupportedRepresentation("truncated boson model is single-mode")
        (plus, minus), = alph.modes()
        raise_, lower = [[0] * cutoff for _ in range(cutoff)], [[0] * cutoff for _ in range(cutoff)]
        q = P.params.get("q")
        for k in range(cutoff - 1):
            if kind == "boson":
                raise_[k + 1][k] = k + 1
                lower[k][k + 1] = 1
            else:
                raise_[k + 1][k] = 1
                lower[k][k + 1] = sum(q ** i for i in range(k + 1))  # [k+1]_q
        mats[plus] = RationalMatrix(raise_)
        mats[minus] = RationalMatrix(lower)
        return Representation(P, cutoff, tuple(mats), tuple(range(cutoff - 1)), False)
    raise UnsupportedRepresentation(f"no Fock model for presentation {kind!r}")


def evaluate(p: Polynomial, rep: Representation) -> RationalMatrix:
    if p.alphabet != rep.presentation.alphabet:
        raise ValueError("polynomial is not over the representation's alphabet")
    return evaluate_matrices(p, rep.matrices)


def evaluate_matrices(p: Polynomial, matrices) -> RationalMatrix:
    """Image of ``p`` when generator ``g`` maps to ``matrices[g]``."""
    D = matrices[0].rows
    if any(m.rows != D or m.cols != D for m in matrices):
        raise ValueError("dimension mismatch")
    total = RationalMatrix.zeros(D)
    cache = {(): RationalMatrix.identity(D)}
    for w, c in p.items():
        m = cache.get(w)
        if m is None:
            m = cache[()]
            for g in w:
                m = m @ matrices[g]
            cache[w] = m
        total = total + m.scale(c)
    return total


def _metadata(P, **extra):
    meta = {"presentation": P.name, "params": {k: format_rational(v) for k, v in P.params.items()}}
    meta.update(extra)
    return meta


def verify_representation(P: Presentation, rep: Representation) -> CheckReport:
    """Each relation must annihilate every valid basis state; star checked when claimed."""
    results = []
    valid = set(rep.valid_subspace)
    for i, r in enumerate(P.relations):
        m = evaluate(r, rep)
        bad = [j for j in m.nonzero_columns() if j in valid]
        detail = None if not bad else f"nonzero on state |{bad[0]}>"
        results.append(IdentityResult(f"relation {i}: {r} = 0", None, not bad, detail))
    if rep.star_compatible:
        for g, name in enumerate(P.alphabet.names):
            partner = P.alphabet.involution[g]
            ok = rep.matrices[partner] == rep.matrices[g].transpose()
            results.append(
                IdentityResult(
                    f"star: M({P.alphabet.names[partner]}) = M({name})^T", None, ok,
                    None if ok else "transpose mismatch",
                )
            )
    return CheckReport.build(
        "representation", results, P,
        metadata=_metadata(P, dimension=rep.dimension, valid_subspace=list(rep.valid_subspace)),
    )


def random_polynomial(alphabet, rng: random.Random, max_degree: int, max_terms=4) -> Polynomial:
    terms = []
    for _ in range(rng.randint(1, max_terms)):
        d = rng.randint(0, max_degree)
        w = tuple(rng.randrange(len(alphabet)) for _ in range(d))
        c = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
        terms.append((w, c))
    return Polynomial(alphabet, terms)


def cross_check(P: Presentation, rep: Representation, samples=100, max_degree=4, seed=0) -> CheckReport:
    """Compare matrix images before and after reduction; then test faithfulness on the basis.

    Uses only the public ``reduce`` output of the engine.
    """
    if not rep.star_compatible or len(rep.valid_subspace) != rep.dimension:
        raise ValueError("cross_check needs a full, star compatible representation")
    if not P.confluent:
        return CheckReport.build(
            "crosscheck", [], P, status="inconclusive",
            metadata=_metadata(P, reason="completion bounded"),
        )
    rng = random.Random(seed)
    results = []
    for k in range(samples):
        p = random_polynomial(P.alphabet, rng, max_degree)
        ok = evaluate(P.reduce(p), rep) == evaluate(p, rep)
        results.append(
            IdentityResult(f"sample {k}: eval(reduce(p)) = eval(p)", None, ok,
                           None if ok else f"p = {p}")
        )
    basis = P.basis(max_degree=2 * rep.dimension + 2)
    words = basis.words()
    D = rep.dimension
    count_ok = basis.finite_dimensional and len(words) == D * D
    results.append(
        IdentityResult(
            f"normal word count {len(words)} = {D}^2", None, count_ok,
            None if count_ok else f"counts {basis.counts}",
        )
    )
    vecs = [evaluate(Polynomial.monomial(P.alphabet, w), rep).flat() for w in words]
    r = rank(vecs)
    results.append(
        IdentityResult(
            f"normal word images linearly independent (rank {r} of {len(words)})", None,
            r == len(words), None if r == len(words) else "dependent images",
        )
    )
    return CheckReport.build(
        "crosscheck", results, P,
        metadata=_metadata(P, samples=samples, max_degree=max_degree, seed=seed, evidence="finite"),
    )
