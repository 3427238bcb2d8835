"""Free associative algebra with involution over the rationals.

Words are tuples of generator indices into an :class:`Alphabet`; a
:class:`Polynomial` is a finite map from words to nonzero ``Fraction``
coefficients.  Everything here is immutable and exact.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational

__all__ = [
    "Alphabet",
    "AlphabetMismatch",
    "ExpressionError",
    "Polynomial",
    "Word",
    "adjoint",
    "anticommutator",
    "bracket",
    "commutator",
    "parse_expr",
    "parse_rational",
]

Word = tuple  # tuple[int, ...]

COMMUTATOR = -1
ANTICOMMUTATOR = +1

_RATIONAL_RE = re.compile(r"^[+-]?\d+(?:/\d+)?$")


class AlphabetMismatch(ValueError):
    pass


class ExpressionError(ValueError):
    pass


def parse_rational(text) -> Fraction:
    """Parse ``[-]digits[/digits]`` into a Fraction, rejecting zero denominators."""
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    text = str(text).strip()
    if not _RATIONAL_RE.match(text):
        raise ValueError(f"not a rational: {text!r}")
    num, _, den = text.partition("/")
    if den and int(den) == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den) if den else 1)


def format_rational(c: Fraction) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


@dataclass(frozen=True)
class Alphabet:
    """Ordered generator names plus an involution on their indices."""

    names: tuple
    involution: tuple
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "involution", tuple(self.involution))
        if len(self.names) != len(self.involution):
            raise ValueError("involution must have one entry per generator")
        for name in self.names:
            if not isinstance(name, str) or not name or any(ch.isspace() for ch in name):
                raise ValueError(f"invalid generator name {name!r}")
            if name in ("+", "-") or _RATIONAL_RE.match(name):
                raise ValueError(f"generator name {name!r} is ambiguous with expression syntax")
        if len(set(self.names)) != len(self.names):
            raise ValueError("generator names must be unique")
        n = len(self.names)
        for i, j in enumerate(self.involution):
            if not (0 <= j < n) or self.involution[j] != i:
                raise ValueError("involution is not a self-inverse bijection")
        object.__setattr__(self, "_index", {name: i for i, name in enumerate(self.names)})

    @classmethod
    def from_pairs(cls, pairs) -> Alphabet:
        """Build from ``(name, adjoint_name)`` pairs in generator order."""
        pairs = list(pairs)
        names = [p[0] for p in pairs]
        index = {name: i for i, name in enumerate(names)}
        try:
            inv = [index[p[1]] for p in pairs]
        except KeyError as exc:
            raise ValueError(f"adjoint {exc.args[0]!r} is not a generator") from None
        return cls(tuple(names), tuple(inv))

    def __len__(self):
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown generator {name!r}") from None

    def __contains__(self, name):
        return name in self._index

    def gen(self, name: str) -> Polynomial:
        return Polynomial.monomial(self, (self.index(name),))

    def word(self, *names: str) -> Word:
        return tuple(self.index(n) for n in names)

    def adjoint_word(self, word: Word) -> Word:
        inv = self.involution
        return tuple(inv[g] for g in reversed(word))

    def format_word(self, word: Word) -> str:
        return " ".join(self.names[g] for g in word) if word else "1"

    def modes(self):
        """Creator/annihilator index pairs, one per involution orbit of size two.

        Modes are numbered by first appearance in the alphabet.  Within a pair
        the generator whose name ends in ``+`` is the creator; failing that,
        the one listed first.
        """
        seen = set()
        out = []
        for i, j in enumerate(self.involution):
            if i == j or i in seen:
                continue
            seen.update((i, j))
            a, b = self.names[i], self.names[j]
            if b.endswith("+") and not a.endswith("+"):
                out.append((j, i))
            else:
                out.append((i, j))
        return out


def _coerce_scalar(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    raise TypeError(f"unsupported scalar {c!r}; coefficients are exact rationals")


def _order_key(word):
    return (len(word), word)


class Polynomial:
    """Finite rational linear combination of words over one alphabet."""

    __slots__ = ("alphabet", "_terms", "_hash")

    def __init__(self, alphabet: Alphabet, terms=None):
        self.alphabet = alphabet
        clean = {}
        if terms:
            items = terms.items() if hasattr(terms, "items") else terms
            for w, c in items:
                w = tuple(w)
                c = _coerce_scalar(c)
                if c:
                    clean[w] = clean.get(w, 0) + c
                    if not clean[w]:
                        del clean[w]
        self._terms = dict(sorted(clean.items(), key=lambda t: _order_key(t[0])))
        self._hash = None

    @classmethod
    def _raw(cls, alphabet, terms):
        # terms already canonical: nonzero Fractions, tuple keys
        p = cls.__new__(cls)
        p.alphabet = alphabet
        p._terms = dict(sorted(terms.items(), key=lambda t: _order_key(t[0])))
        p._hash = None
        return p

    @classmethod
    def zero(cls, alphabet):
        return cls._raw(alphabet, {})

    @classmethod
    def one(cls, alphabet):
        return cls._raw(alphabet, {(): Fraction(1)})

    @classmethod
    def monomial(cls, alphabet, word, coeff=1):
        return cls(alphabet, {tuple(word): coeff})

    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def words(self):
        return list(self._terms)

    def coefficient(self, word) -> Fraction:
        return self._terms.get(tuple(word), Fraction(0))

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self):
        return not self._terms

    def is_constant(self):
        return all(len(w) == 0 for w in self._terms)

    def __len__(self):
        return len(self._terms)

    @property
    def degree(self):
        """Maximum word length; ``-inf`` for the zero polynomial."""
        if not self._terms:
            return float("-inf")
        return max(len(w) for w in self._terms)

    @property
    def min_degree(self):
        if not self._terms:
            return float("inf")
        return min(len(w) for w in self._terms)

    # arithmetic -----------------------------------------------------------

    def _lift(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            if other.alphabet != self.alphabet:
                raise AlphabetMismatch("polynomials live over different alphabets")
            return other
        return Polynomial(self.alphabet, {(): _coerce_scalar(other)})

    def __add__(self, other):
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for w, c in other._terms.items():
            v = out.get(w, 0) + c
            if v:
                out[w] = v
            else:
                out.pop(w, None)
        return Polynomial._raw(self.alphabet, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.alphabet, {w: -c for w, c in self._terms.items()})

    def __sub__(self, other):
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            try:
                c = _coerce_scalar(other)
            except TypeError:
                return NotImplemented
            if not c:
                return Polynomial.zero(self.alphabet)
            return Polynomial._raw(self.alphabet, {w: v * c for w, v in self._terms.items()})
        self._lift(other)
        out = {}
        for u, a in self._terms.items():
            for v, b in other._terms.items():
                w = u + v
                s = out.get(w, 0) + a * b
                if s:
                    out[w] = s
                else:
                    out.pop(w, None)
        return Polynomial._raw(self.alphabet, out)

    def __rmul__(self, other):
        try:
            c = _coerce_scalar(other)
        except TypeError:
            return NotImplemented
        return self * c

    def __truediv__(self, other):
        return self * (1 / _coerce_scalar(other))

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers")
        out = Polynomial.one(self.alphabet)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.alphabet == other.alphabet and self._terms == other._terms
        try:
            return self == self._lift(other)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.alphabet.names, frozenset(self._terms.items())))
        return self._hash

    def map_words(self, fn) -> Polynomial:
        return Polynomial(self.alphabet, [(fn(w), c) for w, c in self._terms.items()])

    def adjoint(self) -> Polynomial:
        return adjoint(self)

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Polynomial({format_poly(self)!r})"


def adjoint(p: Polynomial) -> Polynomial:
    """Anti-linear-free star: reverse each word and swap generators with partners."""
    alph = p.alphabet
    return Polynomial(alph, [(alph.adjoint_word(w), c) for w, c in p.items()])


def bracket(p: Polynomial, q: Polynomial, sign: int) -> Polynomial:
    """``pq + sign*qp``: sign -1 is the commutator, +1 the anticommutator."""
    if sign not in (COMMUTATOR, ANTICOMMUTATOR):
        raise ValueError("sign must be +1 or -1")
    return p * q + (q * p) * sign


def commutator(p, q):
    return bracket(p, q, COMMUTATOR)


def anticommutator(p, q):
    return bracket(p, q, ANTICOMMUTATOR)


def format_poly(p: Polynomial) -> str:
    if not p:
        return "0"
    parts = []
    for w, c in p.items():
        mag = abs(c)
        if w:
            body = p.alphabet.format_word(w)
            text = body if mag == 1 else f"{format_rational(mag)} {body}"
        else:
            text = format_rational(mag)
        if not parts:
            parts.append(("- " if c < 0 else "") + text)
        else:
            parts.append(("- " if c < 0 else "+ ") + text)
    return " ".join(parts)


def parse_expr(text: str, alphabet: Alphabet) -> Polynomial:
    """Parse the whitespace-token expression grammar, e.g. ``1 - 3/2 f+ f-``.

    Standalone ``+``/``-`` tokens separate terms; a term is a product of
    rational coefficients and generator names.
    """
    tokens = text.split()
    if not tokens:
        raise ExpressionError("empty expression")
    total = Polynomial.zero(alphabet)
    sign = 1
    coeff = Fraction(1)
    word = []
    in_term = False

    def flush():
        nonlocal total
        total = total + Polynomial.monomial(alphabet, tuple(word), sign * coeff)

    for pos, tok in enumerate(tokens):
        if tok in ("+", "-"):
            if in_term:
                flush()
                in_term = False
                sign = 1
            elif pos != 0:
                raise ExpressionError(f"dangling operator at token {pos + 1}: {text!r}")
            if tok == "-":
                sign = -sign
            continue
        if not in_term:
            in_term = True
            coeff, word = Fraction(1), []
        if _RATIONAL_RE.match(tok):
            coeff *= parse_rational(tok)
        elif tok in alphabet:
            word.append(alphabet.index(tok))
        else:
            raise ExpressionError(f"unknown generator {tok!r} in {text!r}")
    if not in_term:
        raise ExpressionError(f"expression ends with an operator: {text!r}")
    flush()
    return total
