"""Deglex rewriting, diamond-lemma ambiguity checks and bounded completion."""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from .algebra import Alphabet, Polynomial

__all__ = [
    "Ambiguity",
    "AmbiguityReport",
    "DegLex",
    "InconsistentPresentation",
    "NormalWords",
    "ReductionLimitExceeded",
    "RewriteRule",
    "RewriteSystem",
    "ambiguities",
    "check_confluence",
    "complete",
    "contains_subword",
    "normal_words",
    "orient",
    "reduce",
]

MAX_STEPS = 10**6
MAX_INTERREDUCE = 10**4
DEFAULT_MAX_RULES = 64

CONFLUENT = "confluent"
BOUNDED = "bounded"


class InconsistentPresentation(ValueError):
    """The relations put a nonzero constant in the ideal."""


class ReductionLimitExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class DegLex:
    """Degree first, then lexicographic by ``precedence`` (smallest generator first)."""

    precedence: tuple

    def __post_init__(self):
        object.__setattr__(self, "precedence", tuple(self.precedence))
        if sorted(self.precedence) != list(range(len(self.precedence))):
            raise ValueError("precedence must be a permutation of generator indices")
        rank = [0] * len(self.precedence)
        for r, g in enumerate(self.precedence):
            rank[g] = r
        object.__setattr__(self, "_rank", tuple(rank))

    @classmethod
    def from_names(cls, alphabet: Alphabet, names) -> DegLex:
        names = list(names)
        if sorted(names) != sorted(alphabet.names):
            raise ValueError("order must list every generator exactly once")
        return cls(tuple(alphabet.index(n) for n in names))

    def key(self, word):
        rank = self._rank
        return (len(word), tuple(rank[g] for g in word))

    def neg_key(self, word):
        # max-heap key
        rank = self._rank
        return (-len(word), tuple(-rank[g] for g in word))

    def less(self, u, v) -> bool:
        return self.key(u) < self.key(v)

    def leading_word(self, p: Polynomial):
        if not p:
            raise ValueError("zero polynomial has no leading word")
        return max(p.words(), key=self.key)

    def sorted_words(self, words, reverse=False):
        return sorted(words, key=self.key, reverse=reverse)


@dataclass(frozen=True)
class RewriteRule:
    lhs: tuple
    rhs: Polynomial

    def relation(self) -> Polynomial:
        return Polynomial.monomial(self.rhs.alphabet, self.lhs) - self.rhs

    def format(self) -> str:
        return f"{self.rhs.alphabet.format_word(self.lhs)} -> {self.rhs}"


class RewriteSystem:
    """An order plus inter-reduced oriented rules, sorted by leading word."""

    def __init__(self, alphabet: Alphabet, order: DegLex, rules=()):
        if len(order.precedence) != len(alphabet):
            raise ValueError("order and alphabet sizes differ")
        self.alphabet = alphabet
        self.order = order
        self.rules = tuple(sorted(rules, key=lambda r: order.key(r.lhs)))
        self._by_lhs = {r.lhs: r for r in self.rules}
        self._lengths = sorted({len(r.lhs) for r in self.rules})

    def __repr__(self):
        return f"RewriteSystem({len(self.rules)} rules)"

    def __eq__(self, other):
        return (
            isinstance(other, RewriteSystem)
            and self.alphabet == other.alphabet
            and self.order == other.order
            and self.rules == other.rules
        )

    def __hash__(self):
        return hash((self.alphabet, self.order, self.rules))

    @property
    def max_lhs_degree(self):
        return max((len(r.lhs) for r in self.rules), default=0)

    def matches(self, word):
        """All ``(position, rule)`` pairs whose lhs occurs in ``word``."""
        out = []
        by_lhs = self._by_lhs
        n = len(word)
        for i in range(n):
            for L in self._lengths:
                if i + L > n:
                    break
                rule = by_lhs.get(word[i:i + L])
                if rule is not None:
                    out.append((i, rule))
        return out

    def first_match(self, word):
        by_lhs = self._by_lhs
        n = len(word)
        for i in range(n):
            for L in self._lengths:
                if i + L > n:
                    break
                rule = by_lhs.get(word[i:i + L])
                if rule is not None:
                    return i, rule
        return None

    def is_normal(self, word) -> bool:
        return self.first_match(word) is None

    def reduce(self, p, **kw):
        return reduce(p, self, **kw)


def contains_subword(word, sub) -> bool:
    L = len(sub)
    return any(word[i:i + L] == sub for i in range(len(word) - L + 1))


def reduce(p: Polynomial, sys: RewriteSystem, *, rng=None, max_steps=MAX_STEPS) -> Polynomial:
    """Normal form of ``p``.

    The default strategy always rewrites the largest reducible word at its
    leftmost match, so every word is visited once.  With ``rng`` each step
    picks a random pending word, match position and rule instead.
    """
    if p.alphabet != sys.alphabet:
        raise ValueError("polynomial and rewrite system use different alphabets")
    if rng is not None:
        return _reduce_random(p, sys, rng, max_steps)
    order = sys.order
    todo = dict(p.items())
    heap = [(order.neg_key(w), w) for w in todo]
    heapq.heapify(heap)
    result = {}
    steps = 0
    while heap:
        _, w = heapq.heappop(heap)
        c = todo.pop(w, 0)
        if not c:
            continue
        m = sys.first_match(w)
        if m is None:
            result[w] = c
            continue
        steps += 1
        if steps > max_steps:
            raise ReductionLimitExceeded(f"more than {max_steps} rewrite steps")
        i, rule = m
        pre, post = w[:i], w[i + len(rule.lhs):]
        for u, d in rule.rhs.items():
            nw = pre + u + post
            old = todo.get(nw)
            if old is None:
                todo[nw] = c * d
                heapq.heappush(heap, (order.neg_key(nw), nw))
            else:
                v = old + c * d
                todo[nw] = v  # zero entries are skipped on pop
    return Polynomial(p.alphabet, result)


def _reduce_random(p, sys, rng, max_steps):
    todo = dict(p.items())
    result = {}
    steps = 0
    while todo:
        w = rng.choice(sorted(todo, key=sys.order.key))
        c = todo.pop(w)
        found = sys.matches(w)
        if not found:
            v = result.get(w, 0) + c
            if v:
                result[w] = v
            else:
                result.pop(w, None)
            continue
        steps += 1
        if steps > max_steps:
            raise ReductionLimitExceeded(f"more than {max_steps} rewrite steps")
        i, rule = rng.choice(found)
        pre, post = w[:i], w[i + len(rule.lhs):]
        for u, d in rule.rhs.items():
            nw = pre + u + post
            v = todo.get(nw, 0) + c * d
            if v:
                todo[nw] = v
            else:
                todo.pop(nw, None)
    return Polynomial(p.alphabet, result)


def _make_rule(p: Polynomial, order: DegLex) -> RewriteRule:
    lead = order.leading_word(p)
    if not lead:
        raise InconsistentPresentation(f"relation {p} reduces to a nonzero constant")
    monic = p / p.coefficient(lead)
    return RewriteRule(lead, Polynomial.monomial(p.alphabet, lead) - monic)


def orient(relations, order: DegLex, alphabet: Alphabet | None = None) -> RewriteSystem:
    """Turn relations into an inter-reduced rewrite system.

    Each relation is made monic in its leading word; rules whose lhs contains
    another lhs are re-reduced and re-oriented until stable, and finally every
    rhs is brought to normal form.
    """
    relations = list(relations)
    if alphabet is None:
        if not relations:
            raise ValueError("cannot infer alphabet from an empty relation list")
        alphabet = relations[0].alphabet
    for r in relations:
        if r.alphabet != alphabet:
            raise ValueError("relation over a foreign alphabet")
    # process small relations first so large ones get reduced before insertion
    pending = sorted(
        (r for r in relations if r),
        key=lambda r: order.key(order.leading_word(r)),
        reverse=True,
    )
    if len(pending) != len(relations):
        raise ValueError("relations must be nonzero")
    rules = {}
    sys = RewriteSystem(alphabet, order)
    rounds = 0
    while pending:
        rounds += 1
        if rounds > MAX_INTERREDUCE:
            raise RuntimeError("inter-reduction did not stabilise")
        p = reduce(pending.pop(), sys)
        if not p:
            continue
        rule = _make_rule(p, order)
        for lhs in [l for l in rules if contains_subword(l, rule.lhs)]:
            pending.append(rules.pop(lhs).relation())
        rules[rule.lhs] = rule
        sys = RewriteSystem(alphabet, order, rules.values())
    final = [RewriteRule(r.lhs, reduce(r.rhs, sys)) for r in sys.rules]
    return RewriteSystem(alphabet, order, final)


@dataclass(frozen=True)
class Ambiguity:
    """Two rule applications to one word.

    ``offset`` is where the second rule's lhs starts inside ``superword``.
    """

    kind: str  # "overlap" | "inclusion"
    rules: tuple
    superword: tuple
    offset: int

    def branches(self, sys: RewriteSystem):
        i, j = self.rules
        ri, rj = sys.rules[i], sys.rules[j]
        alph = sys.alphabet
        w = self.superword
        mono = Polynomial.monomial
        if self.kind == "overlap":
            left = ri.rhs * mono(alph, w[len(ri.lhs):])
            right = mono(alph, w[:self.offset]) * rj.rhs
        else:
            left = ri.rhs
            right = mono(alph, w[:self.offset]) * rj.rhs * mono(alph, w[self.offset + len(rj.lhs):])
        return left, right


def ambiguities(sys: RewriteSystem):
    """Every overlap and inclusion ambiguity, ordered by rule pair then offset."""
    out = []
    rules = sys.rules
    for i, ri in enumerate(rules):
        a = ri.lhs
        for j, rj in enumerate(rules):
            b = rj.lhs
            for off in range(1, len(a)):
                if off + len(b) > len(a) and a[off:] == b[:len(a) - off]:
                    out.append(Ambiguity("overlap", (i, j), a + b[len(a) - off:], off))
            if i != j:
                for off in range(0, len(a) - len(b) + 1):
                    if a[off:off + len(b)] == b:
                        out.append(Ambiguity("inclusion", (i, j), a, off))
    return out


@dataclass(frozen=True)
class ResolvedAmbiguity:
    ambiguity: Ambiguity
    residual: Polynomial

    @property
    def resolved(self):
        return not self.residual

    @property
    def kind(self):
        return self.ambiguity.kind

    @property
    def rules(self):
        return self.ambiguity.rules

    @property
    def superword(self):
        return self.ambiguity.superword


@dataclass(frozen=True)
class AmbiguityReport:
    entries: tuple

    @property
    def unresolved(self):
        return [e for e in self.entries if not e.resolved]

    @property
    def confluent(self):
        return not self.unresolved

    def __len__(self):
        return len(self.entries)


def check_confluence(sys: RewriteSystem) -> AmbiguityReport:
    entries = []
    for amb in ambiguities(sys):
        left, right = amb.branches(sys)
        entries.append(ResolvedAmbiguity(amb, reduce(left - right, sys)))
    return AmbiguityReport(tuple(entries))


def complete(sys: RewriteSystem, max_degree=None, max_rules=DEFAULT_MAX_RULES):
    """Bounded Knuth-Bendix completion.

    Repeatedly adds the smallest unresolved residual as a new rule and
    inter-reduces.  Returns ``(system, status)`` with status ``"confluent"``
    or ``"bounded"`` when a degree or rule-count cap stops the loop.
    """
    if max_degree is None:
        max_degree = 2 * sys.max_lhs_degree
    if max_degree < sys.max_lhs_degree:
        raise ValueError("max_degree is below the largest existing lhs degree")
    if max_rules < len(sys.rules):
        raise ValueError("max_rules is below the current rule count")
    order = sys.order
    current = sys
    while True:
        report = check_confluence(current)
        unresolved = report.unresolved
        if not unresolved:
            return current, CONFLUENT
        candidates = [
            e for e in unresolved if len(order.leading_word(e.residual)) <= max_degree
        ]
        if not candidates:
            return current, BOUNDED
        pick = min(
            candidates,
            key=lambda e: (order.key(order.leading_word(e.residual)), e.rules, e.ambiguity.offset),
        )
        relations = [r.relation() for r in current.rules] + [pick.residual]
        nxt = orient(relations, order, current.alphabet)
        if len(nxt.rules) > max_rules:
            return current, BOUNDED
        current = nxt


@dataclass(frozen=True)
class NormalWords:
    levels: tuple  # one tuple of words per degree
    finite_dimensional: bool
    exact: bool  # False when the system was not known to be confluent

    @property
    def counts(self):
        return [len(level) for level in self.levels]

    @property
    def total(self):
        return sum(self.counts)

    def words(self):
        return [w for level in self.levels for w in level]


def normal_words(sys: RewriteSystem, max_degree: int, confluent=None) -> NormalWords:
    """Words of degree <= max_degree avoiding every lhs, grouped by degree.

    Enumeration stops at the first empty degree: normal words are closed
    under taking subwords, so every longer level is empty too.
    """
    if confluent is None:
        confluent = check_confluence(sys).confluent
    lhs = {r.lhs for r in sys.rules}
    lengths = sorted({len(l) for l in lhs})
    levels = [((),)] if () not in lhs else [()]
    gens = sys.order.precedence
    while levels[-1] and len(levels) <= max_degree:
        nxt = []
        for w in levels[-1]:
            for g in gens:
                cand = w + (g,)
                n = len(cand)
                if not any(cand[n - L:] in lhs for L in lengths if L <= n):
                    nxt.append(cand)
        levels.append(tuple(sys.order.sorted_words(nxt)))
    finite = not levels[-1]
    return NormalWords(tuple(levels), finite, bool(confluent))

