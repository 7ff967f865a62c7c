"""Finite multisets and the orders built on them.

Elements are natural numbers, pairs ``(degree, multiset)`` or multisets, so
the same class houses Turing's degree multisets and the nested values of
the T^G-measure. ``compare`` is the partial order used throughout: natural
order on numbers, lexicographic order on pairs, and the Dershowitz-Manna
multiset extension on multisets.
"""

from __future__ import annotations

import enum
from collections import Counter
from typing import Callable, Iterable


class PartialOrdering(enum.Enum):
    LESS = "less"
    EQUAL = "equal"
    GREATER = "greater"
    INCOMPARABLE = "incomparable"

    def reverse(self) -> "PartialOrdering":
        if self is PartialOrdering.LESS:
            return PartialOrdering.GREATER
        if self is PartialOrdering.GREATER:
            return PartialOrdering.LESS
        return self

    @property
    def is_ge(self) -> bool:
        return self in (PartialOrdering.GREATER, PartialOrdering.EQUAL)

    @property
    def is_le(self) -> bool:
        return self in (PartialOrdering.LESS, PartialOrdering.EQUAL)


LESS = PartialOrdering.LESS
EQUAL = PartialOrdering.EQUAL
GREATER = PartialOrdering.GREATER
INCOMPARABLE = PartialOrdering.INCOMPARABLE


def canonical_key(x) -> tuple:
    """Total structural order, used only for canonical serialization."""
    if isinstance(x, Multiset):
        return (2, x._canon)
    if isinstance(x, tuple):
        return (1,) + tuple(canonical_key(y) for y in x)
    return (0, x)


class Multiset:
    """Immutable finite multiset with hashable elements."""

    __slots__ = ("_counts", "_canon", "_hash")

    def __init__(self, items: Iterable = ()):
        self._set(Counter(items))

    @classmethod
    def from_counts(cls, pairs: Iterable) -> "Multiset":
        counts = Counter()
        for x, k in pairs:
            if k < 0:
                raise ValueError("multiplicities are non-negative")
            if k:
                counts[x] += k
        m = cls.__new__(cls)
        m._set(counts)
        return m

    def _set(self, counts: Counter):
        counts = +counts
        canon = tuple(
            sorted(((canonical_key(x), k) for x, k in counts.items()), key=lambda p: p[0])
        )
        object.__setattr__(self, "_counts", counts)
        object.__setattr__(self, "_canon", canon)
        object.__setattr__(self, "_hash", hash(canon))

    def __setattr__(self, name, value):
        raise AttributeError("multisets are immutable")

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if not isinstance(other, Multiset):
            return NotImplemented
        return self._hash == other._hash and self._canon == other._canon

    def __len__(self):
        return sum(self._counts.values())

    def __bool__(self):
        return bool(self._counts)

    def __contains__(self, x):
        return self._counts.get(x, 0) > 0

    def count(self, x) -> int:
        return self._counts.get(x, 0)

    def distinct(self) -> list:
        return [x for x, _ in self.items()]

    def items(self) -> list:
        """``(element, multiplicity)`` pairs in canonical order."""
        return sorted(self._counts.items(), key=lambda p: canonical_key(p[0]))

    def elements(self) -> list:
        return [x for x, k in self.items() for _ in range(k)]

    def __iter__(self):
        return iter(self.elements())

    def __add__(self, other: "Multiset") -> "Multiset":
        return Multiset.from_counts(list(self._counts.items()) + list(other._counts.items()))

    def __sub__(self, other: "Multiset") -> "Multiset":
        """Multiset difference (multiplicities truncated at zero)."""
        m = Multiset.__new__(Multiset)
        m._set(self._counts - other._counts)
        return m

    def __repr__(self):
        return pretty(self)

    def to_json(self):
        return to_json(self)


EMPTY = Multiset()


def k_times(k: int, m: Multiset) -> Multiset:
    """``0 (x) m = []`` and ``(1+k) (x) m = m + k (x) m``."""
    if k < 0:
        raise ValueError("k must be a natural number")
    return Multiset.from_counts((x, k * n) for x, n in m._counts.items())


def natural_compare(a: int, b: int) -> PartialOrdering:
    if a == b:
        return EQUAL
    return GREATER if a > b else LESS


def multiset_compare(m: Multiset, n: Multiset, elem_cmp: Callable = natural_compare) -> PartialOrdering:
    """Multiset extension of the strict partial order ``elem_cmp``.

    ``m > n`` iff ``m != n`` and every element of ``n - m`` lies below some
    element of ``m - n``. For a strict partial order on the elements this is
    the transitive closure of replacing one element by finitely many smaller
    ones.
    """
    if m == n:
        return EQUAL
    x, y = m - n, n - m
    xs, ys = x.distinct(), y.distinct()

    def dominated(lows, highs):
        return all(any(elem_cmp(h, l) is GREATER for h in highs) for l in lows)

    if xs and dominated(ys, xs):
        return GREATER
    if ys and dominated(xs, ys):
        return LESS
    return INCOMPARABLE


def pointwise_compare(m: Multiset, n: Multiset, elem_cmp: Callable = natural_compare) -> bool:
    """True iff ``m = [x1..xk]``, ``n = [y1..yk]`` with ``xi > yi`` for all i."""
    xs, ys = m.elements(), n.elements()
    if len(xs) != len(ys):
        return False
    adj = [[j for j, y in enumerate(ys) if elem_cmp(x, y) is GREATER] for x in xs]
    match_of_y = [-1] * len(ys)

    def augment(i, seen):
        for j in adj[i]:
            if j in seen:
                continue
            seen.add(j)
            if match_of_y[j] < 0 or augment(match_of_y[j], seen):
                match_of_y[j] = i
                return True
        return False

    return all(augment(i, set()) for i in range(len(xs)))


class MeasureComparator:
    """The partial order on numbers, pairs and nested multisets, memoized."""

    def __init__(self):
        self.cache = {}

    def __call__(self, a, b) -> PartialOrdering:
        if a is b:
            return EQUAL
        if isinstance(a, Multiset) and isinstance(b, Multiset):
            key = (a, b)
            hit = self.cache.get(key)
            if hit is None:
                hit = multiset_compare(a, b, self)
                self.cache[key] = hit
            return hit
        if isinstance(a, tuple) and isinstance(b, tuple):
            return self._lex(a, b)
        if isinstance(a, int) and isinstance(b, int):
            return natural_compare(a, b)
        return INCOMPARABLE

    def _lex(self, a, b):
        if len(a) != len(b):
            return INCOMPARABLE
        for x, y in zip(a, b):
            r = self(x, y)
            if r is not EQUAL:
                return r
        return EQUAL


def compare(a, b) -> PartialOrdering:
    return MeasureComparator()(a, b)


def to_json(x):
    """Numbers stay numbers; pairs and multisets become lists, canonically."""
    if isinstance(x, Multiset):
        return [to_json(e) for e in x.elements()]
    if isinstance(x, tuple):
        return [to_json(e) for e in x]
    return x


def from_json(data, depth_kind: str = "A"):
    """Inverse of :func:`to_json` for measure values.

    ``depth_kind`` says whether ``data`` is an A-value (list of
    ``[degree, B-value]``) or a B-value (list of A-values).
    """
    if depth_kind == "A":
        return Multiset((d, from_json(b, "B")) for d, b in data)
    return Multiset(from_json(a, "A") for a in data)


def pretty(x) -> str:
    if isinstance(x, Multiset):
        parts = []
        for e, k in x.items():
            s = pretty(e)
            parts.append(s if k == 1 else f"{s}^{k}")
        return "[" + ", ".join(parts) + "]"
    if isinstance(x, tuple):
        return "(" + ", ".join(pretty(e) for e in x) + ")"
    return str(x)
