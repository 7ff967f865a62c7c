"""Degree-indexed measures: Turing's measures and the T^G-measure.

For a term ``t`` and degree ``d``:

* ``eme(d, t0, t)`` has one element ``(d, bme(d, t0))`` per redex of degree
  exactly ``d`` in ``t``;
* ``ame(d, t) = eme(1, t, t) + ... + eme(d, t, t)``;
* ``bme(d, t)`` has one element ``ame(d-1, t')`` per reduction sequence
  ``t ->d* t'`` (the empty one included).

``bme`` counts sequences by counting paths in the degree-``d`` reduction
graph, which is acyclic. Results are memoized on ``(d, term)`` inside a
:class:`MeasureContext`.
"""

from __future__ import annotations

import os
from typing import Optional, Sequence, Union

from .errors import BudgetExceeded, NormalForm, NotPure
from .multiset import EMPTY, MeasureComparator, Multiset, PartialOrdering
from .reduction import (
    DEFAULT_NODE_BUDGET,
    Kind,
    Step,
    _lambda_position,
    enumerate_beta_redexes,
    reduction_graph,
)
from .syntax import Abs, App, Term, Wrap, height, maxdeg, position_key, split_m_abstraction, typecheck

DEFAULT_SEQUENCE_BUDGET = 10**6
DEFAULT_MAX_DEGREE = 4


def sequence_budget() -> int:
    """Default sequence budget, overridable with ``DEGREE_LAB_BUDGET``."""
    value = os.environ.get("DEGREE_LAB_BUDGET")
    return int(value) if value else DEFAULT_SEQUENCE_BUDGET


class MeasureContext:
    """Memo tables and budgets shared by a batch of measure computations."""

    def __init__(
        self,
        sequence_budget: Optional[int] = None,
        max_degree: int = DEFAULT_MAX_DEGREE,
        node_budget: int = DEFAULT_NODE_BUDGET,
    ):
        self.sequence_budget = globals()["sequence_budget"]() if sequence_budget is None else sequence_budget
        self.max_degree = max_degree
        self.node_budget = node_budget
        self.ame_memo = {}
        self.bme_memo = {}
        self.compare = MeasureComparator()

    def eme(self, d: int, t0: Term, t: Union[Term, Sequence[Term]]) -> Multiset:
        if not isinstance(t, Term):
            # a memory: eme(L<u>) = eme(L) + eme(u)
            out = EMPTY
            for u in t:
                out = out + self.eme(d, t0, u)
            return out
        if d == 0:
            return EMPTY
        if isinstance(t, Abs):
            return self.eme(d, t0, t.body)
        if isinstance(t, Wrap):
            return self.eme(d, t0, t.body) + self.eme(d, t0, t.mem)
        if isinstance(t, App):
            m = split_m_abstraction(t.fun)
            if m is not None and m.degree == d:
                return (
                    self.eme(d, t0, m.body)
                    + self.eme(d, t0, m.memory)
                    + self.eme(d, t0, t.arg)
                    + Multiset([(d, self.bme(d, t0))])
                )
            return self.eme(d, t0, t.fun) + self.eme(d, t0, t.arg)
        return EMPTY

    def ame(self, d: int, t: Term) -> Multiset:
        key = (d, t)
        hit = self.ame_memo.get(key)
        if hit is None:
            hit = EMPTY
            for i in range(1, d + 1):
                hit = hit + self.eme(i, t, t)
            self.ame_memo[key] = hit
        return hit

    def bme(self, d: int, t: Term) -> Multiset:
        if d < 1:
            raise ValueError("bme is defined for degrees >= 1")
        key = (d, t)
        hit = self.bme_memo.get(key)
        if hit is None:
            graph = reduction_graph(t, d, self.node_budget)
            counts = graph.path_counts()
            total = sum(counts)
            if total > self.sequence_budget:
                raise BudgetExceeded(
                    f"bme({d}, {t}) ranges over {total} sequences "
                    f"(budget {self.sequence_budget})",
                    f"bme({d})",
                )
            hit = Multiset.from_counts(
                (self.ame(d - 1, v), k) for v, k in zip(graph.vertices, counts)
            )
            self.bme_memo[key] = hit
        return hit

    def sequence_count(self, d: int, t: Term) -> int:
        return sum(reduction_graph(t, d, self.node_budget).path_counts())

    def t_measure(self, m: Term) -> Multiset:
        _require_pure(m)
        d = maxdeg(m)
        if d > self.max_degree:
            raise BudgetExceeded(
                f"maxdeg {d} exceeds the configured limit {self.max_degree}", "t_measure"
            )
        return self.ame(d, m)


def _require_pure(m: Term):
    if m.weight:
        raise NotPure("expected a pure lambda-term")
    typecheck(m)


def eme(d: int, t0: Term, t, ctx: Optional[MeasureContext] = None) -> Multiset:
    return (ctx or MeasureContext()).eme(d, t0, t)


def ame(d: int, t: Term, ctx: Optional[MeasureContext] = None) -> Multiset:
    return (ctx or MeasureContext()).ame(d, t)


def bme(d: int, t: Term, ctx: Optional[MeasureContext] = None) -> Multiset:
    return (ctx or MeasureContext()).bme(d, t)


def t_measure(m: Term, ctx: Optional[MeasureContext] = None) -> Multiset:
    """The T^G-measure ``ame(maxdeg(M), M)`` of a pure term."""
    return (ctx or MeasureContext()).t_measure(m)


def measure_compare(a, b) -> PartialOrdering:
    return MeasureComparator()(a, b)


# ----------------------------------------------------------------------------
# Turing's measures


def turing_measure(m: Term) -> Multiset:
    """Multiset of the degrees of all redexes of ``m``."""
    _require_pure(m)
    return Multiset(s.degree for s in enumerate_beta_redexes(m))


def turing_measure_prime(m: Term) -> tuple:
    """``(D, n)``: max degree and how many redexes reach it."""
    _require_pure(m)
    degrees = [s.degree for s in enumerate_beta_redexes(m)]
    if not degrees:
        return (0, 0)
    top = max(degrees)
    return (top, degrees.count(top))


def generalized_turing_measure(d: int, m: Term) -> Multiset:
    """``T_d(M)``: ``(i, T_{i-1}(M))`` for each beta-redex of degree ``i <= d``.

    This is the family that fails to decrease when a redex copies redexes of
    its own degree.
    """
    _require_pure(m)
    out = []
    for s in enumerate_beta_redexes(m):
        if s.degree <= d:
            out.append((s.degree, generalized_turing_measure(s.degree - 1, m)))
    return Multiset(out)


def rightmost_highest_strategy(m: Term) -> Step:
    """The redex of maximal degree whose lambda occurs rightmost."""
    _require_pure(m)
    redexes = enumerate_beta_redexes(m)
    if not redexes:
        raise NormalForm("no redex to contract")
    top = max(s.degree for s in redexes)
    return max(
        (s for s in redexes if s.degree == top),
        key=lambda s: position_key(_lambda_position(m, s.position)),
    )


def leftmost_outermost_strategy(m: Term, kind: Kind = Kind.BETA) -> Step:
    from .reduction import enumerate_redexes

    redexes = enumerate_redexes(m, kind)
    if not redexes:
        raise NormalForm("no redex to contract")
    return redexes[0]
