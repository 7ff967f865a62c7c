"""Simultaneous simplification by degree and the W-measure."""

from __future__ import annotations

from .errors import DegreeZero, NotPure
from .reduction import MultiStep, ReductionSeq
from .syntax import Abs, App, Term, Wrap, attach, instantiate, maxdeg, split_m_abstraction, typecheck


def simp(t: Term, d: int) -> Term:
    """Contract every redex of degree ``d`` at once (structural recursion)."""
    if d < 1:
        raise DegreeZero("simplification is defined for degrees >= 1")
    return _simp(t, d)


def _simp(t: Term, d: int) -> Term:
    if isinstance(t, Abs):
        return Abs(t.binder_type, _simp(t.body, d), t.hint, t.marks)
    if isinstance(t, Wrap):
        return Wrap(_simp(t.body, d), _simp(t.mem, d), t.marks)
    if isinstance(t, App):
        m = split_m_abstraction(t.fun)
        if m is not None and m.degree == d:
            arg = _simp(t.arg, d)
            body = instantiate(_simp(m.body, d), arg)
            return attach(Wrap(body, arg), [_simp(u, d) for u in m.memory])
        return App(_simp(t.fun, d), _simp(t.arg, d))
    return t


def simpfull(t: Term) -> Term:
    """``simp_1(... simp_D(t))`` with ``D = maxdeg(t)``: the G-normal form."""
    for d in range(maxdeg(t), 0, -1):
        t = _simp(t, d)
    return t


def simp_trace(t: Term, d: int) -> ReductionSeq:
    """A degree-``d`` reduction sequence from ``t`` to ``simp(t, d)``."""
    if d < 1:
        raise DegreeZero("simplification is defined for degrees >= 1")
    return MultiStep.of_degree(t, d).sequence()


def simpfull_trace(t: Term) -> ReductionSeq:
    seq = ReductionSeq(t)
    for d in range(maxdeg(t), 0, -1):
        seq = seq + simp_trace(seq.target, d)
    return seq


def w_measure(m: Term) -> int:
    """Number of wrappers in the full simplification of a pure term."""
    if m.weight:
        raise NotPure("the W-measure is defined on pure lambda-terms")
    typecheck(m)
    return simpfull(m).weight
