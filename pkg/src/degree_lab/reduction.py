"""Steps, reduction sequences, residuals and reduction graphs.

A :class:`Step` is a redex occurrence: a source term plus the position of an
application ``(\\x.b)L a``. Residuals are tracked by *marking*: the lambda of
a redex (or a wrapper node) carries a label, substitution copies labels along
with the subterm, so after any number of steps the labelled nodes are
exactly the residuals. Projections and postponement of forgetful steps are
built on top of this, following the usual empty/cons recursions over
sequences.
"""

from __future__ import annotations

import enum
import json
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, NamedTuple, Optional

from .errors import (
    BudgetExceeded,
    InvalidPosition,
    MarkNotRedex,
    MixedDegrees,
    NotPure,
    SourceMismatch,
    Untypable,
)
from .syntax import (
    Abs,
    App,
    Position,
    Sel,
    Term,
    Wrap,
    erase_marks,
    format_position,
    height,
    instantiate,
    is_pure,
    m_abstraction_degree,
    maxdeg,
    position_key,
    replace_at,
    subterm_at,
    subterms,
)

DEFAULT_NODE_BUDGET = 100_000


class Kind(enum.Enum):
    BETA = "beta"
    G = "g"


def contract(redex: Term, kind: Kind = Kind.G) -> Term:
    """Contract ``(\\x.b)L a`` to ``b{x:=a}<a>L`` (G) or ``b{x:=a}`` (beta).

    Marks on the memory's wrapper nodes are kept; the contracted lambda and
    its marks disappear.
    """
    arg = redex.arg

    def rebuild(f):
        if isinstance(f, Wrap):
            return Wrap(rebuild(f.body), f.mem, f.marks)
        body = instantiate(f.body, arg)
        return Wrap(body, arg) if kind is Kind.G else body

    return rebuild(redex.fun)


def _lambda_position(t: Term, pos: Position) -> Position:
    """Position of the lambda heading the redex at ``pos``."""
    node = subterm_at(t, pos).fun
    pos = pos + (Sel.APP_FUN,)
    while isinstance(node, Wrap):
        node = node.body
        pos = pos + (Sel.WRAP_BODY,)
    return pos


@dataclass(frozen=True)
class Step:
    """A redex occurrence in ``source``; identity is (source, position, kind)."""

    source: Term
    position: Position
    kind: Kind = Kind.G
    degree: int = field(init=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "position", tuple(self.position))
        if self.source.ty is None:
            raise Untypable("steps need a typable source")
        node = subterm_at(self.source, self.position)
        if not isinstance(node, App):
            raise InvalidPosition(f"no application at {format_position(self.position)}")
        if self.kind is Kind.BETA:
            if not is_pure(self.source):
                raise NotPure("beta steps act on pure terms")
            if not isinstance(node.fun, Abs):
                raise InvalidPosition(f"no beta-redex at {format_position(self.position)}")
        deg = m_abstraction_degree(node.fun)
        if deg is None:
            raise InvalidPosition(f"no redex at {format_position(self.position)}")
        object.__setattr__(self, "degree", deg)

    @cached_property
    def target(self) -> Term:
        return apply_step(self)

    def __str__(self):
        return f"{self.kind.value}{self.degree}@{format_position(self.position) or '.'}"


def apply_step(step: Step) -> Term:
    redex = subterm_at(step.source, step.position)
    return replace_at(step.source, step.position, contract(redex, step.kind))


def enumerate_redexes(t: Term, kind: Kind = Kind.G) -> list:
    """All redexes of ``t``, leftmost-outermost first."""
    if t.ty is None:
        raise Untypable("cannot enumerate redexes of an ill-typed term")
    out = []
    for pos, u in subterms(t):
        if isinstance(u, App):
            f = u.fun
            if kind is Kind.BETA:
                if isinstance(f, Abs):
                    out.append(Step(t, pos, kind))
            elif m_abstraction_degree(f) is not None:
                out.append(Step(t, pos, kind))
    return out


def enumerate_beta_redexes(m: Term) -> list:
    if not is_pure(m):
        raise NotPure("beta-redexes are enumerated on pure terms")
    return enumerate_redexes(m, Kind.BETA)


def enumerate_steps_of_degree(t: Term, d: int) -> list:
    return [s for s in enumerate_redexes(t) if s.degree == d]


def corresponding_step(m: Step) -> Step:
    """The G-step contracting the same redex as the beta-step ``m``."""
    if m.kind is not Kind.BETA or not is_pure(m.source):
        raise NotPure("corresponding steps are defined for beta-steps on pure terms")
    return Step(m.source, m.position, Kind.G)


def is_normal(t: Term, degree: Optional[int] = None) -> bool:
    for pos, u in subterms(t):
        if isinstance(u, App):
            deg = m_abstraction_degree(u.fun)
            if deg is not None and (degree is None or deg == degree):
                return False
    return True


# ----------------------------------------------------------------------------
# Forgetful steps


@dataclass(frozen=True)
class ForgetStep:
    """Erase the memorized term of the wrapper at ``position``."""

    source: Term
    position: Position

    def __post_init__(self):
        object.__setattr__(self, "position", tuple(self.position))
        if not isinstance(subterm_at(self.source, self.position), Wrap):
            raise InvalidPosition(f"no wrapper at {format_position(self.position)}")

    @cached_property
    def target(self) -> Term:
        node = subterm_at(self.source, self.position)
        return replace_at(self.source, self.position, node.body)

    def __str__(self):
        return f"forget@{format_position(self.position) or '.'}"


def enumerate_forget_steps(t: Term) -> list:
    return [ForgetStep(t, pos) for pos, u in subterms(t) if isinstance(u, Wrap)]


# ----------------------------------------------------------------------------
# Sequences


class _Seq:
    """Shared behaviour of composable step sequences."""

    step_type: type

    def __init__(self, source: Term, steps: Iterable = ()):
        self.source = source
        self.steps = tuple(steps)
        cur = source
        for s in self.steps:
            if not isinstance(s, self.step_type):
                raise TypeError(f"expected {self.step_type.__name__}, got {type(s).__name__}")
            if s.source != cur:
                raise SourceMismatch(f"step {s} does not start where the sequence is")
            cur = s.target
        self.target = cur

    def __len__(self):
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)

    def __eq__(self, other):
        return (
            type(self) is type(other)
            and self.source == other.source
            and self.steps == other.steps
        )

    def __hash__(self):
        return hash((type(self).__name__, self.source, self.steps))

    def __add__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        if other.source != self.target:
            raise SourceMismatch("sequences are not composable")
        return type(self)(self.source, self.steps + other.steps)

    def terms(self) -> list:
        out = [self.source]
        for s in self.steps:
            out.append(s.target)
        return out

    def __repr__(self):
        inner = " ".join(str(s) for s in self.steps) or "ε"
        return f"{type(self).__name__}({inner})"


class ReductionSeq(_Seq):
    step_type = Step

    @property
    def degrees(self) -> set:
        return {s.degree for s in self.steps}

    def degree(self) -> Optional[int]:
        """The common degree of all steps, None when empty."""
        ds = self.degrees
        if len(ds) > 1:
            raise MixedDegrees(f"sequence mixes degrees {sorted(ds)}")
        return next(iter(ds), None)


class ForgetSeq(_Seq):
    step_type = ForgetStep


def seq_from_positions(source: Term, positions: Iterable) -> ReductionSeq:
    """Replay a list of redex positions starting from ``source``."""
    steps, cur = [], source
    for pos in positions:
        s = Step(cur, pos)
        steps.append(s)
        cur = s.target
    return ReductionSeq(source, steps)


# ----------------------------------------------------------------------------
# Marks, developments and multi-steps


def _add_mark(t: Term, pos: Position, label) -> Term:
    node = subterm_at(t, pos)
    if isinstance(node, Abs):
        new = Abs(node.binder_type, node.body, node.hint, node.marks | {label})
    elif isinstance(node, Wrap):
        new = Wrap(node.body, node.mem, node.marks | {label})
    else:
        raise InvalidPosition("only abstractions and wrappers can be marked")
    return replace_at(t, pos, new)


def mark_redex(t: Term, pos: Position, label) -> Term:
    """Mark the lambda of the redex at ``pos`` with ``label``."""
    if not isinstance(subterm_at(t, pos), App) or m_abstraction_degree(subterm_at(t, pos).fun) is None:
        raise InvalidPosition(f"no redex at {format_position(pos)}")
    return _add_mark(t, _lambda_position(t, pos), label)


def mark_wrapper(t: Term, pos: Position, label) -> Term:
    return _add_mark(t, pos, label)


def marked_redexes(t: Term, label=None) -> list:
    """Positions of redexes whose lambda carries ``label`` (any mark if None)."""
    out = []
    for pos, u in subterms(t):
        if isinstance(u, App):
            f = u.fun
            while isinstance(f, Wrap):
                f = f.body
            if isinstance(f, Abs) and f.marks and (label is None or label in f.marks):
                out.append(pos)
    return out


def marked_wrappers(t: Term, label) -> list:
    return [pos for pos, u in subterms(t) if isinstance(u, Wrap) and label in u.marks]


def _check_marks_head_redexes(t: Term, label=None):
    heads = set()
    for pos in marked_redexes(t, label):
        heads.add(_lambda_position(t, pos))
    for pos, u in subterms(t):
        if isinstance(u, Abs) and u.marks and (label is None or label in u.marks):
            if pos not in heads:
                raise MarkNotRedex(f"marked abstraction at {format_position(pos)} heads no redex")


def _develop(l: Term, label=None, budget: int = DEFAULT_NODE_BUDGET):
    """Contract marked redexes leftmost-outermost until none is left.

    Returns the witnessing sequence (on unmarked terms) and the final marked
    term.
    """
    _check_marks_head_redexes(l, label)
    steps = []
    cur_marked = l
    cur = erase_marks(l)
    while True:
        todo = marked_redexes(cur_marked, label)
        if not todo:
            return ReductionSeq(erase_marks(l), steps), cur_marked
        if len(steps) >= budget:
            raise BudgetExceeded("development longer than the step budget", "develop")
        pos = todo[0]
        step = Step(cur, pos)
        steps.append(step)
        cur_marked = replace_at(cur_marked, pos, contract(subterm_at(cur_marked, pos)))
        cur = step.target


def develop(l: Term, label=None, budget: int = DEFAULT_NODE_BUDGET) -> ReductionSeq:
    """Complete development of the marked redexes of ``l``."""
    return _develop(l, label, budget)[0]


@dataclass(frozen=True)
class MultiStep:
    """A set of redexes of ``source`` to be contracted simultaneously."""

    source: Term
    positions: frozenset

    @classmethod
    def of_step(cls, step: Step) -> "MultiStep":
        return cls(step.source, frozenset([step.position]))

    @classmethod
    def of_degree(cls, t: Term, d: int) -> "MultiStep":
        return cls(t, frozenset(s.position for s in enumerate_steps_of_degree(t, d)))

    def labeled(self, label, base: Optional[Term] = None) -> Term:
        t = self.source if base is None else base
        for pos in sorted(self.positions, key=position_key):
            t = mark_redex(t, pos, label)
        return t

    def sequence(self, budget: int = DEFAULT_NODE_BUDGET) -> ReductionSeq:
        return develop(self.labeled("ms"), "ms", budget)

    @property
    def target(self) -> Term:
        return self.sequence().target

    def __len__(self):
        return len(self.positions)


def _step_over_multistep(step: Step, ms: MultiStep, budget):
    """Return ``(R/S, S/R)`` for a step ``R`` and a multi-step ``S``."""
    if step.source != ms.source:
        raise SourceMismatch("step and multi-step start from different terms")
    both = mark_redex(ms.labeled("S"), step.position, "R")
    _, after_s = _develop(both, "S", budget)
    r_over_s = MultiStep(erase_marks(after_s), frozenset(marked_redexes(after_s, "R")))
    after_r = replace_at(both, step.position, contract(subterm_at(both, step.position)))
    s_over_r = MultiStep(erase_marks(after_r), frozenset(marked_redexes(after_r, "S")))
    return r_over_s, s_over_r


def _seq_over_multistep(rho: ReductionSeq, ms: MultiStep, budget):
    """Return ``(rho/S, S/rho)``."""
    if not rho.steps:
        return ReductionSeq(ms.target), ms
    first, rest = rho.steps[0], ReductionSeq(rho.steps[0].target, rho.steps[1:])
    r_over_s, s_over_r = _step_over_multistep(first, ms, budget)
    tail, s_final = _seq_over_multistep(rest, s_over_r, budget)
    head = r_over_s.sequence(budget)
    if len(head) + len(tail) > budget:
        raise BudgetExceeded("projection longer than the step budget", "project_seq")
    return head + tail, s_final


def project_seq(rho: ReductionSeq, sigma: ReductionSeq, budget: int = DEFAULT_NODE_BUDGET):
    """Return ``(rho/sigma, sigma/rho)``, two sequences with a common target.

    Each argument must use a single degree. ``rho/sigma`` starts at the
    target of ``sigma`` and ``sigma/rho`` at the target of ``rho``.
    """
    if rho.source != sigma.source:
        raise SourceMismatch("projected sequences must share their source")
    rho.degree()
    sigma.degree()
    if not sigma.steps:
        return rho, ReductionSeq(rho.target)
    first = sigma.steps[0]
    rest = ReductionSeq(first.target, sigma.steps[1:])
    rho_over_s, s_over_rho = _seq_over_multistep(rho, MultiStep.of_step(first), budget)
    a, b = project_seq(rho_over_s, rest, budget)
    return a, s_over_rho.sequence(budget) + b


class Lifting(NamedTuple):
    """``t ->D* simp_D(t) ->d+ u`` together with ``s' ->D* u``."""

    develop: ReductionSeq
    lower: ReductionSeq
    join: ReductionSeq

    @property
    def target(self) -> Term:
        return self.lower.target


def lift(
    step: Step,
    sigma: ReductionSeq,
    degree: Optional[int] = None,
    budget: int = DEFAULT_NODE_BUDGET,
) -> Lifting:
    """Lift ``t ->d s ->D* s'`` (``d < D``) through ``simp_D(t)``.

    The lower step is projected over the development of all degree-``D``
    redexes of ``t``; ``sigma`` is then projected over the residual
    development from ``s``, whose target is ``D``-normal, so the second
    projection is empty and ``s'`` reaches the same term.
    """
    if step.target != sigma.source:
        raise SourceMismatch("sigma must start at the target of the step")
    big = sigma.degree()
    if big is None:
        big = degree if degree is not None else max(step.degree + 1, maxdeg(step.source))
    elif degree is not None and degree != big:
        raise MixedDegrees(f"sigma has degree {big}, not {degree}")
    if step.degree >= big:
        raise ValueError("lifting needs a lower step: d < D")
    dev = MultiStep.of_degree(step.source, big).sequence(budget)
    lower, dev_over = project_seq(ReductionSeq(step.source, (step,)), dev, budget)
    join, rest = project_seq(dev_over, sigma, budget)
    assert not rest.steps, "residual development is not D-normal"
    return Lifting(dev, lower, join)


# ----------------------------------------------------------------------------
# Postponement of forgetful steps


def _map_position_back(forget_pos: Position, pos: Position) -> Position:
    """Position in ``src(F)`` of the node at ``pos`` in ``tgt(F)``."""
    n = len(forget_pos)
    if pos[:n] == forget_pos:
        return forget_pos + (Sel.WRAP_BODY,) + pos[n:]
    return pos


def _forget_marked(t_marked: Term, label) -> ForgetSeq:
    steps = []
    start = erase_marks(t_marked)
    cur = start
    while True:
        todo = marked_wrappers(t_marked, label)
        if not todo:
            return ForgetSeq(start, steps)
        pos = todo[0]
        f = ForgetStep(cur, pos)
        steps.append(f)
        t_marked = replace_at(t_marked, pos, subterm_at(t_marked, pos).body)
        cur = f.target


def retract_local(forget: ForgetStep, step: Step):
    """Swap ``t |> s -> s'`` into ``t -> t' |>* s'``.

    Returns the retracted step on ``forget.source`` and the forgetful
    sequence erasing every descendant of the forgotten wrapper.
    """
    if forget.target != step.source:
        raise SourceMismatch("the step must start at the target of the forgetful step")
    back = Step(forget.source, _map_position_back(forget.position, step.position), step.kind)
    marked = mark_wrapper(forget.source, forget.position, "F")
    after = replace_at(marked, back.position, contract(subterm_at(marked, back.position), step.kind))
    protraction = _forget_marked(after, "F")
    assert protraction.target == step.target, "postponement square does not close"
    return back, protraction


def _retract_step(step: Step, rho: ForgetSeq):
    """``(S\\rho, rho/S)`` for a single step ``S`` from the target of ``rho``."""
    if not rho.steps:
        return step, ForgetSeq(step.target)
    first, rest = rho.steps[0], ForgetSeq(rho.steps[0].target, rho.steps[1:])
    inner, rest_over = _retract_step(step, rest)
    back, first_over = retract_local(first, inner)
    return back, first_over + rest_over


def postpone_forget(rho: ForgetSeq, sigma: ReductionSeq):
    """Given ``rho : t |>* t'`` and ``sigma : t' ->* s'`` build
    ``sigma\\rho : t ->* s`` and ``rho/sigma : s |>* s'``."""
    if rho.target != sigma.source:
        raise SourceMismatch("sigma must start where rho ends")
    if not sigma.steps:
        return ReductionSeq(rho.source), rho
    first, rest = sigma.steps[0], ReductionSeq(sigma.steps[0].target, sigma.steps[1:])
    back, rho_over = _retract_step(first, rho)
    rest_back, rho_final = postpone_forget(rho_over, rest)
    return ReductionSeq(rho.source, (back,)) + rest_back, rho_final


def forgets_to(a: Term, b: Term) -> bool:
    """Decide ``a |>* b`` structurally, without enumerating forget steps."""
    memo = {}

    def go(a, b):
        if a == b:
            return True
        if a.weight <= b.weight:
            return False
        key = (a, b)
        hit = memo.get(key)
        if hit is None:
            if isinstance(a, Wrap):
                hit = go(a.body, b) or (
                    isinstance(b, Wrap) and go(a.body, b.body) and go(a.mem, b.mem)
                )
            elif isinstance(a, Abs):
                hit = isinstance(b, Abs) and a.binder_type == b.binder_type and go(a.body, b.body)
            elif isinstance(a, App):
                hit = isinstance(b, App) and go(a.fun, b.fun) and go(a.arg, b.arg)
            else:
                hit = False
            memo[key] = hit
        return hit

    return go(a, b)


# ----------------------------------------------------------------------------
# Reduction graphs


class ReductionGraph:
    """Terms reachable from a root by (degree-filtered) G-steps.

    Every G-step adds at least one wrapper, so the graph is always acyclic.
    """

    def __init__(self, root: Term, degree: Optional[int] = None, budget: int = DEFAULT_NODE_BUDGET):
        self.root = root
        self.degree = degree
        self.vertices = [root]
        self.index = {root: 0}
        self.edges = []  # (src id, dst id, Step)
        self.out = [[]]
        queue = deque([0])
        while queue:
            i = queue.popleft()
            t = self.vertices[i]
            steps = (
                enumerate_redexes(t) if degree is None else enumerate_steps_of_degree(t, degree)
            )
            for s in steps:
                tgt = s.target
                j = self.index.get(tgt)
                if j is None:
                    if len(self.vertices) >= budget:
                        raise BudgetExceeded(
                            f"reduction graph exceeds {budget} vertices", "reduction_graph"
                        )
                    j = len(self.vertices)
                    self.vertices.append(tgt)
                    self.index[tgt] = j
                    self.out.append([])
                    queue.append(j)
                self.edges.append((i, j, s))
                self.out[i].append(len(self.edges) - 1)

    def __len__(self):
        return len(self.vertices)

    def successors(self, i: int) -> list:
        return [self.edges[e][1] for e in self.out[i]]

    def topological_order(self) -> list:
        indeg = [0] * len(self.vertices)
        for _, j, _ in self.edges:
            indeg[j] += 1
        order, ready = [], deque(i for i, k in enumerate(indeg) if k == 0)
        while ready:
            i = ready.popleft()
            order.append(i)
            for j in self.successors(i):
                indeg[j] -= 1
                if indeg[j] == 0:
                    ready.append(j)
        if len(order) != len(self.vertices):
            raise AssertionError("reduction graph has a cycle")
        return order

    def is_acyclic(self) -> bool:
        try:
            self.topological_order()
        except AssertionError:
            return False
        return True

    def path_counts(self, start: int = 0) -> list:
        """Number of directed paths from ``start`` to every vertex (incl. empty)."""
        counts = [0] * len(self.vertices)
        counts[start] = 1
        for i in self.topological_order():
            if counts[i]:
                for j in self.successors(i):
                    counts[j] += counts[i]
        return counts

    def normal_forms(self) -> list:
        return [t for i, t in enumerate(self.vertices) if not self.out[i]]

    def sequences(self, start: int = 0, limit: int = DEFAULT_NODE_BUDGET) -> list:
        """Every reduction sequence from ``start``, as :class:`ReductionSeq`."""
        out = []

        def walk(i, steps):
            if len(out) >= limit:
                raise BudgetExceeded(f"more than {limit} sequences", "sequences")
            out.append(ReductionSeq(self.vertices[start], steps))
            for e in self.out[i]:
                _, j, s = self.edges[e]
                walk(j, steps + [s])

        walk(start, [])
        return out

    def to_json(self) -> dict:
        from .notation import show

        return {
            "vertices": [{"id": i, "term": show(t)} for i, t in enumerate(self.vertices)],
            "edges": [
                {"from": i, "to": j, "degree": s.degree, "position": format_position(s.position)}
                for i, j, s in self.edges
            ],
        }

    def to_dot(self) -> str:
        from .notation import show

        lines = ["digraph reductions {"]
        for i, t in enumerate(self.vertices):
            lines.append(f"  n{i} [label={json.dumps(show(t))}];")
        for i, j, s in self.edges:
            lines.append(f'  n{i} -> n{j} [label="{s.degree}"];')
        lines.append("}")
        return "\n".join(lines)


def reduction_graph(t: Term, degree: Optional[int] = None, budget: int = DEFAULT_NODE_BUDGET) -> ReductionGraph:
    if t.ty is None:
        raise Untypable("reduction graphs need a typable root")
    return ReductionGraph(t, degree, budget)
