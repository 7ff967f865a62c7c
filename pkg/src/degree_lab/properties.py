"""Property suites run over generated terms and the worked-example corpus.

Each suite checks one family of claims case by case. A case is a term,
identified by its origin: an index into ``generate(cfg)`` or a corpus
entry name, so every failure can be replayed. Cases that exceed a
computation budget are counted as skips, never as passes.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

from . import corpus
from .errors import BudgetExceeded, DegreeLabError
from .generate import GenConfig, generate
from .measure import (
    MeasureContext,
    generalized_turing_measure,
    rightmost_highest_strategy,
    turing_measure,
    turing_measure_prime,
)
from .multiset import GREATER, MeasureComparator, k_times, pointwise_compare, pretty
from .notation import print_term
from .reduction import (
    ForgetSeq,
    ReductionSeq,
    contract,
    corresponding_step,
    enumerate_beta_redexes,
    enumerate_forget_steps,
    enumerate_redexes,
    enumerate_steps_of_degree,
    forgets_to,
    is_normal,
    lift,
    mark_redex,
    mark_wrapper,
    marked_redexes,
    marked_wrappers,
    postpone_forget,
    project_seq,
    reduction_graph,
    _forget_marked,
)
from .simplify import simp, simp_trace, simpfull, simpfull_trace, w_measure
from .syntax import (
    Term,
    Var,
    count_free,
    erase_marks,
    m_abstraction_degree,
    maxdeg,
    open_body,
    replace_at,
    split_m_abstraction,
    subst,
    subterm_at,
    typecheck,
)

# per-case budgets for the brute-force searches
GRAPH_BUDGET = 5_000
SAMPLES = 6


@dataclass(frozen=True)
class Failure:
    suite: str
    origin: str  # "gen:<index>" or "corpus:<name>"
    term: str
    step: Optional[str] = None
    before: Optional[str] = None
    after: Optional[str] = None
    detail: str = ""

    def to_json(self) -> dict:
        return {k: v for k, v in self.__dict__.items() if v is not None}


@dataclass
class PropertyReport:
    name: str
    cases: int = 0
    failures: list = field(default_factory=list)
    budget_skips: int = 0
    skipped: list = field(default_factory=list)
    checks: int = 0

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def skip_rate(self) -> float:
        return self.budget_skips / self.cases if self.cases else 0.0

    def merge(self, other: "PropertyReport") -> "PropertyReport":
        return PropertyReport(
            f"{self.name}+{other.name}" if self.name else other.name,
            self.cases + other.cases,
            self.failures + other.failures,
            self.budget_skips + other.budget_skips,
            self.skipped + other.skipped,
            self.checks + other.checks,
        )

    def summary(self) -> str:
        return (
            f"{self.name}: {self.cases} cases, {len(self.failures)} failures, "
            f"{self.budget_skips} budget skips, {self.checks} checks"
        )

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "cases": self.cases,
            "failures": [f.to_json() for f in self.failures],
            "budget_skips": self.budget_skips,
            "skipped": self.skipped,
            "checks": self.checks,
        }


class _Case:
    """What a suite sees: the term, an rng and a sink for failures."""

    def __init__(self, suite: str, origin: str, t: Term, seed: int, ctx: MeasureContext):
        self.suite = suite
        self.origin = origin
        self.t = t
        self.rng = random.Random(f"{seed}:{suite}:{origin}")
        self.ctx = ctx
        self.failures = []
        self.checks = 0

    def fail(self, detail: str, step=None, before=None, after=None, term: Optional[Term] = None):
        self.failures.append(
            Failure(
                self.suite,
                self.origin,
                print_term(self.t if term is None else term),
                None if step is None else str(step),
                None if before is None else _show(before),
                None if after is None else _show(after),
                detail,
            )
        )

    def check(self, cond: bool, detail: str, **kw):
        self.checks += 1
        if not cond:
            self.fail(detail, **kw)


def _show(x) -> str:
    if isinstance(x, str):
        return x
    return print_term(x) if isinstance(x, Term) else pretty(x)


# ----------------------------------------------------------------------------
# helpers


def _sample_sequences(graph, rng: random.Random, k: int = SAMPLES) -> list:
    """The empty sequence, every single step, and ``k`` random walks."""
    out = [ReductionSeq(graph.root)]
    out += [ReductionSeq(graph.root, (s,)) for _, _, s in (graph.edges[e] for e in graph.out[0])]
    for _ in range(k):
        i, steps = 0, []
        while graph.out[i] and rng.random() < 0.8:
            _, i, s = graph.edges[rng.choice(graph.out[i])]
            steps.append(s)
        out.append(ReductionSeq(graph.root, steps))
    seen, uniq = set(), []
    for seq in out:
        if seq not in seen:
            seen.add(seq)
            uniq.append(seq)
    return uniq


def _sample_forget_seqs(t: Term, rng: random.Random, k: int = SAMPLES) -> list:
    out = [ForgetSeq(t, (f,)) for f in enumerate_forget_steps(t)]
    for _ in range(k):
        cur, steps = t, []
        while True:
            options = enumerate_forget_steps(cur)
            if not options or rng.random() < 0.3:
                break
            f = rng.choice(options)
            steps.append(f)
            cur = f.target
        if steps:
            out.append(ForgetSeq(t, steps))
    return list(dict.fromkeys(out))


def _reducts(t: Term, rng: random.Random, k: int = 3) -> list:
    """``t`` and a few terms reachable from it by G-steps (these carry wrappers)."""
    out, cur = [t], t
    for _ in range(k):
        steps = enumerate_redexes(cur)
        if not steps:
            break
        cur = rng.choice(steps).target
        out.append(cur)
    return out


# ----------------------------------------------------------------------------
# suites


def suite_w_decrease(case: _Case):
    t = case.t
    if t.weight:
        return
    w = w_measure(t)
    for s in enumerate_beta_redexes(t):
        w2 = w_measure(s.target)
        case.check(w > w2, "W does not decrease", step=s, before=str(w), after=str(w2))


def suite_t_decrease(case: _Case):
    t = case.t
    if t.weight:
        return
    cmp = case.ctx.compare
    m = case.ctx.t_measure(t)
    for s in enumerate_beta_redexes(t):
        n = case.ctx.t_measure(s.target)
        r = cmp(m, n)
        case.check(r is GREATER, f"T^G comparison gave {r.value}", step=s, before=m, after=n)
        case.check(maxdeg(s.target) <= maxdeg(t), "maxdeg increased", step=s)


def suite_turing(case: _Case):
    """Turing's measures decrease along the rightmost-highest strategy."""
    t = case.t
    if t.weight or not enumerate_beta_redexes(t):
        return
    s = rightmost_highest_strategy(t)
    cmp = MeasureComparator()
    a, b = turing_measure(t), turing_measure(s.target)
    case.check(cmp(a, b) is GREATER, "T does not decrease", step=s, before=a, after=b)
    p, q = turing_measure_prime(t), turing_measure_prime(s.target)
    case.check(p > q, "T' does not decrease", step=s, before=str(p), after=str(q))


def suite_turing_counterexample(case: _Case):
    """The copying step leaves T_1 unchanged while T^G and W decrease."""
    if case.origin != "corpus:tur.M":
        return
    m, n = case.t, corpus.term("tur.N")
    steps = [s for s in enumerate_beta_redexes(m) if s.target == n]
    case.check(len(steps) == 1 and steps[0].degree == 1, "M ->1 N is not a single step")
    a, b = generalized_turing_measure(1, m), generalized_turing_measure(1, n)
    case.check(a == b, "T_1 changed along the copying step", before=a, after=b)
    ta, tb = case.ctx.t_measure(m), case.ctx.t_measure(n)
    case.check(case.ctx.compare(ta, tb) is GREATER, "T^G does not decrease", before=ta, after=tb)
    case.check(w_measure(m) > w_measure(n), "W does not decrease")


def suite_normalization(case: _Case):
    t = case.t
    u = simpfull(t)
    case.check(is_normal(u), "simpfull result has a redex", after=u)
    case.check(simpfull_trace(t).target == u, "simpfull not reached by its trace", after=u)
    graph = reduction_graph(t, None, GRAPH_BUDGET)
    nfs = graph.normal_forms()
    case.check(nfs == [u], f"graph normal forms {[str(v) for v in nfs]}", after=u)
    case.check(graph.is_acyclic(), "G reduction graph has a cycle")


def suite_degree_discipline(case: _Case):
    for t in _reducts(case.t, case.rng):
        ty = typecheck(t)
        redexes = enumerate_redexes(t)
        marked = t
        for s in redexes:
            marked = mark_redex(marked, s.position, "old")
        for s in redexes:
            after = replace_at(marked, s.position, contract(subterm_at(marked, s.position)))
            residual = set(marked_redexes(after, "old"))
            tgt = erase_marks(after)
            case.check(tgt == s.target, "marked contraction disagrees with the step", step=s, term=t)
            for r in enumerate_redexes(tgt):
                if r.position not in residual:
                    case.check(
                        r.degree < s.degree,
                        f"created redex of degree {r.degree} at {r}",
                        step=s,
                        term=t,
                    )
            case.check(typecheck(tgt) == ty, "type not preserved", step=s, term=t)
            case.check(tgt.weight > t.weight, "weight did not increase", step=s, term=t)
        top = maxdeg(t)
        for d in range(1, top + 1):
            u = simp(t, d)
            case.check(simp_trace(t, d).target == u, f"simp_{d} differs from the development", term=t)
            case.check(not enumerate_steps_of_degree(u, d), f"simp_{d} leaves a degree-{d} redex", term=t)
            if d == top:
                case.check(maxdeg(u) < d, f"maxdeg(simp_{d}) = {maxdeg(u)}", term=t)
            else:
                case.check(maxdeg(u) <= top, "simp raised maxdeg", term=t)


def suite_projection(case: _Case):
    t = case.t
    top = maxdeg(t)
    graphs = {d: reduction_graph(t, d, GRAPH_BUDGET) for d in range(1, top + 1)}
    samples = {d: _sample_sequences(g, case.rng) for d, g in graphs.items()}
    for d in graphs:
        for big in graphs:
            for sigma in samples[big]:
                images = {}
                for rho in samples[d]:
                    a, b = project_seq(rho, sigma)
                    tag = f"rho={rho} sigma={sigma}"
                    case.check(a.source == sigma.target and b.source == rho.target, "sources " + tag)
                    case.check(a.target == b.target, "square does not close " + tag)
                    case.check(a.degrees <= {d} and b.degrees <= {big}, "degrees " + tag)
                    if d != big:
                        case.check(len(a) >= len(rho), "|rho/sigma| < |rho| " + tag)
                        if a in images and images[a] != rho:
                            case.fail(f"rho/sigma not injective: {images[a]} and {rho}")
                        images[a] = rho
                    # brute force: the join is reachable on both sides
                    if len(rho) and len(sigma):
                        g1 = reduction_graph(rho.target, big, GRAPH_BUDGET)
                        g2 = reduction_graph(sigma.target, d, GRAPH_BUDGET)
                        case.check(
                            a.target in g1.index and a.target in g2.index,
                            "join not reachable by graph search " + tag,
                        )


def suite_lifting(case: _Case):
    t = case.t
    top = maxdeg(t)
    for big in range(2, top + 1):
        for d in range(1, big):
            for s in enumerate_steps_of_degree(t, d):
                graph = reduction_graph(s.target, big, GRAPH_BUDGET)
                for sigma in _sample_sequences(graph, case.rng):
                    w = lift(s, sigma, big)
                    tag = f"sigma={sigma}"
                    case.check(w.develop.target == simp(t, big), "development misses simp_D", step=s)
                    case.check(len(w.lower) >= 1 and w.lower.degrees == {d}, "lower part " + tag, step=s)
                    case.check(w.join.source == sigma.target, "join source " + tag, step=s)
                    final = reduction_graph(sigma.target, big, GRAPH_BUDGET)
                    nfs = final.normal_forms()
                    case.check(nfs == [w.target], "lifted target is not the D-normal form " + tag, step=s)


def suite_postponement(case: _Case):
    for t in _reducts(case.t, case.rng)[1:]:
        for rho in _sample_forget_seqs(t, case.rng):
            mid = rho.target
            for d in range(1, maxdeg(mid) + 1):
                graph = reduction_graph(mid, d, GRAPH_BUDGET)
                images = {}
                for sigma in _sample_sequences(graph, case.rng):
                    back, prot = postpone_forget(rho, sigma)
                    tag = f"rho={rho} sigma={sigma}"
                    case.check(back.source == t, "retraction source " + tag, term=t)
                    case.check(len(back) == len(sigma), "retraction length " + tag, term=t)
                    case.check(back.degrees <= {d}, "retraction degree " + tag, term=t)
                    case.check(prot.source == back.target, "protraction source " + tag, term=t)
                    case.check(prot.target == sigma.target, "factorization target " + tag, term=t)
                    if back in images and images[back] != sigma:
                        case.fail(f"retraction not injective: {images[back]} and {sigma}", term=t)
                    images[back] = sigma
                    # brute force
                    case.check(forgets_to(back.target, sigma.target), "target not forgettable " + tag, term=t)
                    if len(sigma):
                        g = reduction_graph(t, d, GRAPH_BUDGET)
                        case.check(back.target in g.index, "retraction target unreachable " + tag, term=t)


def suite_termination(case: _Case):
    for t in _reducts(case.t, case.rng):
        for d in range(1, maxdeg(t) + 1):
            g = reduction_graph(t, d, GRAPH_BUDGET)
            case.check(g.is_acyclic(), f"->{d} graph has a cycle", term=t)
            for i, j, s in g.edges:
                case.check(g.vertices[j].weight > g.vertices[i].weight, "weight not increasing", step=s, term=t)
            for u in g.normal_forms():
                case.check(is_normal(u, d), f"graph sink is not {d}-normal", term=t)


def suite_forget(case: _Case):
    t0 = case.t
    if not t0.weight:
        # reduce/forget: the G-step forgets to the beta-step in one step
        for s in enumerate_beta_redexes(t0):
            g = corresponding_step(s)
            fs = [f for f in enumerate_forget_steps(g.target) if f.target == s.target]
            case.check(len(fs) >= 1, "G-step target does not forget to beta target", step=s)
    for t in _reducts(t0, case.rng)[1:]:
        full = simpfull(t)
        for f in enumerate_forget_steps(t):
            s = f.target
            # local commutation with every G-step
            for r in enumerate_redexes(t):
                marked = mark_wrapper(t, f.position, "F")
                after = replace_at(marked, r.position, contract(subterm_at(marked, r.position)))
                case.check(bool(marked_wrappers(after, "F")), "wrapper erased by a step", step=r, term=t)
                s2 = _forget_marked(after, "F").target
                ok = s2 == s or any(x.target == s2 for x in enumerate_redexes(s))
                case.check(ok, "local commutation fails", step=r, term=t)
            case.check(forgets_to(full, simpfull(s)) and full != simpfull(s), "simpfull not forgettable", term=t)
        if is_normal(t):
            for f in enumerate_forget_steps(t):
                case.check(is_normal(f.target), "forgetting created a redex", term=t)
        for r in enumerate_redexes(t):
            case.check(simpfull(r.target) == full, "simpfull changed along a step", step=r, term=t)


def suite_measure_laws(case: _Case):
    ctx, cmp = case.ctx, case.ctx.compare
    for t in _reducts(case.t, case.rng, 2):
        top = maxdeg(t)
        for s in enumerate_redexes(t):
            u, big = s.target, s.degree
            for d in range(0, big):
                a, b = ctx.ame(d, t), ctx.ame(d, u)
                case.check(cmp(a, b).is_le, f"high/increase ame({d})", step=s, before=a, after=b, term=t)
                if d >= 1:
                    a, b = ctx.bme(d, t), ctx.bme(d, u)
                    case.check(cmp(a, b).is_le, f"high/increase bme({d})", step=s, before=a, after=b, term=t)
            for j in range(big, top + 1):
                a, b = ctx.ame(j, t), ctx.ame(j, u)
                case.check(cmp(a, b) is GREATER, f"low/decrease ame({j})", step=s, before=a, after=b, term=t)
                a, b = ctx.bme(j, t), ctx.bme(j, u)
                case.check(cmp(a, b) is GREATER, f"low/decrease bme({j})", step=s, before=a, after=b, term=t)
                a, b = ctx.eme(j, t, t), ctx.eme(j, u, t)
                case.check(pointwise_compare(a, b, cmp), f"pointwise eme({j})", step=s, term=t)
            # measure of a substitution
            red = subterm_at(t, s.position)
            m = split_m_abstraction(red.fun)
            x = Var("_sub", m.binder_type)
            body = open_body(m.abs, x.name)
            k = count_free(body, x.name)
            for d in range(1, top + 1):
                a, b = ctx.eme(d, t, body), ctx.eme(d, t, subst(body, x, red.arg))
                case.check(cmp(a, b).is_le, f"substitution eme({d})", step=s, before=a, after=b, term=t)
                if m_abstraction_degree(red.arg) != d:
                    c = a + k_times(k, ctx.eme(d, t, red.arg))
                    case.check(b == c, f"substitution identity eme({d})", step=s, before=c, after=b, term=t)
        for f in enumerate_forget_steps(t):
            for d in range(0, top + 1):
                a, b = ctx.ame(d, t), ctx.ame(d, f.target)
                case.check(cmp(a, b).is_ge, f"forget/decrease ame({d})", step=f, before=a, after=b, term=t)


SUITES = {
    "w-decrease": suite_w_decrease,
    "t-decrease": suite_t_decrease,
    "turing": suite_turing,
    "turing-counterexample": suite_turing_counterexample,
    "normalization": suite_normalization,
    "degree-discipline": suite_degree_discipline,
    "projection": suite_projection,
    "lifting": suite_lifting,
    "postponement": suite_postponement,
    "termination": suite_termination,
    "forget": suite_forget,
    "measure-laws": suite_measure_laws,
}
# suites that only make sense on the fixed corpus
CORPUS_ONLY = {"turing-counterexample"}


def cases(cfg: Optional[GenConfig], use_corpus: bool = True) -> list:
    """``(origin, term)`` pairs: the corpus first, then generated terms."""
    out = []
    if use_corpus:
        out += [(f"corpus:{k}", t) for k, t in corpus.load_corpus().items()]
    if cfg is not None and cfg.count:
        out += [(f"gen:{i}", t) for i, t in enumerate(generate(cfg))]
    return out


def run_suite(
    name: str,
    terms: Iterable,
    seed: int = 0,
    ctx: Optional[MeasureContext] = None,
    progress: Optional[Callable] = None,
) -> PropertyReport:
    fn = SUITES[name]
    ctx = ctx or MeasureContext()
    report = PropertyReport(name)
    for origin, t in terms:
        if name in CORPUS_ONLY and origin != "corpus:tur.M":
            continue
        case = _Case(name, origin, t, seed, ctx)
        report.cases += 1
        try:
            fn(case)
        except BudgetExceeded as e:
            report.budget_skips += 1
            report.skipped.append(f"{origin}: {e}")
            continue
        except DegreeLabError as e:
            case.fail(f"{type(e).__name__}: {e}")
        report.checks += case.checks
        report.failures.extend(case.failures)
        if progress:
            progress(report)
    return report


def run_properties(
    cfg: Optional[GenConfig] = None,
    suite: str = "all",
    use_corpus: bool = True,
    ctx: Optional[MeasureContext] = None,
) -> PropertyReport:
    """Run one suite (or ``"all"``) over the corpus and ``generate(cfg)``."""
    names = list(SUITES) if suite == "all" else [suite]
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise KeyError(f"unknown suite {unknown[0]!r}; choose from {', '.join(SUITES)}")
    terms = cases(cfg, use_corpus)
    seed = cfg.seed if cfg else 0
    reports = [run_suite(n, terms, seed, ctx) for n in names]
    if len(reports) == 1:
        return reports[0]
    total = PropertyReport(suite)
    for r in reports:
        total = total.merge(r)
    total.name = suite
    return total
