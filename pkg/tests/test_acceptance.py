"""Acceptance criteria 1-11, one test each.

Every test prints a single ``ACCEPTANCE <n> PASS|FAIL`` line (visible in
``pytest -v`` output) and enforces the stated time limit.
"""

import random
import time
from itertools import combinations_with_replacement

import pytest

from degree_lab.corpus import term as C
from degree_lab.generate import GenConfig
from degree_lab.measure import MeasureContext, generalized_turing_measure, t_measure
from degree_lab.multiset import GREATER, Multiset, compare
from degree_lab.notation import parse
from degree_lab.properties import cases, run_suite
from degree_lab.reduction import ReductionSeq, enumerate_beta_redexes, enumerate_redexes, reduction_graph
from degree_lab.simplify import simp, simpfull, w_measure
from degree_lab.syntax import maxdeg

from .nested import nesting, random_pair
from .oracles import oracle_compare


@pytest.fixture
def criterion(capsys):
    """Run a check, print its PASS/FAIL line and enforce the time limit."""

    def run(n, title, limit, fn):
        start = time.perf_counter()
        err = None
        try:
            detail = fn()
        except AssertionError as e:
            err, detail = e, str(e).splitlines()[0] if str(e) else "assertion failed"
        elapsed = time.perf_counter() - start
        if err is None and elapsed >= limit:
            err = AssertionError(f"took {elapsed:.2f}s, limit {limit}s")
            detail = str(err)
        status = "PASS" if err is None else "FAIL"
        with capsys.disabled():
            print(f"\nACCEPTANCE {n:>2} {status}  {title} ({elapsed:.2f}s) {detail or ''}")
        if err is not None:
            raise err

    return run


def _suites(names, cfg):
    terms = cases(cfg, use_corpus=True)
    reports = [run_suite(n, terms, cfg.seed) for n in names]
    for r in reports:
        assert r.ok, r.summary() + " | " + "; ".join(f.detail for f in r.failures[:3])
        assert r.budget_skips == 0, r.summary()
    return "; ".join(r.summary() for r in reports)


def test_criterion_01_reduction_example(criterion):
    def check():
        names = ["ex22.t", "ex22.s1", "ex22.s2", "ex22.s3", "ex22.s4"]
        t = parse(r"(\x:0->0. \y:0. y[x (x z)]) (\x:0. x) w")
        assert t == C("ex22.t")
        steps = []
        for a, b in zip(names, names[1:]):
            (s,) = [s for s in enumerate_redexes(C(a)) if s.target == C(b)]
            steps.append(s)
        seq = ReductionSeq(t, steps)
        assert [s.degree for s in seq] == [2, 1, 1, 1]
        assert seq.target.weight == 6
        assert maxdeg(t) == 2
        return "degrees [2,1,1,1], weight 6"

    criterion(1, "reduction example", 1.0, check)


def test_criterion_02_full_simplification(criterion):
    def check():
        m = parse(r"(\x:0->0. x (x y)) (\z:0. w)")
        n = parse(r"(\z:0. w) ((\z:0. w) y)")
        assert simp(m, 2) == parse(r"((\z:0. w) ((\z:0. w) y))[\z:0. w]")
        assert simpfull(m) == parse(r"w[w[y]][\z:0. w]") and simpfull(m).weight == 3
        assert simpfull(n) == parse("w[w[y]]") and simpfull(n).weight == 2
        assert w_measure(m) == 3 > w_measure(n) == 2
        return "W(M)=3 > W(N)=2"

    criterion(2, "full simplification example", 1.0, check)


def test_criterion_03_w_example(criterion):
    def check():
        m = parse(r"(\x:0. y:0->0->0 x x) ((\x:0->0. x z) f:0->0)")
        n = parse(r"(\x:0. y:0->0->0 x x) (f:0->0 z)")
        assert n in [s.target for s in enumerate_beta_redexes(m)]
        assert simpfull(m) == parse(r"(y:0->0->0 (f:0->0 z)[f] (f z)[f])[(f z)[f]]")
        assert simpfull(n) == parse(r"(y:0->0->0 (f:0->0 z) (f z))[f z]")
        assert w_measure(m) == 4 > w_measure(n) == 1
        return "W(M)=4 > W(N)=1"

    criterion(3, "W-measure example", 1.0, check)


def test_criterion_04_diagram(criterion):
    def check():
        t = [C(f"dia.t{i}") for i in range(5)]
        assert t[0] == parse(r"(\x:0->0. x (x z)) (\y:0. w)")
        assert t[4] == parse(r"w[w[z]][\y:0. w]")
        g = reduction_graph(t[0])
        assert set(g.vertices) == set(t) and len(g.vertices) == 5
        edges = {(t.index(g.vertices[i]), t.index(g.vertices[j]), s.degree) for i, j, s in g.edges}
        assert edges == {(0, 1, 2), (1, 2, 1), (1, 3, 1), (2, 4, 1), (3, 4, 1)}
        assert len(g.edges) == 5

        ctx = MeasureContext()
        A, B = ctx.ame, ctx.bme
        empty = Multiset()
        assert A(0, t[1]) == A(0, t[2]) == A(0, t[3]) == A(0, t[4]) == empty
        assert A(1, t[4]) == A(2, t[4]) == empty
        assert A(2, t[0]) == Multiset([(2, B(2, t[0]))])
        assert B(2, t[0]) == Multiset([A(1, t[0]), A(1, t[1])])
        assert A(2, t[1]) == A(1, t[1]) == Multiset([(1, B(1, t[1]))] * 2)
        # five sequences leave t1: the two paths to t4 are distinct
        assert ctx.sequence_count(1, t[1]) == 5
        assert B(1, t[1]) == Multiset([A(0, t[1]), A(0, t[2]), A(0, t[3]), A(0, t[4]), A(0, t[4])])
        for i in (2, 3):
            assert A(2, t[i]) == A(1, t[i]) == Multiset([(1, B(1, t[i]))])
            assert B(1, t[i]) == Multiset([A(0, t[i]), A(0, t[4])])
        a = [A(2, x) for x in t]
        for i, j in [(0, 1), (1, 2), (2, 4), (1, 3), (3, 4)]:
            assert ctx.compare(a[i], a[j]) is GREATER, (i, j)
        return "5 vertices, 5 edges, |B1(t1)|=5, chain Greater"

    criterion(4, "measure diagram", 1.0, check)


def test_criterion_05_turing_counterexample(criterion):
    def check():
        m = parse(r"(\x:0. y:0->0->0 x x) ((\z:0. z) w)")
        n = parse(r"y:0->0->0 ((\z:0. z) w) ((\z:0. z) w)")
        assert n in [s.target for s in enumerate_beta_redexes(m)]
        t1m, t1n = generalized_turing_measure(1, m), generalized_turing_measure(1, n)
        assert t1m == t1n == Multiset([(1, Multiset()), (1, Multiset())])
        assert compare(t_measure(m), t_measure(n)) is GREATER
        assert w_measure(m) > w_measure(n)
        return "T_1(M)=T_1(N); T^G and W decrease"

    criterion(5, "generalized Turing counterexample", 1.0, check)


def test_criterion_06_w_decreases(criterion):
    cfg = GenConfig(seed=2024, count=500, max_size=12, max_degree=3, min_redexes=1)

    def check():
        report = run_suite("w-decrease", cases(cfg, use_corpus=False), cfg.seed)
        assert report.cases >= 500
        assert report.ok, "; ".join(f.detail for f in report.failures[:3])
        assert report.budget_skips == 0
        return report.summary()

    criterion(6, "W decreases along beta", 120.0, check)


def test_criterion_07_t_decreases(criterion):
    cfg = GenConfig(seed=2024, count=200, max_size=10, max_degree=2, min_redexes=1)

    def check():
        ctx = MeasureContext(sequence_budget=10**6)
        report = run_suite("t-decrease", cases(cfg, use_corpus=False), cfg.seed, ctx)
        assert report.cases >= 200
        assert report.ok, "; ".join(f.detail for f in report.failures[:3])
        assert report.skip_rate < 0.05, f"skip rate {report.skip_rate:.1%}"
        return f"{report.summary()}, skip rate {report.skip_rate:.1%}"

    criterion(7, "T^G decreases along beta", 300.0, check)


def test_criterion_08_normalization(criterion):
    cfg = GenConfig(seed=2024, count=300, max_size=12, max_degree=3)
    criterion(8, "normalization and confluence", 300.0, lambda: _suites(["normalization"], cfg))


def test_criterion_09_degree_discipline(criterion):
    cfg = GenConfig(seed=2024, count=300, max_size=12, max_degree=3)
    criterion(9, "degree discipline", 300.0, lambda: _suites(["degree-discipline"], cfg))


def test_criterion_10_commutation(criterion):
    # size <= 10 keeps the brute-force graph searches inside the suites exhaustive
    cfg = GenConfig(seed=2024, count=300, max_size=10, max_degree=3, min_redexes=1)
    names = ["projection", "lifting", "postponement", "termination"]
    criterion(10, "projection, lifting, postponement, termination", 300.0, lambda: _suites(names, cfg))


def test_criterion_11_comparator_oracle(criterion):
    def check():
        pool = [Multiset(c) for k in range(5) for c in combinations_with_replacement(range(4), k)]
        flat = 0
        for m in pool:
            for n in pool:
                assert compare(m, n).value == oracle_compare(m, n), (m, n)
                flat += 1
        rng = random.Random(2024)
        nested = 0
        while nested < 1000:
            a, b = random_pair(rng)
            assert nesting(a) <= 4 and nesting(b) <= 4
            assert compare(a, b).value == oracle_compare(a, b), (a, b)
            nested += 1
        return f"{flat} flat pairs, {nested} nested pairs agree"

    criterion(11, "multiset comparator against closure oracle", 600.0, check)
