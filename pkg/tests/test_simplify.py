import pytest
from hypothesis import given, settings

from degree_lab.corpus import term as C
from degree_lab.errors import DegreeZero, NotPure
from degree_lab.notation import parse
from degree_lab.reduction import (
    MultiStep,
    enumerate_beta_redexes,
    enumerate_forget_steps,
    enumerate_redexes,
    is_normal,
)
from degree_lab.simplify import simp, simp_trace, simpfull, simpfull_trace, w_measure
from degree_lab.syntax import maxdeg

from .oracles import brute_normal_forms
from .strategies import g_terms, pure_terms


def test_simp_examples():
    m = parse(r"(\x:0->0. x (x y)) (\z:0. w)")
    assert simp(m, 2) == parse(r"((\z:0. w) ((\z:0. w) y))[\z:0. w]")
    n = parse(r"(\z:0. w) ((\z:0. w) y)")
    assert simp(n, 1) == parse("w[w[y]]")
    assert simp(parse("x"), 3) == parse("x")
    with pytest.raises(DegreeZero):
        simp(m, 0)


def test_simp_keeps_memory_outside_fresh_wrapper():
    assert simp(parse(r"(\x:0. y)[u] z"), 1) == parse("y[z][u]")


def test_simpfull_examples():
    m = parse(r"(\x:0->0. x (x y)) (\z:0. w)")
    assert simpfull(m) == parse(r"w[w[y]][\z:0. w]")
    assert simpfull(m).weight == 3
    assert simpfull(C("fs.N")).weight == 2
    nf = parse(r"\x:0. y x")
    assert simpfull(nf) == nf


def test_w_measure_examples():
    assert w_measure(C("fs.M")) == 3 > w_measure(C("fs.N")) == 2
    assert simpfull(C("w4.M")) == C("w4.fullM")
    assert simpfull(C("w4.N")) == C("w4.fullN")
    assert w_measure(C("w4.M")) == 4 > w_measure(C("w4.N")) == 1
    assert w_measure(parse(r"\x:0. x")) == 0
    with pytest.raises(NotPure):
        w_measure(parse("x[y]"))


def test_simpfull_of_reduction_example():
    t = C("ex22.t")
    u = simpfull(t)
    assert is_normal(u)
    seq = simpfull_trace(t)
    assert seq.source == t and seq.target == u
    nfs = brute_normal_forms(t, lambda v: [s.target for s in enumerate_redexes(v)])
    assert nfs == [u] == [C("ex22.s4")]


def test_traces():
    m = C("fs.M")
    seq = simp_trace(m, 2)
    assert seq.target == C("fs.simp2M") and seq.degrees == {2}
    assert simpfull_trace(m).target == C("fs.fullM")
    with pytest.raises(DegreeZero):
        simp_trace(m, 0)


@settings(max_examples=80, deadline=None)
@given(g_terms(max_size=10, max_degree=3))
def test_simp_agrees_with_development(t):
    for d in range(1, maxdeg(t) + 1):
        assert MultiStep.of_degree(t, d).target == simp(t, d)
        assert simp_trace(t, d).target == simp(t, d)


@settings(max_examples=80, deadline=None)
@given(g_terms(max_size=10, max_degree=3))
def test_degree_collapse(t):
    d = maxdeg(t)
    if d:
        assert maxdeg(simp(t, d)) < d


@settings(max_examples=80, deadline=None)
@given(g_terms(max_size=10, max_degree=3))
def test_simpfull_normal_and_step_invariant(t):
    u = simpfull(t)
    assert is_normal(u)
    for s in enumerate_redexes(t):
        assert simpfull(s.target) == u


@settings(max_examples=60, deadline=None)
@given(g_terms(max_size=10, max_degree=2))
def test_forget_monotone(t):
    u = simpfull(t)
    for f in enumerate_forget_steps(t):
        assert f.target.weight < t.weight
        v = simpfull(f.target)
        assert v.weight < u.weight


@settings(max_examples=150, deadline=None)
@given(pure_terms(max_size=12, max_degree=3))
def test_w_decreases(m):
    w = w_measure(m)
    for s in enumerate_beta_redexes(m):
        assert w_measure(s.target) < w
