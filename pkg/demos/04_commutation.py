"""Projection, lifting and postponement of forgetful steps."""

from degree_lab import parse
from degree_lab.notation import show
from degree_lab.reduction import (
    ForgetSeq,
    ReductionSeq,
    enumerate_forget_steps,
    enumerate_redexes,
    enumerate_steps_of_degree,
    lift,
    postpone_forget,
    project_seq,
)


def trace(seq):
    return " ".join(f"-{s.degree}->" for s in seq) or "(empty)"


# two degree-1 steps from one source, closed by projection
t1 = parse(r"((\y:0. w) ((\y:0. w) z))[\y:0. w]")
r, s = enumerate_redexes(t1)
a, b = project_seq(ReductionSeq(t1, [r]), ReductionSeq(t1, [s]))
print("rho/sigma:", trace(a), " sigma/rho:", trace(b), " join:", show(a.target))

# the degree-1 step copies the degree-2 redex in its argument: twice in the body, once in memory
m = parse(r"(\x:0. y:0->0->0 x x) ((\x:0->0. x z) f:0->0)")
outer, inner = enumerate_redexes(m)
a, b = project_seq(ReductionSeq(m, [inner]), ReductionSeq(m, [outer]))
print("inner/outer:", trace(a), f" ({len(a)} copies to contract)")

# lifting: close a lower step against a higher sequence
(low,) = enumerate_steps_of_degree(m, 1)
high = enumerate_steps_of_degree(low.target, 2)[:1]
w = lift(low, ReductionSeq(low.target, high))
print("lift: develop", trace(w.develop), " lower", trace(w.lower), " join", trace(w.join))
print("      meets at", show(w.target))

# postponement: forget a memory first, reduce after; or reduce first, forget after
t = parse(r"(\x:0. x)[s] u")
(f,) = enumerate_forget_steps(t)
(step,) = enumerate_redexes(f.target)
back, prot = postpone_forget(ForgetSeq(t, [f]), ReductionSeq(f.target, [step]))
print("postpone:", show(t), trace(back), show(back.target), "then forget", len(prot), "->", show(prot.target))
