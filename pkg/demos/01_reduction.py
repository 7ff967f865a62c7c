"""Reduction with memories: every contraction keeps its argument in a wrapper."""

from degree_lab import enumerate_redexes, parse
from degree_lab.notation import show
from degree_lab.syntax import maxdeg

t = parse(r"(\x:0->0. \y:0. y[x (x z)]) (\x:0. x) w")
print("t      =", show(t), "  maxdeg", maxdeg(t), "  type", t.ty)

# leftmost-outermost reduction to normal form, printing each step's degree
while True:
    steps = enumerate_redexes(t)
    if not steps:
        break
    s = steps[0]
    t = s.target
    print(f"  -{s.degree}->", show(t))
print("weight of the normal form:", t.weight)  # six wrappers

# the plain beta-step drops the argument; the g-step remembers it
for text in [r"(\x:0. y) z", r"(\x:0. y)[u] z"]:
    (s,) = enumerate_redexes(parse(text))
    print(text, " -g->", show(s.target))
