"""Simplification by degree and the W-measure."""

from degree_lab import parse, simp, simpfull, w_measure
from degree_lab.notation import show
from degree_lab.reduction import enumerate_beta_redexes

m = parse(r"(\x:0->0. x (x y)) (\z:0. w)")
print("M            =", show(m))
print("simp_2(M)    =", show(simp(m, 2)))
print("simpfull(M)  =", show(simpfull(m)), " W =", w_measure(m))

# every beta-step strictly lowers W
for s in enumerate_beta_redexes(m):
    n = s.target
    print("M ->b N      =", show(n), " W =", w_measure(n))

m = parse(r"(\x:0. y:0->0->0 x x) ((\x:0->0. x z) f:0->0)")
print()
print("M            =", show(m), " W =", w_measure(m))
for s in enumerate_beta_redexes(m):
    print(f"  step at degree {s.degree}: W drops to", w_measure(s.target))
