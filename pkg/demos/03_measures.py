"""The nested-multiset measure on a small reduction diagram."""

from degree_lab import MeasureContext, parse, reduction_graph
from degree_lab.multiset import pretty
from degree_lab.notation import show
from degree_lab.measure import generalized_turing_measure, t_measure
from degree_lab.simplify import w_measure

t0 = parse(r"(\x:0->0. x (x z)) (\y:0. w)")
g = reduction_graph(t0)
ctx = MeasureContext()
for i, v in enumerate(g.vertices):
    print(f"t{i} = {show(v):40s} A2 = {pretty(ctx.ame(2, v))}")
for i, j, s in g.edges:
    print(f"t{i} -{s.degree}-> t{j}: {ctx.compare(ctx.ame(2, g.vertices[i]), ctx.ame(2, g.vertices[j])).value}")

# path counting: two different sequences reach the same normal form
t1 = g.vertices[1]
print("sequences from t1 at degree 1:", ctx.sequence_count(1, t1))

# Turing's generalized measure stalls where the nested measure does not
m = parse(r"(\x:0. y:0->0->0 x x) ((\z:0. z) w)")
n = parse(r"y:0->0->0 ((\z:0. z) w) ((\z:0. z) w)")
print("T_1(M) =", pretty(generalized_turing_measure(1, m)), " T_1(N) =", pretty(generalized_turing_measure(1, n)))
print("T^G(M) =", pretty(t_measure(m)), " T^G(N) =", pretty(t_measure(n)))
print("W(M) =", w_measure(m), " W(N) =", w_measure(n))
print()
print(g.to_dot())
