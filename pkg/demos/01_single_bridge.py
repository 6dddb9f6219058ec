"""
Inserting one bridge between two trees
======================================

Two disjoint geometric trees, one new edge between them. The objective
is the longest shortest path that actually uses the new edge, so a good
bridge balances its own length against the eccentricities of its
endpoints.
"""

from fractions import Fraction

from bridgeworks import (
    WeightedTree,
    approx_greedy,
    greedy_tightness_instance,
    solve_exact,
)

# two paths on the x axis; integer coordinates keep every distance exact
t1 = WeightedTree([(0, 0), (6, 0), (11, 0)], [(0, 1), (1, 2)])
t2 = WeightedTree([(20, 0), (26, 0), (31, 0)], [(0, 1), (1, 2)])

sol = solve_exact(t1, t2)
print("optimal bridge:", (sol.p, sol.q))
print("bridge length :", sol.bridge_length)
print("value         :", sol.value)
print("witness pair  :", sol.witness)
print("backend       :", sol.backend)

# the greedy alternative just connects the bichromatic closest pair
g = approx_greedy(t1, t2)
print("\ngreedy bridge :", (g.p, g.q), "value", g.value)
print("ratio         :", Fraction(g.value, sol.value))

# the ratio can approach 2 but never reach it: two long segments whose
# near ends almost touch, with the short gap slightly cheaper than the
# gap between the far ends
t1, t2 = greedy_tightness_instance(1000, Fraction(1, 100))
exact = solve_exact(t1, t2)
greedy = approx_greedy(t1, t2)
print("\ntight family, n = 1000:")
print("exact ", exact.value)
print("greedy", greedy.value)
print("ratio ", float(Fraction(greedy.value, exact.value)))
