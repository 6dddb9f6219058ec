"""
Two vertex-disjoint bridges
===========================

With two new edges the constrained diameter counts every cross pair and
any same-tree pair whose route through the bridges beats the old
in-tree route. Optimal bridge pairs sometimes cross each other in the
plane, which a single bridge can never do.
"""

from fractions import Fraction

from bridgeworks import (
    WeightedTree,
    brute_force_twin,
    crossing_optimum_instance,
    evaluate_constrained_diameter,
    solve_twin,
)

t1 = WeightedTree([(0, 0), (7, 0), (14, 0), (7, 6)], [(0, 1), (1, 2), (1, 3)])
t2 = WeightedTree([(30, 0), (36, 0), (33, 5)], [(0, 1), (0, 2)])

tw = solve_twin(t1, t2)
print("bridges       :", tw.bridge1, tw.bridge2)
print("value         :", tw.value)
print("dominant case :", tw.dominant_case)
print("witness       :", tw.witness)
print("intersecting  :", tw.intersecting)

# brute force re-scores every disjoint bridge pair the same way
bf = brute_force_twin(t1, t2)
print("brute force   :", bf.bridge1, bf.bridge2, "value", bf.value)

# any candidate pair can be re-scored directly
ev = evaluate_constrained_diameter(t1, t2, (0, 0), (2, 1))
print("\nmanual pair (0,0)+(2,1):", ev.value, "case", ev.dominant_case)

# a layout where the two optimal bridges must cross: the straight
# connections b-c and d-a beat the parallel ones
t1, t2 = crossing_optimum_instance(eps=Fraction(1, 100))
tw = solve_twin(t1, t2)
print("\ncrossing layout:")
print("bridges      :", tw.bridge1, tw.bridge2)
print("value        :", tw.value)
print("intersecting :", tw.intersecting)
