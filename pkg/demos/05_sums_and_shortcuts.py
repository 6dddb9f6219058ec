"""
Integer sums and planar shortcuts
=================================

Two more executable reductions. The first packs clause digits into big
integers so that a formula is satisfiable exactly when three of them
sum to zero; base 10 with at most six addends per column keeps every
column carry-free. The second replaces the vertices of a cubic planar
graph by small triangle gadgets so that a budget of k shortcuts fixes
all broken pairs exactly when the graph has a vertex cover of size k.
"""

from bridgeworks.reductions import (
    OneInThreeSatInstance,
    carry_overflow_example,
    k4_embedding,
    rdbp_minimum_budget,
    repunit,
    sat_to_threesum,
    threesum_brute_force,
    vc_to_rdbp,
    verify_rdbp_iff,
    vertex_cover_brute_force,
)

inst = OneInThreeSatInstance(4, ((1, 2, 3), (-1, 2, 4)))
ts = sat_to_threesum(inst)
print("integer set size:", len(ts.integers), "digits:", ts.n_digits)
print("target element  :", -repunit(inst.m + 2))
triple = threesum_brute_force(ts.integers)
print("zero triple     :", triple, "->", [ts.integers[i] for i in triple])

# why base 10: with seven addends a column of 2s already carries
ex = carry_overflow_example()
print("\ncarry demo with k =", ex["k"])
print("addends", ex["addends"], "sum", ex["sum"], "repunit", ex["repunit"])
print("column collision:", ex["collides"])

# shortcut budget on the complete graph on four vertices
points, edges = k4_embedding()
cover = vertex_cover_brute_force(len(points), edges)
print("\nvertex cover of K4:", cover)

inst = vc_to_rdbp(points, edges, budget=len(cover))
print("gadget graph:", len(inst.graph.points), "vertices,", len(inst.graph.edges), "edges")
k, subset = rdbp_minimum_budget(inst)
print("minimum shortcut budget:", k, "using gadgets of", subset)

rep = verify_rdbp_iff(points, edges)
print("budget == cover and subsets biject:", rep.consistent)
