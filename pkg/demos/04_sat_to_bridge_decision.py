"""
From clause satisfaction to a bridge decision
=============================================

A One-in-Three SAT formula turns into two families of ternary vectors
(one per half of the variables), and those vectors into two weighted
trees whose leaves sit at depths encoding the vectors. The formula is
satisfiable exactly when some leaf pair realizes the decision target,
which happens exactly when two vectors are digit-wise complementary.
"""

from bridgeworks import one_bridge_decide
from bridgeworks.reductions import (
    OneInThreeSatInstance,
    cov_brute_force,
    cov_to_one_bridge,
    one_in_three_sat_brute_force,
    sat_to_cov,
    verify_one_bridge_iff,
)

sat_yes = OneInThreeSatInstance(4, ((1, 2, 3), (-1, 2, 4)))
sat_no = OneInThreeSatInstance(4, ((1, 2, 3), (-1, -2, -3), (1, 2, 4)))

for inst in (sat_yes, sat_no):
    print("formula:", inst.clauses)
    assignment = one_in_three_sat_brute_force(inst)
    print("  exactly-one assignment:", assignment)

    cov = sat_to_cov(inst)
    print("  vector families:", len(cov.vectors_a), "x", len(cov.vectors_b),
          "digits", cov.m)
    print("  complementary pair:", cov_brute_force(cov))

    t1, t2, params = cov_to_one_bridge(cov)
    print("  trees:", t1.n, "and", t2.n, "vertices")
    print("  targets: width", params.c1, "total", params.c2)
    witness = one_bridge_decide(t1, t2, params.c1, params.c2)
    print("  bridge decision:", witness)

    rep = verify_one_bridge_iff(inst)
    print("  three-way agreement:", rep.consistent, "\n")
