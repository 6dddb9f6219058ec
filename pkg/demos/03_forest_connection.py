"""
Connecting a whole forest
=========================

Given k disjoint trees, insert k-1 bridges to form one tree of small
diameter. The connector tries every tree as the hub, joins all other
centers to the hub's center, and keeps the best result. That simple
rule stays within a factor of 4 of the true optimum.
"""

import random

from bridgeworks import connect_forest, gen_random_tree

rng = random.Random(7)
forest = [
    gen_random_tree(rng.randint(2, 6), seed=j, bbox=(60 * j, 0, 60 * j + 30, 30))
    for j in range(4)
]
for j, t in enumerate(forest):
    print(f"tree {j}: {t.n} vertices")

conn = connect_forest(forest)
print("\nhub tree :", conn.hub)
print("diameter :", float(conn.diameter))
for i, u, j, v in conn.bridges:
    print(f"bridge   : tree{i} vertex {u}  --  tree{j} vertex {v}")
