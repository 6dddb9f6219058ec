"""Twin-bridge evaluator and solver tests.

The reference evaluator here builds the merged graph (both trees plus the
two bridges) and runs all-sources Dijkstra, applying the same pair
qualification rule: cross pairs always count, same-tree pairs count only
when the route using bridges is strictly shorter than the in-tree route.
"""

from __future__ import annotations

import heapq
import math
import random
from fractions import Fraction

import pytest

from bridgeworks import (
    WeightedTree,
    brute_force_twin,
    crossing_optimum_instance,
    build_distance_table,
    euclidean_distance,
    evaluate_constrained_diameter,
    gen_random_tree,
    path_vertices,
    solve_cases_12,
    solve_cases_34,
    solve_twin,
)


# ---------------------------------------------------------------- reference

def reference_constrained_diameter(t1, t2, b1, b2):
    """Float merged-graph evaluation, independent of the library's tables."""
    n1, n2 = t1.n, t2.n
    total = n1 + n2
    adj = [[] for _ in range(total)]
    for (u, v, w) in t1.edges:
        adj[u].append((v, float(w)))
        adj[v].append((u, float(w)))
    for (u, v, w) in t2.edges:
        adj[n1 + u].append((n1 + v, float(w)))
        adj[n1 + v].append((n1 + u, float(w)))
    for (p, q) in (b1, b2):
        w = float(euclidean_distance(t1.points[p], t2.points[q]))
        adj[p].append((n1 + q, w))
        adj[n1 + q].append((p, w))
    dist = []
    for s in range(total):
        d = [math.inf] * total
        d[s] = 0.0
        heap = [(0.0, s)]
        while heap:
            dd, u = heapq.heappop(heap)
            if dd > d[u]:
                continue
            for v, w in adj[u]:
                if dd + w < d[v]:
                    d[v] = dd + w
                    heapq.heappush(heap, (dd + w, v))
        dist.append(d)

    tree1 = build_distance_table(t1)
    tree2 = build_distance_table(t2)
    best = -math.inf
    for a in range(n1):
        for b in range(n2):
            best = max(best, dist[a][n1 + b])
    for a in range(n1):
        for b in range(a + 1, n1):
            if dist[a][b] < float(tree1.dist[a][b]) - 1e-12:
                best = max(best, dist[a][b])
    for a in range(n2):
        for b in range(a + 1, n2):
            if dist[n1 + a][n1 + b] < float(tree2.dist[a][b]) - 1e-12:
                best = max(best, dist[n1 + a][n1 + b])
    return best


def float_pair(seed, n_max=7):
    rng = random.Random(seed)
    t1 = gen_random_tree(rng.randint(2, n_max), seed * 2 + 1, bbox=(0, 0, 50, 50))
    t2 = gen_random_tree(rng.randint(2, n_max), seed * 2 + 2, bbox=(120, 0, 170, 50))
    return t1, t2


def rational_pair(seed, explicit):
    rng = random.Random(seed)
    n1 = rng.randint(3, 7)
    n2 = rng.randint(3, 7)
    def mk(n, x0):
        xs = rng.sample(range(0, 60), n)
        pts = [(Fraction(x0 + x), Fraction(0)) for x in xs]
        if explicit:
            edges = [(rng.randrange(i), i, Fraction(rng.randint(1, 12)))
                     for i in range(1, n)]
            return WeightedTree(pts, edges, explicit_weights=True)
        return WeightedTree(pts, [(rng.randrange(i), i) for i in range(1, n)])
    return mk(n1, 0), mk(n2, 100)


def all_disjoint_pairs(n1, n2):
    for p1 in range(n1):
        for q1 in range(n2):
            for p2 in range(n1):
                for q2 in range(n2):
                    if p1 < p2 and q1 != q2:
                        yield (p1, q1), (p2, q2)


# ---------------------------------------------------------------- evaluator

def test_evaluator_matches_merged_graph_reference():
    rng = random.Random(5)
    for seed in range(40):
        t1, t2 = float_pair(seed, n_max=6) if seed % 2 else rational_pair(seed, seed % 4 == 0)
        pairs = list(all_disjoint_pairs(t1.n, t2.n))
        for b1, b2 in rng.sample(pairs, min(12, len(pairs))):
            ev = evaluate_constrained_diameter(t1, t2, b1, b2)
            want = reference_constrained_diameter(t1, t2, b1, b2)
            assert math.isclose(float(ev.value), want, rel_tol=1e-9), (seed, b1, b2)


def test_evaluator_witness_realizes_value():
    for seed in range(20):
        t1, t2 = rational_pair(seed, explicit=False)
        sol = brute_force_twin(t1, t2)
        ev = evaluate_constrained_diameter(t1, t2, sol.bridge1, sol.bridge2)
        a, b = ev.witness
        tab1 = build_distance_table(t1)
        tab2 = build_distance_table(t2)
        p1, q1 = sol.bridge1
        p2, q2 = sol.bridge2
        w1 = euclidean_distance(t1.points[p1], t2.points[q1])
        w2 = euclidean_distance(t1.points[p2], t2.points[q2])
        if ev.witness_kind == "cross":
            via1 = tab1.dist[a][p1] + w1 + tab2.dist[q1][b]
            via2 = tab1.dist[a][p2] + w2 + tab2.dist[q2][b]
            assert min(via1, via2) == ev.value
            assert (ev.dominant_case == 1) == (via1 <= via2)
        elif ev.witness_kind == "t1":
            thr = w1 + tab2.dist[q1][q2] + w2
            alt = min(tab1.dist[a][p1] + thr + tab1.dist[p2][b],
                      tab1.dist[a][p2] + thr + tab1.dist[p1][b])
            assert alt == ev.value < tab1.dist[a][b]
            assert ev.dominant_case == 3
        else:
            thr = w1 + tab1.dist[p1][p2] + w2
            alt = min(tab2.dist[a][q1] + thr + tab2.dist[q2][b],
                      tab2.dist[a][q2] + thr + tab2.dist[q1][b])
            assert alt == ev.value < tab2.dist[a][b]
            assert ev.dominant_case == 4


def test_same_tree_pair_with_tied_route_is_excluded():
    # T1 spans 0..4 on the x-axis, T2 sits inside it; the T1 pair's route
    # through both bridges ties its tree route exactly and must not count
    t1 = WeightedTree([(Fraction(0), Fraction(0)), (Fraction(4), Fraction(0))], [(0, 1)])
    t2 = WeightedTree([(Fraction(1), Fraction(0)), (Fraction(3), Fraction(0))], [(0, 1)])
    ev = evaluate_constrained_diameter(t1, t2, (0, 0), (1, 1))
    # bridge route for (0,1) in T1: 1 + 2 + 1 = 4 = tree route, a tie
    assert ev.value == 3          # cross pair (0, 1) or (1, 0)
    assert ev.witness_kind == "cross"


# ---------------------------------------------------------------- brute force

def test_brute_force_guard():
    t1 = gen_random_tree(21, 1)
    t2 = gen_random_tree(21, 2, bbox=(200, 0, 300, 100))
    with pytest.raises(ValueError):
        brute_force_twin(t1, t2)
    # force=True overrides the size guard
    small1 = gen_random_tree(3, 3)
    small2 = gen_random_tree(3, 4, bbox=(200, 0, 300, 100))
    assert brute_force_twin(small1, small2, force=True) is not None


def test_brute_force_is_true_min_over_all_pairs():
    for seed in range(12):
        t1, t2 = rational_pair(seed, explicit=seed % 2 == 0)
        sol = brute_force_twin(t1, t2)
        best = None
        for b1, b2 in all_disjoint_pairs(t1.n, t2.n):
            v = evaluate_constrained_diameter(t1, t2, b1, b2).value
            key = (v, b1[0], b1[1], b2[0], b2[1])
            if best is None or key < best:
                best = key
        assert (sol.value, *sol.tuple4) == best


# ---------------------------------------------------------------- solver

def test_solver_equals_min_of_both_searches():
    for seed in range(30):
        t1, t2 = float_pair(seed) if seed % 2 else rational_pair(seed, seed % 4 == 0)
        s12 = solve_cases_12(t1, t2)
        s34 = solve_cases_34(t1, t2)
        tw = solve_twin(t1, t2)
        expect = min((s12.value, *s12.tuple4), (s34.value, *s34.tuple4))
        assert (tw.value, *tw.tuple4) == expect


def test_solver_output_invariants():
    for seed in range(40):
        t1, t2 = float_pair(seed) if seed % 3 else rational_pair(seed, seed % 2 == 0)
        tw = solve_twin(t1, t2)
        (p1, q1), (p2, q2) = tw.bridge1, tw.bridge2
        assert p1 != p2 and q1 != q2            # vertex-disjoint bridges
        assert p1 < p2                          # normalized order
        ev = evaluate_constrained_diameter(t1, t2, tw.bridge1, tw.bridge2)
        assert float(ev.value) == pytest.approx(float(tw.value), rel=1e-12)
        assert ev.dominant_case == tw.dominant_case
        assert ev.witness == tw.witness


def test_solver_never_beats_exhaustive_and_ties_on_rational_family():
    # the structured search re-scores every candidate, so its value is
    # always achievable; the exhaustive optimum is the floor
    for seed in range(60):
        t1, t2 = rational_pair(seed, explicit=seed % 2 == 0)
        tw = solve_twin(t1, t2)
        bf = brute_force_twin(t1, t2)
        assert tw.value >= bf.value
        assert tw.value == bf.value, seed
    for seed in range(40):
        t1, t2 = float_pair(seed)
        tw = solve_twin(t1, t2)
        bf = brute_force_twin(t1, t2)
        assert float(tw.value) >= float(bf.value) - 1e-9


def test_case12_search_known_gap_is_documented():
    """Known limitation kept as a pinned fixture.

    The structured search reduces the two-bridge problem to per-component
    single-bridge subproblems after deleting one edge per tree.  The
    per-component objective (component eccentricities) does not model
    routes that may use either bridge, so a globally better foot placement
    can lose the per-component argmin.  On this instance every separating
    cell picks foot (2,0) over (1,0) (score 97 vs 102) and the search
    returns 104 while the exhaustive optimum is 103.  The solver stays
    sound: it never reports a value below the exhaustive optimum.
    """
    t1 = WeightedTree(
        [(Fraction(23), Fraction(0)), (Fraction(28), Fraction(0)), (Fraction(33), Fraction(0))],
        [(0, 1, Fraction(11)), (1, 2, Fraction(10))],
        explicit_weights=True,
    )
    t2 = WeightedTree(
        [(Fraction(118), Fraction(0)), (Fraction(124), Fraction(0)), (Fraction(127), Fraction(0))],
        [(0, 1, Fraction(3)), (0, 2, Fraction(2))],
        explicit_weights=True,
    )
    tw = solve_twin(t1, t2)
    bf = brute_force_twin(t1, t2)
    assert bf.value == 103 and bf.tuple4 == (0, 1, 1, 0)
    assert tw.value == 104                      # the documented gap
    assert tw.value > bf.value
    # the exhaustive winner really scores 103 under the shared evaluator
    ev = evaluate_constrained_diameter(t1, t2, (0, 1), (1, 0))
    assert ev.value == 103 and ev.dominant_case == 2


# ---------------------------------------------------------------- structure

def test_edge_deletion_preserves_sidewise_distances():
    # deleting an edge (pp, ps) on the p1..p2 path with d(ps,p2) >= d(pp,p1)
    # cannot bring any vertex on pp's side closer to p2 than to p1
    rng = random.Random(23)
    for _ in range(200):
        t = gen_random_tree(rng.randint(4, 12), rng.randrange(10**6))
        tab = build_distance_table(t)
        p1, p2 = rng.sample(range(t.n), 2)
        path = path_vertices(t, p1, p2)
        for i in range(len(path) - 1):
            pp, ps = path[i], path[i + 1]
            if not float(tab.dist[ps][p2]) >= float(tab.dist[pp][p1]):
                continue
            # vertices on pp's side of the deleted edge
            edge = {pp, ps}
            side = component_of(t, pp, edge)
            for x in side:
                assert float(tab.dist[x][p2]) >= float(tab.dist[x][p1]) - 1e-9


def component_of(tree, root, cut_edge):
    adj = [[] for _ in range(tree.n)]
    for (u, v, _) in tree.edges:
        if {u, v} == cut_edge:
            continue
        adj[u].append(v)
        adj[v].append(u)
    seen = {root}
    stack = [root]
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return seen


# ---------------------------------------------------------------- crossing

def test_crossing_optimum_instance_all_eps():
    for eps in (Fraction(1, 10), Fraction(1, 100), Fraction(1, 1000)):
        t1, t2 = crossing_optimum_instance(eps)
        tw = solve_twin(t1, t2)
        assert tw.intersecting
        assert tw.backend == "rational"
        # |bc| + 2 eps, strictly below the non-crossing |bd| + 2 eps
        bc = euclidean_distance(t1.points[1], t2.points[0])
        bd = euclidean_distance(t1.points[1], t2.points[1])
        assert bd > bc
        assert tw.value == bc + 2 * eps
        assert tw.value < bd + 2 * eps
        bf = brute_force_twin(t1, t2)
        assert bf.value == tw.value
