"""Single-bridge insertion between two disjoint embedded trees.

The merged diameter after adding bridge (p, q) is
max(diam(T1), diam(T2), ecc1(p) + |pq| + ecc2(q)); only the last term
depends on the bridge, so the solvers score f(p, q) = ecc1(p) + |pq| + ecc2(q)
and tie-break lexicographically on (value, p, q).
"""

from __future__ import annotations

import math
from bisect import bisect_left, bisect_right
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

import numpy as np

from .geometry import (
    DistanceTable,
    Point,
    WeightedTree,
    build_distance_table,
    center_vertex,
    euclidean_distance,
    single_source_tree_distances,
)
from .numerics import Number, TOLERANCE, backend_override, is_exact, values_equal


@dataclass(frozen=True)
class BridgeSolution:
    p: int
    q: int
    bridge_length: Number
    value: Number                 # ecc1(p) + |pq| + ecc2(q)
    merged_diameter: Number       # max(diam1, diam2, value)
    witness: tuple[int, int]      # farthest vertices (x in T1, y in T2)
    method: str                   # "exact" | "greedy"
    backend: str                  # "rational" | "double"


def _tree_is_exact(t: WeightedTree) -> bool:
    return all(is_exact(p.x) and is_exact(p.y) for p in t.points) and all(
        is_exact(w) for _, _, w in t.edges
    )


def _resolve_mode(t1: WeightedTree, t2: WeightedTree) -> str:
    ov = backend_override()
    if ov == "double":
        return "double"
    exact_in = _tree_is_exact(t1) and _tree_is_exact(t2)
    if ov == "rational":
        if not exact_in:
            raise ValueError(
                "BRIDGEWORKS_BACKEND=rational requires exact coordinates/weights"
            )
        return "rational"
    return "rational" if exact_in else "double"


def _backend_of(value: Number) -> str:
    return "rational" if is_exact(value) else "double"


def solve_exact(
    t1: WeightedTree,
    t2: WeightedTree,
    *,
    threads: int = 1,
    table1: DistanceTable | None = None,
    table2: DistanceTable | None = None,
) -> BridgeSolution:
    """Optimal bridge by full scan over vertex pairs, O(n1 * n2)."""
    mode = _resolve_mode(t1, t2)
    tab1 = table1 if table1 is not None else build_distance_table(t1)
    tab2 = table2 if table2 is not None else build_distance_table(t2)

    if mode == "double":
        p, q, val = _scan_double(t1, t2, tab1, tab2, threads)
        blen = math.hypot(
            float(t1.points[p].x) - float(t2.points[q].x),
            float(t1.points[p].y) - float(t2.points[q].y),
        )
    else:
        p, q, val, blen = _scan_exact(t1, t2, tab1, tab2)

    merged = max(tab1.diameter, tab2.diameter, val)
    return BridgeSolution(
        p=p,
        q=q,
        bridge_length=blen,
        value=val,
        merged_diameter=merged,
        witness=(tab1.farthest[p], tab2.farthest[q]),
        method="exact",
        backend=_backend_of(val),
    )


def _scan_exact(t1, t2, tab1, tab2):
    pts1, pts2 = t1.points, t2.points
    e1, e2 = tab1.ecc, tab2.ecc
    best = None
    for p in range(len(pts1)):
        a = pts1[p]
        ep = e1[p]
        for q in range(len(pts2)):
            w = euclidean_distance(a, pts2[q])
            v = ep + w + e2[q]
            if best is None or v < best[0]:
                best = (v, p, q, w)
    v, p, q, w = best
    return p, q, v, w


def _scan_double(t1, t2, tab1, tab2, threads):
    x1 = np.array([[float(p.x), float(p.y)] for p in t1.points])
    x2 = np.array([[float(p.x), float(p.y)] for p in t2.points])
    e1 = np.array([float(e) for e in tab1.ecc])
    e2 = np.array([float(e) for e in tab2.ecc])

    def chunk_min(lo: int, hi: int):
        dx = x1[lo:hi, 0:1] - x2[None, :, 0].reshape(1, -1)
        dy = x1[lo:hi, 1:2] - x2[None, :, 1].reshape(1, -1)
        vals = e1[lo:hi, None] + np.hypot(dx, dy) + e2[None, :]
        flat = int(np.argmin(vals))            # first occurrence = lex-min
        r, c = divmod(flat, vals.shape[1])
        return (float(vals[r, c]), lo + r, c)

    n1 = len(x1)
    if threads <= 1 or n1 < 2 * threads:
        cands = [chunk_min(0, n1)]
    else:
        step = (n1 + threads - 1) // threads
        ranges = [(i, min(i + step, n1)) for i in range(0, n1, step)]
        with ThreadPoolExecutor(max_workers=threads) as ex:
            cands = list(ex.map(lambda r: chunk_min(*r), ranges))
    val, p, q = min(cands)
    return p, q, val


def approx_greedy(t1: WeightedTree, t2: WeightedTree) -> BridgeSolution:
    """Bridge at the bichromatic closest pair.

    Guarantee: merged-diameter value at most twice the optimum. The closest
    pair minimizes |pq|, and any bridge value is at least max(r1, r2) with
    r_i the tree radius, which bounds the eccentricity overshoot.
    """
    p, q, blen = bichromatic_closest_pair(t1.points, t2.points)
    d1 = single_source_tree_distances(t1, p)
    d2 = single_source_tree_distances(t2, q)
    ecc1, x = _max_with_argmin_index(d1)
    ecc2, y = _max_with_argmin_index(d2)
    val = ecc1 + blen + ecc2
    # merged diameter needs the component diameters too
    tab1 = build_distance_table(t1)
    tab2 = build_distance_table(t2)
    merged = max(tab1.diameter, tab2.diameter, val)
    return BridgeSolution(
        p=p,
        q=q,
        bridge_length=blen,
        value=val,
        merged_diameter=merged,
        witness=(x, y),
        method="greedy",
        backend=_backend_of(val),
    )


def _max_with_argmin_index(vals: Sequence[Number]) -> tuple[Number, int]:
    best = vals[0]
    arg = 0
    for i in range(1, len(vals)):
        if vals[i] > best:
            best = vals[i]
            arg = i
    return best, arg


def bichromatic_closest_pair(
    pts1: Sequence[Point],
    pts2: Sequence[Point],
    method: str = "auto",
) -> tuple[int, int, Number]:
    """Closest pair across the two point sets; ties by lex-min (i, j).

    method="quadratic" is the exact reference scan; "numpy" is a vectorized
    float scan for large inputs; "auto" picks by input type and size.
    """
    if method not in ("auto", "quadratic", "numpy"):
        raise ValueError(f"unknown method {method!r}")
    exact_in = all(is_exact(p.x) and is_exact(p.y) for p in pts1) and all(
        is_exact(p.x) and is_exact(p.y) for p in pts2
    )
    if method == "auto":
        method = "quadratic" if exact_in or len(pts1) * len(pts2) <= 65536 else "numpy"

    if method == "quadratic":
        best = None
        for i, a in enumerate(pts1):
            for j, b in enumerate(pts2):
                dx = a.x - b.x
                dy = a.y - b.y
                d2 = dx * dx + dy * dy
                if best is None or d2 < best[0]:
                    best = (d2, i, j)
        _, i, j = best
        return i, j, euclidean_distance(pts1[i], pts2[j])

    x1 = np.array([[float(p.x), float(p.y)] for p in pts1])
    x2 = np.array([[float(p.x), float(p.y)] for p in pts2])
    best = None
    block = 1024
    for lo in range(0, len(x1), block):
        hi = min(lo + block, len(x1))
        dx = x1[lo:hi, 0:1] - x2[None, :, 0].reshape(1, -1)
        dy = x1[lo:hi, 1:2] - x2[None, :, 1].reshape(1, -1)
        d2 = dx * dx + dy * dy
        flat = int(np.argmin(d2))
        r, c = divmod(flat, d2.shape[1])
        cand = (float(d2[r, c]), lo + r, c)
        if best is None or cand < best:
            best = cand
    _, i, j = best
    return i, j, euclidean_distance(pts1[i], pts2[j])


# ---------------------------------------------------------------------------
# Decision variant


class DecisionWitness(NamedTuple):
    p: int
    q: int
    x: int
    y: int


def _leaves(t: WeightedTree) -> list[int]:
    if t.n == 1:
        return [0]
    return [v for v in range(t.n) if len(t.adjacency[v]) == 1]


def one_bridge_decide(
    t1: WeightedTree,
    t2: WeightedTree,
    c1: Number,
    c2: Number,
    tol: float = TOLERANCE,
) -> DecisionWitness | None:
    """Is there a bridge (p, q) with |pq| = c1 and leaves x, y such that
    d1(x, p) + c1 + d2(q, y) = c2?  Returns the lex-min witness or None.

    Exact inputs use exact equality; otherwise relative tolerance tol.
    """
    leaves1 = _leaves(t1)
    leaves2 = _leaves(t2)
    exact_mode = (
        _tree_is_exact(t1)
        and _tree_is_exact(t2)
        and is_exact(c1)
        and is_exact(c2)
        and backend_override() != "double"
    )

    # leaf-distance index per vertex of T2: distance -> min leaf id
    dist2 = [single_source_tree_distances(t2, q) for q in range(t2.n)]
    if exact_mode:
        idx2 = []
        for q in range(t2.n):
            m: dict = {}
            for y in leaves2:
                d = dist2[q][y]
                if d not in m or y < m[d]:
                    m[d] = y
            idx2.append(m)
    else:
        idx2 = []
        for q in range(t2.n):
            pairs = sorted((float(dist2[q][y]), y) for y in leaves2)
            idx2.append(pairs)

    # candidate bridge endpoints with |pq| = c1
    if exact_mode and c1 == 0:
        # zero-length bridge means coincident points: hash on coordinates
        by_coord: dict = {}
        for q in range(t2.n):
            by_coord.setdefault(t2.points[q], []).append(q)
        cand = []
        for p in range(t1.n):
            for q in by_coord.get(t1.points[p], ()):
                cand.append((p, q))
        cand.sort()
    else:
        cand = []
        for p in range(t1.n):
            a = t1.points[p]
            for q in range(t2.n):
                w = euclidean_distance(a, t2.points[q])
                if values_equal(w, c1, tol):
                    cand.append((p, q))

    need = c2 - c1
    for p, q in cand:
        d1 = single_source_tree_distances(t1, p)
        table = idx2[q]
        if exact_mode:
            for x in sorted(leaves1):
                rem = need - d1[x]
                y = table.get(rem)
                if y is not None:
                    return DecisionWitness(p, q, x, y)
        else:
            fneed = float(c2) - float(c1)
            for x in sorted(leaves1):
                rem = fneed - float(d1[x])
                eps = tol * max(1.0, abs(float(c2)))
                lo = bisect_left(table, (rem - eps, -1))
                hi = bisect_right(table, (rem + eps, 1 << 60))
                if lo < hi:
                    y = min(yy for _, yy in table[lo:hi])
                    return DecisionWitness(p, q, x, y)
    return None


# ---------------------------------------------------------------------------
# Forest connection


@dataclass(frozen=True)
class ForestConnection:
    bridges: tuple[tuple[int, int, int, int], ...]  # (tree_i, u, tree_j, v)
    diameter: Number
    hub: int


def connect_forest(trees: Sequence[WeightedTree]) -> ForestConnection:
    """Connect k >= 2 disjoint trees with k-1 bridges into one tree.

    Strategy: try each tree as the hub; bridge every other tree's center to
    the hub's center; keep the hub minimizing the merged diameter (ties to
    the lower hub index). For two trees this is center-to-center, whose
    value r1 + |c1 c2| + r2 is at most twice the optimal bridge value.
    """
    k = len(trees)
    if k < 2:
        raise ValueError("need at least two trees")
    tables = [build_distance_table(t) for t in trees]
    centers = [center_vertex(tab) for tab in tables]
    radii = [tables[i].ecc[centers[i]] for i in range(k)]
    diams = [tab.diameter for tab in tables]

    best = None
    for h in range(k):
        offs = [
            euclidean_distance(trees[i].points[centers[i]], trees[h].points[centers[h]])
            if i != h
            else 0
            for i in range(k)
        ]
        # merged graph is a star of trees rooted at center(h)
        arms = [radii[i] + offs[i] for i in range(k)]
        top = sorted(arms, reverse=True)
        cross = top[0] + top[1] if k >= 2 else 0
        diam = max(max(diams), cross)
        if best is None or (diam, h) < (best[0], best[1]):
            best = (diam, h)
    diam, h = best
    bridges = tuple(
        (i, centers[i], h, centers[h]) for i in range(k) if i != h
    )
    return ForestConnection(bridges=bridges, diameter=diam, hub=h)


# ---------------------------------------------------------------------------
# Worst-case instance for the greedy bound


def greedy_tightness_instance(
    n: Number = 1000, eps: Number = Fraction(1, 100)
) -> tuple[WeightedTree, WeightedTree]:
    """Two 3-vertex paths on which the greedy bridge approaches ratio 2.

    Both trees are horizontal paths with explicit edge weights n. The unique
    closest pair joins the far ends (length 1 - eps), scoring 4n + 1 - eps,
    while the optimal bridge joins the middles, scoring 2n + 1.
    """
    if eps <= 0 or eps >= 1:
        raise ValueError("eps must be in (0, 1)")
    t1 = WeightedTree(
        [(-10, 0), (0, 0), (10, 0)],
        [(0, 1, n), (1, 2, n)],
        labels=("a", "b", "c"),
        explicit_weights=True,
    )
    t2 = WeightedTree(
        [(-10, -1), (0, -1), (10, -1 + eps)],
        [(0, 1, n), (1, 2, n)],
        labels=("d", "e", "f"),
        explicit_weights=True,
    )
    return t1, t2
