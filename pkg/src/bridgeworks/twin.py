"""Twin-bridge insertion: two vertex-disjoint bridges minimizing the
constrained diameter of the merged network T'' = T1 u T2 u {b1, b2}.

Objective. A vertex pair qualifies iff its endpoints lie in different trees,
or lie in the same tree and some through-bridge route is strictly shorter
than the in-tree path (ties excluded, so the bridges are essential to the
pair). The constrained diameter is the max of delta_T'' over qualifying
pairs; we minimize it over bridge pairs (p1,q1), (p2,q2) with p1 != p2,
q1 != q2, tie-breaking lexicographically on (p1, q1, p2, q2) with the
convention p1 < p2.

All shortest paths in T'' factor through the four bridge endpoints, so the
evaluator uses closed-form expressions over the two tree distance tables.
A per-source Dijkstra reference implementation is kept alongside for
cross-checking.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .geometry import (
    DistanceTable,
    WeightedTree,
    build_distance_table,
    dijkstra,
    euclidean_distance,
    path_vertices,
    segments_properly_cross,
)
from .numerics import Number, backend_override, is_exact


@dataclass(frozen=True)
class TwinEvaluation:
    value: Number
    witness: tuple[int, int]
    witness_kind: str        # "cross" | "t1" | "t2"
    dominant_case: int       # 1..4


@dataclass(frozen=True)
class TwinBridgeSolution:
    bridge1: tuple[int, int]  # (p1 in T1, q1 in T2)
    bridge2: tuple[int, int]  # (p2, q2)
    value: Number
    dominant_case: int
    witness: tuple[int, int]
    intersecting: bool
    backend: str

    @property
    def tuple4(self) -> tuple[int, int, int, int]:
        return (*self.bridge1, *self.bridge2)


def _check_disjoint(b1, b2):
    p1, q1 = b1
    p2, q2 = b2
    if p1 == p2 or q1 == q2:
        raise ValueError(f"bridges must be vertex-disjoint, got {b1} and {b2}")


def evaluate_constrained_diameter(
    t1: WeightedTree,
    t2: WeightedTree,
    b1: tuple[int, int],
    b2: tuple[int, int],
    *,
    table1: DistanceTable | None = None,
    table2: DistanceTable | None = None,
) -> TwinEvaluation:
    """Constrained diameter of T1 u T2 u {b1, b2} with its witness pair.

    Witness reporting is deterministic: cross pairs first, then T1 pairs,
    then T2 pairs; lex-min within each group. The dominant case is 1 or 2
    for a cross witness (by which bridge carries its shortest route, ties
    to bridge 1), 3 for a T1 witness, 4 for a T2 witness.
    """
    _check_disjoint(b1, b2)
    p1, q1 = b1
    p2, q2 = b2
    tab1 = table1 if table1 is not None else build_distance_table(t1)
    tab2 = table2 if table2 is not None else build_distance_table(t2)
    D1, D2 = tab1.dist, tab2.dist
    w1 = euclidean_distance(t1.points[p1], t2.points[q1])
    w2 = euclidean_distance(t1.points[p2], t2.points[q2])
    n1, n2 = t1.n, t2.n

    best_cross = None
    for a in range(n1):
        base1 = D1[a][p1] + w1
        base2 = D1[a][p2] + w2
        row1, row2 = D2[q1], D2[q2]
        for b in range(n2):
            d = min(base1 + row1[b], base2 + row2[b])
            if best_cross is None or d > best_cross[0]:
                best_cross = (d, a, b)

    thr = w1 + D2[q1][q2] + w2
    best_t1 = None
    for a in range(n1):
        ra1 = D1[a][p1] + thr
        ra2 = D1[a][p2] + thr
        row = D1[a]
        for b in range(a + 1, n1):
            alt = min(ra1 + D1[p2][b], ra2 + D1[p1][b])
            if alt < row[b]:
                if best_t1 is None or alt > best_t1[0]:
                    best_t1 = (alt, a, b)

    thr2 = w1 + D1[p1][p2] + w2
    best_t2 = None
    for a in range(n2):
        ra1 = D2[a][q1] + thr2
        ra2 = D2[a][q2] + thr2
        row = D2[a]
        for b in range(a + 1, n2):
            alt = min(ra1 + D2[q2][b], ra2 + D2[q1][b])
            if alt < row[b]:
                if best_t2 is None or alt > best_t2[0]:
                    best_t2 = (alt, a, b)

    value = best_cross[0]
    if best_t1 is not None and best_t1[0] > value:
        value = best_t1[0]
    if best_t2 is not None and best_t2[0] > value:
        value = best_t2[0]

    if best_cross[0] == value:
        _, a, b = best_cross
        via1 = D1[a][p1] + w1 + D2[q1][b]
        via2 = D1[a][p2] + w2 + D2[q2][b]
        case = 1 if via1 <= via2 else 2
        return TwinEvaluation(value, (a, b), "cross", case)
    if best_t1 is not None and best_t1[0] == value:
        return TwinEvaluation(value, (best_t1[1], best_t1[2]), "t1", 3)
    return TwinEvaluation(value, (best_t2[1], best_t2[2]), "t2", 4)


def _dijkstra_reference_constrained_diameter(
    t1: WeightedTree,
    t2: WeightedTree,
    b1: tuple[int, int],
    b2: tuple[int, int],
) -> Number:
    """Slow oracle: build T'' explicitly, all-pairs Dijkstra, same rule."""
    _check_disjoint(b1, b2)
    n1, n2 = t1.n, t2.n
    n = n1 + n2
    adj: list[list[tuple[int, Number]]] = [[] for _ in range(n)]
    for u, v, w in t1.edges:
        adj[u].append((v, w))
        adj[v].append((u, w))
    for u, v, w in t2.edges:
        adj[n1 + u].append((n1 + v, w))
        adj[n1 + v].append((n1 + u, w))
    for p, q in (b1, b2):
        w = euclidean_distance(t1.points[p], t2.points[q])
        adj[p].append((n1 + q, w))
        adj[n1 + q].append((p, w))
    dist = [dijkstra(n, adj, s) for s in range(n)]
    tab1 = build_distance_table(t1)
    tab2 = build_distance_table(t2)
    value = None
    for a in range(n1):
        for b in range(n2):
            d = dist[a][n1 + b]
            if value is None or d > value:
                value = d
    for a in range(n1):
        for b in range(a + 1, n1):
            d = dist[a][b]
            if d < tab1.dist[a][b] and d > value:
                value = d
    for a in range(n2):
        for b in range(a + 1, n2):
            d = dist[n1 + a][n1 + b]
            if d < tab2.dist[a][b] and d > value:
                value = d
    return value


# ---------------------------------------------------------------------------
# Shared numeric scaffolding


class _Arrays:
    """Distance tables and cross distances as numpy arrays.

    dtype is int64 when every quantity is a Python int, float64 when any
    input is inexact, and object (exact Python numbers) otherwise. The
    object path keeps Fractions intact at pure-Python speed.
    """

    def __init__(self, t1: WeightedTree, t2: WeightedTree,
                 tab1: DistanceTable, tab2: DistanceTable):
        W = [
            [euclidean_distance(p, q) for q in t2.points]
            for p in t1.points
        ]
        flat = [x for row in tab1.dist for x in row]
        flat += [x for row in tab2.dist for x in row]
        flat += [x for row in W for x in row]
        if backend_override() == "double" or not all(is_exact(x) for x in flat):
            if all(is_exact(x) for x in flat):
                dtype = np.float64   # forced double backend
            elif all(isinstance(x, (int, float)) for x in flat):
                dtype = np.float64
            else:
                dtype = object       # mix of Fraction and float: keep exactness
        elif all(isinstance(x, int) for x in flat) and max(
            (abs(x) for x in flat), default=0
        ) < 2**40:
            dtype = np.int64
        else:
            dtype = object
        if dtype is np.float64:
            conv = float
        else:
            conv = lambda x: x  # noqa: E731
        self.dtype = dtype
        self.D1 = np.array([[conv(x) for x in row] for row in tab1.dist], dtype=dtype)
        self.D2 = np.array([[conv(x) for x in row] for row in tab2.dist], dtype=dtype)
        self.W = np.array([[conv(x) for x in row] for row in W], dtype=dtype)
        if dtype is np.int64:
            self.neg = np.iinfo(np.int64).min // 4
        elif dtype is np.float64:
            self.neg = -np.inf
        else:
            self.neg = None

    @property
    def vectorizable(self) -> bool:
        return self.dtype is not object


def _batched_values(arr: _Arrays, P1, Q1, P2, Q2) -> np.ndarray:
    """Constrained-diameter values for a batch of candidate bridge pairs."""
    D1, D2, W = arr.D1, arr.D2, arr.W
    w1 = W[P1, Q1]
    w2 = W[P2, Q2]
    c1 = D1[:, P1].T[:, :, None] + w1[:, None, None] + D2[Q1, :][:, None, :]
    c2 = D1[:, P2].T[:, :, None] + w2[:, None, None] + D2[Q2, :][:, None, :]
    val = np.minimum(c1, c2).max(axis=(1, 2))

    thr = w1 + D2[Q1, Q2] + w2
    a1 = D1[:, P1].T[:, :, None] + thr[:, None, None] + D1[P2, :][:, None, :]
    a2 = D1[:, P2].T[:, :, None] + thr[:, None, None] + D1[P1, :][:, None, :]
    alt = np.minimum(a1, a2)
    t1v = np.where(alt < D1[None, :, :], alt, arr.neg).max(axis=(1, 2))

    thr2 = w1 + D1[P1, P2] + w2
    a1 = D2[:, Q1].T[:, :, None] + thr2[:, None, None] + D2[Q2, :][:, None, :]
    a2 = D2[:, Q2].T[:, :, None] + thr2[:, None, None] + D2[Q1, :][:, None, :]
    alt = np.minimum(a1, a2)
    t2v = np.where(alt < D2[None, :, :], alt, arr.neg).max(axis=(1, 2))

    return np.maximum(val, np.maximum(t1v, t2v))


def _value_only(
    t1, t2, tab1, tab2, cand: tuple[int, int, int, int]
) -> Number:
    p1, q1, p2, q2 = cand
    ev = evaluate_constrained_diameter(
        t1, t2, (p1, q1), (p2, q2), table1=tab1, table2=tab2
    )
    return ev.value


def _normalize(b1: tuple[int, int], b2: tuple[int, int]) -> tuple[int, int, int, int]:
    if b1[0] < b2[0]:
        return (*b1, *b2)
    return (*b2, *b1)


def _finish(
    t1, t2, tab1, tab2, cand: tuple[int, int, int, int]
) -> TwinBridgeSolution:
    p1, q1, p2, q2 = cand
    ev = evaluate_constrained_diameter(
        t1, t2, (p1, q1), (p2, q2), table1=tab1, table2=tab2
    )
    crossing = segments_properly_cross(
        t1.points[p1], t2.points[q1], t1.points[p2], t2.points[q2]
    )
    return TwinBridgeSolution(
        bridge1=(p1, q1),
        bridge2=(p2, q2),
        value=ev.value,
        dominant_case=ev.dominant_case,
        witness=ev.witness,
        intersecting=crossing,
        backend="rational" if is_exact(ev.value) else "double",
    )


def _require_sizes(t1: WeightedTree, t2: WeightedTree):
    if t1.n < 2 or t2.n < 2:
        raise ValueError("twin bridges need at least 2 vertices in each tree")


# ---------------------------------------------------------------------------
# Case 1-2 search: edge-pair deletion


def _component_masks(t: WeightedTree, edge_index: int) -> np.ndarray:
    """Boolean mask of the component containing edges[edge_index][0]."""
    u0, v0, _ = t.edges[edge_index]
    mask = np.zeros(t.n, dtype=bool)
    mask[u0] = True
    stack = [u0]
    adj = t.adjacency
    skip = {(u0, v0), (v0, u0)}
    while stack:
        u = stack.pop()
        for v, _ in adj[u]:
            if (u, v) in skip or mask[v]:
                continue
            mask[v] = True
            stack.append(v)
    return mask


def _best_bridge_between(arr: _Arrays, aidx: np.ndarray, bidx: np.ndarray):
    eccA = arr.D1[np.ix_(aidx, aidx)].max(axis=1)
    eccB = arr.D2[np.ix_(bidx, bidx)].max(axis=1)
    V = eccA[:, None] + arr.W[np.ix_(aidx, bidx)] + eccB[None, :]
    flat = int(np.argmin(V))
    r, c = divmod(flat, V.shape[1])
    return int(aidx[r]), int(bidx[c])


def solve_cases_12(
    t1: WeightedTree,
    t2: WeightedTree,
    *,
    _ctx=None,
) -> TwinBridgeSolution:
    """Best twin bridges whose constrained diameter is cross-pair dominated.

    For every edge pair (e1 in T1, e2 in T2), deleting them splits the trees
    into (T1a, T1b) and (T2a, T2b). Both pairings (T1a-T2a with T1b-T2b, and
    T1a-T2b with T1b-T2a) are tried; each side contributes its own optimal
    single bridge, and the combined pair is re-scored with the operational
    evaluator before comparison.
    """
    _require_sizes(t1, t2)
    tab1, tab2, arr = _ctx if _ctx is not None else _context(t1, t2)
    idx1 = np.arange(t1.n)
    idx2 = np.arange(t2.n)
    best = None
    masks1 = [_component_masks(t1, i) for i in range(len(t1.edges))]
    masks2 = [_component_masks(t2, j) for j in range(len(t2.edges))]
    for m1 in masks1:
        sides1 = (idx1[m1], idx1[~m1])
        for m2 in masks2:
            sides2 = (idx2[m2], idx2[~m2])
            for flip in (0, 1):
                ba = _best_bridge_between(arr, sides1[0], sides2[flip])
                bb = _best_bridge_between(arr, sides1[1], sides2[1 - flip])
                cand = _normalize(ba, bb)
                val = _value_only(t1, t2, tab1, tab2, cand)
                key = (val, *cand)
                if best is None or key < best:
                    best = key
    return _finish(t1, t2, tab1, tab2, best[1:])


# ---------------------------------------------------------------------------
# Case 3-4 search: cycle savings along a diameter path


def _g_argmax(
    arr: _Arrays,
    path: Sequence[int],
    n_other: int,
    *,
    swap: bool,
) -> tuple[int, int, int, int]:
    """Maximize g = D_same[p1,p2] - (w(p1,q1) + D_other[q1,q2] + w(q2,p2))
    over p1, p2 on the given path and q1, q2 in the other tree.

    swap=False searches T1's diameter path (case 3); swap=True searches
    T2's (case 4). Returns the winning candidate as (p1, q1, p2, q2) in
    T1-first order.
    """
    Dsame = arr.D1 if not swap else arr.D2
    Dother = arr.D2 if not swap else arr.D1
    W = arr.W if not swap else arr.W.T  # W[p, q] with p on the path side
    path = list(path)
    k = len(path)
    if arr.vectorizable:
        Dp = Dsame[np.ix_(path, path)]
        Wp = W[path, :]
        G = (
            Dp[:, None, :, None]
            - Wp[:, :, None, None]
            - Dother[None, :, None, :]
            - Wp[None, None, :, :]
        )
        eye_p = np.eye(k, dtype=bool)
        G = np.where(eye_p[:, None, :, None], arr.neg, G)
        eye_q = np.eye(n_other, dtype=bool)
        G = np.where(eye_q[None, :, None, :], arr.neg, G)
        flat = int(np.argmax(G))
        i, a, j, b = np.unravel_index(flat, G.shape)
        p1, q1, p2, q2 = path[int(i)], int(a), path[int(j)], int(b)
    else:
        best = None
        for i, p1c in enumerate(path):
            for a in range(n_other):
                for j, p2c in enumerate(path):
                    if i == j:
                        continue
                    for b in range(n_other):
                        if a == b:
                            continue
                        g = Dsame[p1c][p2c] - (
                            W[p1c][a] + Dother[a][b] + W[p2c][b]
                        )
                        if best is None or g > best[0]:
                            best = (g, p1c, a, p2c, b)
        _, p1, q1, p2, q2 = best
    if swap:
        p1, q1, p2, q2 = q1, p1, q2, p2
    return p1, q1, p2, q2


def solve_cases_34(
    t1: WeightedTree,
    t2: WeightedTree,
    *,
    _ctx=None,
) -> TwinBridgeSolution:
    """Best twin bridges found by maximizing the cycle-saving objective g.

    Case 3 places p1, p2 on T1's diameter path (the bridges form a cycle
    shortening T1's long pairs); case 4 is symmetric for T2. Each case's
    g-argmax is re-scored by the operational evaluator.
    """
    _require_sizes(t1, t2)
    tab1, tab2, arr = _ctx if _ctx is not None else _context(t1, t2)
    x, z = tab1.diameter_pair
    path1 = path_vertices(t1, x, z)
    x2, z2 = tab2.diameter_pair
    path2 = path_vertices(t2, x2, z2)
    best = None
    for path, swap, no in ((path1, False, t2.n), (path2, True, t1.n)):
        if len(path) < 2:
            continue
        p1, q1, p2, q2 = _g_argmax(arr, path, no, swap=swap)
        cand = _normalize((p1, q1), (p2, q2))
        val = _value_only(t1, t2, tab1, tab2, cand)
        key = (val, *cand)
        if best is None or key < best:
            best = key
    if best is None:
        raise ValueError("degenerate trees: no diameter path of length >= 2")
    return _finish(t1, t2, tab1, tab2, best[1:])


def _context(t1: WeightedTree, t2: WeightedTree):
    tab1 = build_distance_table(t1)
    tab2 = build_distance_table(t2)
    return tab1, tab2, _Arrays(t1, t2, tab1, tab2)


def solve_twin(t1: WeightedTree, t2: WeightedTree) -> TwinBridgeSolution:
    """Optimal twin bridges: min over the case 1-2 and case 3-4 searches,
    each candidate scored by the shared evaluator, lexicographic tie-break.
    """
    _require_sizes(t1, t2)
    ctx = _context(t1, t2)
    s12 = solve_cases_12(t1, t2, _ctx=ctx)
    s34 = solve_cases_34(t1, t2, _ctx=ctx)
    k12 = (s12.value, *s12.tuple4)
    k34 = (s34.value, *s34.tuple4)
    return s12 if k12 <= k34 else s34


def brute_force_twin(
    t1: WeightedTree,
    t2: WeightedTree,
    force: bool = False,
) -> TwinBridgeSolution:
    """Exhaustive oracle over every vertex-disjoint bridge pair.

    Guarded to n1*n2 <= 400 unless force=True. Candidates are enumerated in
    lexicographic (p1, q1, p2, q2) order with p1 < p2, so the first minimum
    is the lex-min optimum.
    """
    _require_sizes(t1, t2)
    n1, n2 = t1.n, t2.n
    if n1 * n2 > 400 and not force:
        raise ValueError(f"instance too large for brute force ({n1}*{n2} > 400); pass force=True")
    tab1, tab2, arr = _context(t1, t2)
    cands = [
        (p1, q1, p2, q2)
        for p1 in range(n1)
        for q1 in range(n2)
        for p2 in range(p1 + 1, n1)
        for q2 in range(n2)
        if q2 != q1
    ]
    if arr.vectorizable:
        P1, Q1, P2, Q2 = (np.array(c) for c in zip(*cands))
        vals = _batched_values(arr, P1, Q1, P2, Q2)
        i = int(np.argmin(vals))
        sol = _finish(t1, t2, tab1, tab2, cands[i])
        batched = vals[i]
        if arr.dtype is np.int64:
            assert int(batched) == sol.value
        else:
            assert math.isclose(float(batched), float(sol.value), rel_tol=1e-12, abs_tol=1e-12)
        return sol
    best = None
    for cand in cands:
        val = _value_only(t1, t2, tab1, tab2, cand)
        key = (val, *cand)
        if best is None or key < best:
            best = key
    return _finish(t1, t2, tab1, tab2, best[1:])


# ---------------------------------------------------------------------------
# Instance where the optimal twin bridges must cross


def crossing_optimum_instance(
    eps: Number = Fraction(1, 100),
) -> tuple[WeightedTree, WeightedTree]:
    """Two 4-vertex paths whose optimal twin bridges intersect.

    T1 is the path x-a-b-y, T2 the path z-c-d-w, with tiny end segments of
    weight eps. Key distances: |bc| = |cd| = |ad| = 25 and |bd| = 30, all
    exact; T1's middle edge carries explicit weight 0 while a and b stay
    geometrically apart, so the crossing bridges (a,d) and (b,c) realize
    value 25 + 2*eps while the best non-crossing alternative pays 30 + 2*eps.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    e = eps
    t1 = WeightedTree(
        [(18, -1), (0, 0), (18, -1 - e), (-e, 0)],
        [(2, 0, e), (0, 1, 0), (1, 3, e)],
        labels=("a", "b", "x", "y"),
        explicit_weights=True,
    )
    t2 = WeightedTree(
        [(25, 0), (18, 24), (25 + e, 0), (18, 24 + e)],
        [(2, 0, e), (0, 1, 25), (1, 3, e)],
        labels=("c", "d", "z", "w"),
    )
    return t1, t2
