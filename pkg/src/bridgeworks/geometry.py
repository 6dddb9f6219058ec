"""Geometric primitives: points, weighted trees, distance tables, planarity.

Coordinates may be int, Fraction, or float. Arithmetic stays exact while the
operands are exact; square roots fall back to float unless the squared length
is a perfect rational square.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .numerics import Number, TOLERANCE, exact_sqrt, is_exact, values_equal


class Point(NamedTuple):
    x: Number
    y: Number


def _as_point(p) -> Point:
    if isinstance(p, Point):
        return p
    return Point(p[0], p[1])


def euclidean_distance(a: Point, b: Point) -> Number:
    """Distance between two points.

    Exact (int/Fraction) when the points are exact and the segment is
    axis-aligned or its squared length is a perfect rational square;
    otherwise an IEEE double via math.hypot.
    """
    dx = a.x - b.x
    dy = a.y - b.y
    if is_exact(dx) and is_exact(dy):
        if dx == 0:
            return abs(dy)
        if dy == 0:
            return abs(dx)
        r = exact_sqrt(dx * dx + dy * dy)
        if r is not None:
            return int(r) if r.denominator == 1 else r
    return math.hypot(float(dx), float(dy))


# ---------------------------------------------------------------------------
# Weighted trees


@dataclass(frozen=True)
class WeightedTree:
    """A tree embedded in the plane.

    Edge weights default to Euclidean lengths of the embedded segments.
    With explicit_weights=True the given weights stand on their own (they
    may disagree with the embedding); they must be nonnegative.
    """

    points: tuple[Point, ...]
    edges: tuple[tuple[int, int, Number], ...]
    labels: tuple[str, ...] | None = None
    explicit_weights: bool = False

    def __init__(
        self,
        points: Sequence,
        edges: Iterable,
        labels: Sequence[str] | None = None,
        explicit_weights: bool = False,
    ):
        pts = tuple(_as_point(p) for p in points)
        n = len(pts)
        if n == 0:
            raise ValueError("tree needs at least one vertex")
        norm_edges = []
        for e in edges:
            e = tuple(e)
            if len(e) == 2:
                u, v = e
                w = None
            elif len(e) == 3:
                u, v, w = e
            else:
                raise ValueError(f"edge must be (u,v) or (u,v,w), got {e!r}")
            if not (0 <= u < n and 0 <= v < n) or u == v:
                raise ValueError(f"bad edge endpoints ({u},{v}) for n={n}")
            geo = euclidean_distance(pts[u], pts[v])
            if explicit_weights:
                if w is None:
                    raise ValueError("explicit_weights=True requires edge weights")
                if w < 0:
                    raise ValueError(f"negative edge weight {w}")
            else:
                if w is None:
                    w = geo
                elif not values_equal(w, geo):
                    raise ValueError(
                        f"edge ({u},{v}) weight {w} != embedded length {geo}"
                    )
            norm_edges.append((u, v, w))
        if len(norm_edges) != n - 1:
            raise ValueError(f"tree on {n} vertices needs {n-1} edges, got {len(norm_edges)}")
        if labels is not None:
            labels = tuple(labels)
            if len(labels) != n:
                raise ValueError("labels length mismatch")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "edges", tuple(norm_edges))
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "explicit_weights", explicit_weights)
        # connectivity check (n-1 edges + connected == tree)
        seen = [False] * n
        stack = [0]
        seen[0] = True
        adj = self.adjacency
        count = 1
        while stack:
            u = stack.pop()
            for v, _ in adj[u]:
                if not seen[v]:
                    seen[v] = True
                    count += 1
                    stack.append(v)
        if count != n:
            raise ValueError("edges do not form a connected tree")

    @property
    def n(self) -> int:
        return len(self.points)

    @cached_property
    def adjacency(self) -> tuple[tuple[tuple[int, Number], ...], ...]:
        adj: list[list[tuple[int, Number]]] = [[] for _ in self.points]
        for u, v, w in self.edges:
            adj[u].append((v, w))
            adj[v].append((u, w))
        return tuple(tuple(a) for a in adj)

    def label_of(self, i: int) -> str:
        if self.labels is not None:
            return self.labels[i]
        return str(i)


def single_source_tree_distances(tree: WeightedTree, src: int) -> list[Number]:
    """Distances from src to every vertex (tree paths are unique)."""
    n = tree.n
    dist: list[Number] = [0] * n
    seen = [False] * n
    seen[src] = True
    stack = [src]
    adj = tree.adjacency
    while stack:
        u = stack.pop()
        du = dist[u]
        for v, w in adj[u]:
            if not seen[v]:
                seen[v] = True
                dist[v] = du + w
                stack.append(v)
    return dist


@dataclass(frozen=True)
class DistanceTable:
    """All-pairs tree distances with per-vertex eccentricities."""

    dist: tuple[tuple[Number, ...], ...]
    ecc: tuple[Number, ...]
    farthest: tuple[int, ...]          # lex-min argmax of each row
    diameter: Number
    diameter_pair: tuple[int, int]     # lex-min (x, z), x <= z
    all_exact: bool

    @property
    def n(self) -> int:
        return len(self.ecc)

    @cached_property
    def float_array(self) -> np.ndarray:
        return np.array([[float(d) for d in row] for row in self.dist])


def build_distance_table(tree: WeightedTree) -> DistanceTable:
    n = tree.n
    rows = []
    ecc = []
    far = []
    all_exact = True
    raw = [single_source_tree_distances(tree, s) for s in range(n)]
    # float path sums depend on accumulation order, so d(x,z) and d(z,x)
    # can differ in the last ulp; mirror the upper triangle to keep the
    # metric symmetric before eccentricities are derived from it
    for x in range(n):
        for z in range(x + 1, n):
            raw[z][x] = raw[x][z]
    for s in range(n):
        row = raw[s]
        best = row[0]
        arg = 0
        for i in range(1, n):
            if row[i] > best:
                best = row[i]
                arg = i
        rows.append(tuple(row))
        ecc.append(best)
        far.append(arg)
        if all_exact:
            all_exact = all(is_exact(d) for d in row)
    diam = max(ecc)
    # lex-min (x, z) with x <= z realizing the diameter; the first vertex
    # whose ecc equals diam only has partners above it, so scanning up works
    pair = None
    for x in range(n):
        if ecc[x] != diam:
            continue
        row = rows[x]
        for z in range(x, n):
            if row[z] == diam:
                pair = (x, z)
                break
        break
    return DistanceTable(
        dist=tuple(rows),
        ecc=tuple(ecc),
        farthest=tuple(far),
        diameter=diam,
        diameter_pair=pair,
        all_exact=all_exact,
    )


def tree_diameter(tree: WeightedTree) -> tuple[Number, int, int]:
    """(diameter, x, z) with (x, z) the lex-min endpoint pair."""
    t = build_distance_table(tree)
    x, z = t.diameter_pair
    return t.diameter, x, z


def center_vertex(table: DistanceTable) -> int:
    """Lex-min vertex of minimum eccentricity."""
    best = min(table.ecc)
    for i, e in enumerate(table.ecc):
        if e == best:
            return i
    raise AssertionError("unreachable")


def path_vertices(tree: WeightedTree, a: int, b: int) -> list[int]:
    """Vertex sequence of the unique a..b path."""
    parent = [-1] * tree.n
    seen = [False] * tree.n
    seen[a] = True
    stack = [a]
    adj = tree.adjacency
    while stack:
        u = stack.pop()
        if u == b:
            break
        for v, _ in adj[u]:
            if not seen[v]:
                seen[v] = True
                parent[v] = u
                stack.append(v)
    out = [b]
    while out[-1] != a:
        out.append(parent[out[-1]])
    out.reverse()
    return out


# ---------------------------------------------------------------------------
# Segment predicates


def orientation(a: Point, b: Point, c: Point) -> int:
    """Sign of the cross product (b-a) x (c-a): 1 ccw, -1 cw, 0 collinear.

    Exact for exact inputs; floats get a relative tolerance band.
    """
    t1 = (b.x - a.x) * (c.y - a.y)
    t2 = (b.y - a.y) * (c.x - a.x)
    cross = t1 - t2
    if is_exact(cross):
        return (cross > 0) - (cross < 0)
    scale = max(1.0, abs(float(t1)), abs(float(t2)))
    c = float(cross)
    if abs(c) <= TOLERANCE * scale:
        return 0
    return 1 if c > 0 else -1


def _on_segment(a: Point, b: Point, c: Point) -> bool:
    """c collinear with a-b assumed; is c within the bounding box of a-b?"""
    lo_x, hi_x = (a.x, b.x) if a.x <= b.x else (b.x, a.x)
    lo_y, hi_y = (a.y, b.y) if a.y <= b.y else (b.y, a.y)
    return lo_x <= c.x <= hi_x and lo_y <= c.y <= hi_y


def segments_properly_cross(p1: Point, p2: Point, p3: Point, p4: Point) -> bool:
    """True iff the open segments cross at a single interior point."""
    o1 = orientation(p1, p2, p3)
    o2 = orientation(p1, p2, p4)
    o3 = orientation(p3, p4, p1)
    o4 = orientation(p3, p4, p2)
    return o1 * o2 < 0 and o3 * o4 < 0


def segments_intersect(p1: Point, p2: Point, p3: Point, p4: Point) -> bool:
    """True iff the closed segments share at least one point."""
    if segments_properly_cross(p1, p2, p3, p4):
        return True
    if orientation(p1, p2, p3) == 0 and _on_segment(p1, p2, p3):
        return True
    if orientation(p1, p2, p4) == 0 and _on_segment(p1, p2, p4):
        return True
    if orientation(p3, p4, p1) == 0 and _on_segment(p3, p4, p1):
        return True
    if orientation(p3, p4, p2) == 0 and _on_segment(p3, p4, p2):
        return True
    return False


# ---------------------------------------------------------------------------
# General embedded graphs (used by the reduced-diameter reduction)


@dataclass(frozen=True)
class PlanarGraph:
    """Geometric graph: straight-line edges, weights = Euclidean lengths."""

    points: tuple[Point, ...]
    edges: tuple[tuple[int, int], ...]
    labels: tuple[str, ...] | None = None

    def __init__(self, points: Sequence, edges: Iterable, labels=None):
        pts = tuple(_as_point(p) for p in points)
        n = len(pts)
        es = []
        seen = set()
        for e in edges:
            u, v = e[0], e[1]
            if not (0 <= u < n and 0 <= v < n) or u == v:
                raise ValueError(f"bad edge ({u},{v})")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ValueError(f"duplicate edge {key}")
            seen.add(key)
            es.append(key)
        if labels is not None:
            labels = tuple(labels)
            if len(labels) != n:
                raise ValueError("labels length mismatch")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "edges", tuple(es))
        object.__setattr__(self, "labels", labels)

    @property
    def n(self) -> int:
        return len(self.points)

    @cached_property
    def adjacency(self) -> tuple[tuple[tuple[int, Number], ...], ...]:
        adj: list[list[tuple[int, Number]]] = [[] for _ in self.points]
        for u, v in self.edges:
            w = euclidean_distance(self.points[u], self.points[v])
            adj[u].append((v, w))
            adj[v].append((u, w))
        return tuple(tuple(a) for a in adj)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def with_edges(self, extra: Iterable[tuple[int, int]]) -> "PlanarGraph":
        return PlanarGraph(self.points, list(self.edges) + list(extra), self.labels)


def validate_planar(graph: PlanarGraph) -> list[tuple[int, int]]:
    """Indices (i, j) of edge pairs whose straight segments conflict.

    Non-adjacent edge pairs may not intersect at all. Edge pairs sharing an
    endpoint may touch only at that endpoint (collinear overlap is flagged).
    """
    pts = graph.points
    es = graph.edges
    bad = []
    for i in range(len(es)):
        a, b = es[i]
        pa, pb = pts[a], pts[b]
        for j in range(i + 1, len(es)):
            c, d = es[j]
            if a in (c, d) or b in (c, d):
                # shared endpoint: only collinear overlap can go wrong
                shared = a if a in (c, d) else b
                oa = a if shared != a else b
                oc = c if shared != c else d
                if orientation(pts[shared], pts[oa], pts[oc]) == 0:
                    # other endpoints on the same ray through shared -> overlap
                    if _on_segment(pts[shared], pts[oa], pts[oc]) or _on_segment(
                        pts[shared], pts[oc], pts[oa]
                    ):
                        bad.append((i, j))
                continue
            if segments_intersect(pa, pb, pts[c], pts[d]):
                bad.append((i, j))
    return bad


def dijkstra(
    n: int,
    adjacency: Sequence[Sequence[tuple[int, Number]]],
    source: int,
) -> list[Number]:
    INF = math.inf
    dist: list[Number] = [INF] * n
    dist[source] = 0
    heap: list[tuple[float, int]] = [(0.0, source)]
    done = [False] * n
    while heap:
        _, u = heapq.heappop(heap)
        if done[u]:
            continue
        done[u] = True
        du = dist[u]
        for v, w in adjacency[u]:
            nd = du + w
            if dist[v] is INF or nd < dist[v]:
                dist[v] = nd
                heapq.heappush(heap, (float(nd), v))
    return dist


def graph_all_pairs(graph: PlanarGraph) -> list[list[Number]]:
    return [dijkstra(graph.n, graph.adjacency, s) for s in range(graph.n)]
