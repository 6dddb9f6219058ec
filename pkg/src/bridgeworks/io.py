"""Text and JSON formats for trees, graphs, SAT instances, and integer sets.

Tree text format:
    n m            <- vertex and edge counts (m = n-1)
    id x y         <- n rows, ids must cover 0..n-1 in any order
    u v [weight]   <- m rows; a weight column makes the tree explicit
Blank lines and '#' comments are skipped. Numeric literals: plain integers
stay int, 'p/q' parses to an exact rational, anything with '.' or an
exponent becomes a float. Geometric trees serialize without the weight
column; explicit trees keep it.

SAT instances use the DIMACS-like form 'p cnf <vars> <clauses>' with three
literals and a terminating 0 per clause line; 'c' lines are comments.
"""

from __future__ import annotations

import json
import math
import random
from fractions import Fraction

from .geometry import WeightedTree
from .numerics import Number, is_exact
from .reductions.sat import OneInThreeSatInstance


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        loc = ""
        if line is not None:
            loc = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        super().__init__(message + loc)
        self.line = line
        self.column = column


def parse_number(token: str, line: int | None = None, column: int | None = None) -> Number:
    try:
        return int(token)
    except ValueError:
        pass
    if "/" in token:
        try:
            return Fraction(token)
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"bad rational literal {token!r}", line, column) from None
    try:
        value = float(token)
    except ValueError:
        raise ParseError(f"bad numeric literal {token!r}", line, column) from None
    if not math.isfinite(value):
        raise ParseError(f"non-finite literal {token!r}", line, column)
    return value


def format_number(x: Number) -> str:
    if isinstance(x, bool):
        raise TypeError("bool is not a coordinate")
    if isinstance(x, int):
        return str(x)
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return str(x.numerator)
        return f"{x.numerator}/{x.denominator}"
    return repr(float(x))


def _content_lines(text: str):
    """Yield (line_number, tokens, raw) for non-blank, non-comment lines."""
    for i, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].strip()
        if not stripped:
            continue
        yield i, stripped.split(), raw


def _token_column(raw: str, tokens: list[str], idx: int) -> int:
    pos = 0
    for j, tok in enumerate(tokens):
        found = raw.find(tok, pos)
        if found < 0:
            return 1
        if j == idx:
            return found + 1
        pos = found + len(tok)
    return 1


def _parse_points_edges(text: str, *, weights_allowed: bool):
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError("empty input")
    ln, toks, raw = lines[0]
    if len(toks) != 2:
        raise ParseError("header must be 'n m'", ln, 1)
    try:
        n, m = int(toks[0]), int(toks[1])
    except ValueError:
        raise ParseError("header must hold two integers", ln, 1) from None
    if n < 1 or m < 0:
        raise ParseError("header counts out of range", ln, 1)
    if len(lines) != 1 + n + m:
        raise ParseError(
            f"expected {1 + n + m} content lines for n={n}, m={m}, got {len(lines)}",
            lines[-1][0],
        )
    points: list = [None] * n
    for ln, toks, raw in lines[1 : 1 + n]:
        if len(toks) != 3:
            raise ParseError("vertex row must be 'id x y'", ln, 1)
        try:
            vid = int(toks[0])
        except ValueError:
            raise ParseError(f"bad vertex id {toks[0]!r}", ln, 1) from None
        if not 0 <= vid < n:
            raise ParseError(f"vertex id {vid} out of range 0..{n - 1}", ln, 1)
        if points[vid] is not None:
            raise ParseError(f"duplicate vertex id {vid}", ln, 1)
        x = parse_number(toks[1], ln, _token_column(raw, toks, 1))
        y = parse_number(toks[2], ln, _token_column(raw, toks, 2))
        points[vid] = (x, y)
    edges = []
    saw_weight = False
    saw_bare = False
    for ln, toks, raw in lines[1 + n :]:
        if len(toks) not in (2, 3) or (len(toks) == 3 and not weights_allowed):
            raise ParseError("edge row must be 'u v' or 'u v weight'", ln, 1)
        try:
            u, v = int(toks[0]), int(toks[1])
        except ValueError:
            raise ParseError("edge endpoints must be integers", ln, 1) from None
        for e in (u, v):
            if not 0 <= e < n:
                raise ParseError(f"edge endpoint {e} out of range", ln, 1)
        if len(toks) == 3:
            saw_weight = True
            w = parse_number(toks[2], ln, _token_column(raw, toks, 2))
            edges.append((u, v, w))
        else:
            saw_bare = True
            edges.append((u, v))
    if saw_weight and saw_bare:
        raise ParseError("mixed weighted and unweighted edge rows", lines[-1][0])
    return points, edges, saw_weight


def parse_tree(text: str) -> WeightedTree:
    points, edges, explicit = _parse_points_edges(text, weights_allowed=True)
    try:
        return WeightedTree(points, edges, explicit_weights=explicit)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def serialize_tree(tree: WeightedTree) -> str:
    out = [f"{tree.n} {len(tree.edges)}"]
    for i, (x, y) in enumerate(tree.points):
        out.append(f"{i} {format_number(x)} {format_number(y)}")
    for u, v, w in tree.edges:
        if tree.explicit_weights:
            out.append(f"{u} {v} {format_number(w)}")
        else:
            out.append(f"{u} {v}")
    return "\n".join(out) + "\n"


def parse_graph(text: str):
    """Unweighted geometric graph: same layout, bare edge rows."""
    points, edges, _ = _parse_points_edges(text, weights_allowed=False)
    return points, [tuple(e[:2]) for e in edges]


def serialize_graph(points, edges) -> str:
    out = [f"{len(points)} {len(edges)}"]
    for i, (x, y) in enumerate(points):
        out.append(f"{i} {format_number(x)} {format_number(y)}")
    for u, v in edges:
        out.append(f"{u} {v}")
    return "\n".join(out) + "\n"


def parse_pairs(text: str) -> list[tuple[int, int]]:
    out = []
    for ln, toks, _ in _content_lines(text):
        if len(toks) != 2:
            raise ParseError("pair row must be 'a b'", ln, 1)
        try:
            out.append((int(toks[0]), int(toks[1])))
        except ValueError:
            raise ParseError("pair entries must be integers", ln, 1) from None
    return out


def serialize_pairs(pairs) -> str:
    return "".join(f"{a} {b}\n" for a, b in pairs)


# ---------------------------------------------------------------------------
# JSON mirror


def _number_to_json(x: Number):
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return format_number(x)
    return float(x)


def _number_from_json(v) -> Number:
    if isinstance(v, bool):
        raise ParseError("bool is not a number")
    if isinstance(v, int):
        return v
    if isinstance(v, float):
        return v
    if isinstance(v, str):
        return parse_number(v)
    raise ParseError(f"bad JSON number {v!r}")


def tree_to_json_dict(tree: WeightedTree) -> dict:
    d = {
        "n": tree.n,
        "points": [[_number_to_json(x), _number_to_json(y)] for x, y in tree.points],
        "explicit_weights": tree.explicit_weights,
    }
    if tree.explicit_weights:
        d["edges"] = [[u, v, _number_to_json(w)] for u, v, w in tree.edges]
    else:
        d["edges"] = [[u, v] for u, v, _ in tree.edges]
    if tree.labels is not None:
        d["labels"] = list(tree.labels)
    return d


def tree_from_json_dict(d: dict) -> WeightedTree:
    try:
        points = [(_number_from_json(x), _number_from_json(y)) for x, y in d["points"]]
        raw_edges = d["edges"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed tree JSON: {exc}") from exc
    explicit = bool(d.get("explicit_weights", any(len(e) == 3 for e in raw_edges)))
    edges = []
    for e in raw_edges:
        if len(e) == 3:
            edges.append((int(e[0]), int(e[1]), _number_from_json(e[2])))
        else:
            edges.append((int(e[0]), int(e[1])))
    labels = tuple(d["labels"]) if "labels" in d else None
    try:
        return WeightedTree(points, edges, labels=labels, explicit_weights=explicit)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def serialize_tree_json(tree: WeightedTree) -> str:
    return json.dumps(tree_to_json_dict(tree), indent=2) + "\n"


def parse_tree_json(text: str) -> WeightedTree:
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"bad JSON: {exc}") from exc
    return tree_from_json_dict(d)


# ---------------------------------------------------------------------------
# SAT and integer lists


def parse_sat(text: str) -> OneInThreeSatInstance:
    n_vars = None
    n_clauses = None
    clauses = []
    for ln, toks, _ in _content_lines(text):
        if toks[0] == "c":
            continue
        if toks[0] == "p":
            if n_vars is not None:
                raise ParseError("duplicate problem line", ln, 1)
            if len(toks) != 4 or toks[1] != "cnf":
                raise ParseError("problem line must be 'p cnf <vars> <clauses>'", ln, 1)
            try:
                n_vars, n_clauses = int(toks[2]), int(toks[3])
            except ValueError:
                raise ParseError("problem line counts must be integers", ln, 1) from None
            continue
        if n_vars is None:
            raise ParseError("clause before problem line", ln, 1)
        try:
            lits = [int(t) for t in toks]
        except ValueError:
            raise ParseError("clause literals must be integers", ln, 1) from None
        if len(lits) != 4 or lits[3] != 0:
            raise ParseError("clause line must hold 3 literals and a trailing 0", ln, 1)
        clauses.append(tuple(lits[:3]))
    if n_vars is None:
        raise ParseError("missing problem line")
    if n_clauses is not None and n_clauses != len(clauses):
        raise ParseError(f"problem line promises {n_clauses} clauses, found {len(clauses)}")
    try:
        return OneInThreeSatInstance(n_vars, tuple(clauses))
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def serialize_sat(inst: OneInThreeSatInstance) -> str:
    out = [f"p cnf {inst.n_vars} {inst.m}"]
    for c in inst.clauses:
        out.append(f"{c[0]} {c[1]} {c[2]} 0")
    return "\n".join(out) + "\n"


def parse_integers(text: str) -> tuple[int, ...]:
    out = []
    for ln, toks, _ in _content_lines(text):
        if len(toks) != 1:
            raise ParseError("expected one integer per line", ln, 1)
        try:
            out.append(int(toks[0]))
        except ValueError:
            raise ParseError(f"bad integer {toks[0]!r}", ln, 1) from None
    return tuple(out)


def serialize_integers(values) -> str:
    return "".join(f"{v}\n" for v in values)


# ---------------------------------------------------------------------------
# Seeded random trees


def gen_random_tree(
    n: int,
    seed: int,
    *,
    bbox: tuple[Number, Number, Number, Number] = (0, 0, 100, 100),
    grid: bool = False,
    explicit_weight_range: tuple[int, int] | None = None,
) -> WeightedTree:
    """Random tree by uniform parent attachment: vertex i >= 1 attaches to a
    uniform parent among 0..i-1. grid=True samples distinct integer lattice
    points inside bbox (a zero-height bbox gives exact collinear instances);
    otherwise coordinates are uniform floats. explicit_weight_range=(lo, hi)
    assigns integer edge weights instead of geometric lengths.
    """
    if n < 1:
        raise ValueError("need at least one vertex")
    x0, y0, x1, y1 = bbox
    if x1 < x0 or y1 < y0:
        raise ValueError("bbox must satisfy x0 <= x1 and y0 <= y1")
    rng = random.Random(seed)
    if grid:
        xs = range(int(x0), int(x1) + 1)
        ys = range(int(y0), int(y1) + 1)
        capacity = len(xs) * len(ys)
        if capacity < n:
            raise ValueError(f"grid bbox holds {capacity} lattice points, need {n}")
        if capacity <= 4 * n * n or capacity <= 4096:
            population = [(x, y) for x in xs for y in ys]
            points = rng.sample(population, n)
        else:
            chosen: set[tuple[int, int]] = set()
            while len(chosen) < n:
                chosen.add((rng.randrange(int(x0), int(x1) + 1),
                            rng.randrange(int(y0), int(y1) + 1)))
            points = sorted(chosen)
            rng.shuffle(points)
    else:
        seen: set[tuple[float, float]] = set()
        points = []
        while len(points) < n:
            p = (rng.uniform(float(x0), float(x1)), rng.uniform(float(y0), float(y1)))
            if p not in seen:
                seen.add(p)
                points.append(p)
    edges = []
    for i in range(1, n):
        parent = rng.randrange(i)
        if explicit_weight_range is not None:
            lo, hi = explicit_weight_range
            edges.append((parent, i, rng.randint(lo, hi)))
        else:
            edges.append((parent, i))
    return WeightedTree(
        points,
        edges,
        explicit_weights=explicit_weight_range is not None,
    )
