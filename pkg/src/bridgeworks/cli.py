"""Command-line interface.

Subcommands:
    bridge exact|approx|decide   single-bridge solvers and the decision form
    twin solve|brute             two vertex-disjoint bridges
    forest connect               connect a forest of trees through a hub
    gen fig2|fig3                named example instances
    reduce sat-to-onebridge | sat-to-3sum | vc-to-rdbp
    verify iff-onebridge | iff-3sum | iff-rdbp
    bench                        scaling measurements (informational)

Exit codes: 0 solved / verified true, 1 decision false or verification
disagreement, 2 input or usage error. --json prints a run report whose
bytes are reproducible except for duration_ms.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time

from . import bench as bench_mod
from .bridge import (
    approx_greedy,
    connect_forest,
    greedy_tightness_instance,
    one_bridge_decide,
    solve_exact,
)
from .geometry import WeightedTree
from .io import (
    ParseError,
    format_number,
    parse_graph,
    parse_number,
    parse_sat,
    parse_tree,
    serialize_integers,
    serialize_pairs,
    serialize_graph,
    serialize_tree,
)
from .numerics import is_exact
from .reductions import (
    cov_to_one_bridge,
    sat_to_cov,
    sat_to_ksum,
    sat_to_threesum,
    vc_to_rdbp,
    verify_ksum_iff,
    verify_one_bridge_iff,
    verify_rdbp_iff,
    verify_threesum_iff,
)
from .twin import brute_force_twin, solve_twin


def _num_json(x):
    if isinstance(x, bool):
        return x
    if isinstance(x, int):
        return x
    if is_exact(x):
        return format_number(x)
    return float(x)


def _file_digest(path: str) -> str:
    with open(path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()


def _load_tree(path: str) -> WeightedTree:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_tree(fh.read())


class _Run:
    """Collects the run report; human output goes to stdout unless --json."""

    def __init__(self, args):
        self.args = args
        self.t0 = time.perf_counter()
        self.report = {
            "command": [a for a in args._argv],
            "instances": [],
            "result": {},
            "seed": getattr(args, "seed", None),
            "backend_env": os.environ.get("BRIDGEWORKS_BACKEND"),
        }

    def add_instance(self, path: str, kind: str, **extra):
        entry = {"path": path, "kind": kind, "digest": _file_digest(path)}
        entry.update(extra)
        self.report["instances"].append(entry)

    def finish(self, result: dict, human_lines: list[str], exit_code: int) -> int:
        self.report["result"] = result
        self.report["exit_code"] = exit_code
        self.report["duration_ms"] = (time.perf_counter() - self.t0) * 1000.0
        if self.args.json:
            print(json.dumps(self.report, sort_keys=True, indent=2))
        else:
            for line in human_lines:
                print(line)
        return exit_code


def _tree_instance_meta(t: WeightedTree) -> dict:
    return {"vertices": t.n, "edges": len(t.edges)}


def _bridge_result(sol) -> dict:
    return {
        "p": sol.p,
        "q": sol.q,
        "bridge_length": _num_json(sol.bridge_length),
        "value": _num_json(sol.value),
        "merged_diameter": _num_json(sol.merged_diameter),
        "witness": list(sol.witness),
        "method": sol.method,
        "backend": sol.backend,
    }


def _twin_result(sol) -> dict:
    return {
        "bridge1": list(sol.bridge1),
        "bridge2": list(sol.bridge2),
        "value": _num_json(sol.value),
        "dominant_case": sol.dominant_case,
        "witness": list(sol.witness),
        "intersecting": sol.intersecting,
        "backend": sol.backend,
    }


def _emit_dot(path: str, t1: WeightedTree, t2: WeightedTree, bridges):
    lines = ["graph merged {", "  node [shape=point];"]
    for prefix, t in (("a", t1), ("b", t2)):
        for i, (x, y) in enumerate(t.points):
            lines.append(f'  {prefix}{i} [pos="{float(x)},{float(y)}!"];')
        for u, v, _ in t.edges:
            lines.append(f"  {prefix}{u} -- {prefix}{v};")
    for p, q in bridges:
        lines.append(f"  a{p} -- b{q} [style=dashed];")
    lines.append("}")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


# ---------------------------------------------------------------------------
# Subcommand handlers


def _cmd_bridge(args) -> int:
    run = _Run(args)
    t1 = _load_tree(args.t1)
    t2 = _load_tree(args.t2)
    run.add_instance(args.t1, "tree", **_tree_instance_meta(t1))
    run.add_instance(args.t2, "tree", **_tree_instance_meta(t2))
    if args.mode == "decide":
        c1 = parse_number(args.c1)
        c2 = parse_number(args.c2)
        witness = one_bridge_decide(t1, t2, c1, c2)
        result = {
            "c1": _num_json(c1),
            "c2": _num_json(c2),
            "witness": None
            if witness is None
            else {"p": witness.p, "q": witness.q, "x": witness.x, "y": witness.y},
        }
        if witness is None:
            return run.finish(result, ["no witness"], 1)
        return run.finish(
            result,
            [f"witness bridge ({witness.p}, {witness.q}) leaves ({witness.x}, {witness.y})"],
            0,
        )
    if args.mode == "exact":
        sol = solve_exact(t1, t2, threads=args.threads)
    else:
        sol = approx_greedy(t1, t2)
    if args.emit_dot:
        _emit_dot(args.emit_dot, t1, t2, [(sol.p, sol.q)])
    result = _bridge_result(sol)
    human = [
        f"bridge ({sol.p}, {sol.q}) length {format_number(sol.bridge_length)}",
        f"value {format_number(sol.value)}",
        f"merged diameter {format_number(sol.merged_diameter)}",
        f"witness pair {sol.witness}",
    ]
    return run.finish(result, human, 0)


def _cmd_twin(args) -> int:
    run = _Run(args)
    t1 = _load_tree(args.t1)
    t2 = _load_tree(args.t2)
    run.add_instance(args.t1, "tree", **_tree_instance_meta(t1))
    run.add_instance(args.t2, "tree", **_tree_instance_meta(t2))
    if args.mode == "solve":
        sol = solve_twin(t1, t2)
    else:
        sol = brute_force_twin(t1, t2, force=args.force)
    if args.emit_dot:
        _emit_dot(args.emit_dot, t1, t2, [sol.bridge1, sol.bridge2])
    result = _twin_result(sol)
    human = [
        f"bridges {sol.bridge1} and {sol.bridge2}",
        f"value {format_number(sol.value)}",
        f"dominant case {sol.dominant_case}, witness {sol.witness}",
        f"intersecting {str(sol.intersecting).lower()}",
    ]
    return run.finish(result, human, 0)


def _cmd_forest(args) -> int:
    run = _Run(args)
    trees = []
    for path in args.forests:
        t = _load_tree(path)
        run.add_instance(path, "tree", **_tree_instance_meta(t))
        trees.append(t)
    conn = connect_forest(trees)
    result = {
        "hub": conn.hub,
        "diameter": _num_json(conn.diameter),
        "bridges": [list(b) for b in conn.bridges],
    }
    human = [f"hub tree {conn.hub}", f"diameter {format_number(conn.diameter)}"]
    human += [f"bridge tree{i} v{u} -- tree{j} v{v}" for i, u, j, v in conn.bridges]
    return run.finish(result, human, 0)


def _write(path: str, content: str):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(content)


def _cmd_gen(args) -> int:
    run = _Run(args)
    eps = parse_number(args.eps)
    if args.which == "fig2":
        t1, t2 = greedy_tightness_instance(n=args.n, eps=eps)
    else:
        from .twin import crossing_optimum_instance

        t1, t2 = crossing_optimum_instance(eps=eps)
    paths = []
    if args.out_dir:
        os.makedirs(args.out_dir, exist_ok=True)
        for name, t in (("t1.txt", t1), ("t2.txt", t2)):
            p = os.path.join(args.out_dir, name)
            _write(p, serialize_tree(t))
            paths.append(p)
    else:
        sys.stdout.write(serialize_tree(t1))
        sys.stdout.write(serialize_tree(t2))
    result = {
        "which": args.which,
        "eps": _num_json(eps),
        "written": paths,
        "vertices": [t1.n, t2.n],
    }
    if args.which == "fig2":
        result["n"] = args.n
    return run.finish(result, [f"wrote {p}" for p in paths], 0)


def _cmd_reduce(args) -> int:
    run = _Run(args)
    if args.which in ("sat-to-onebridge", "sat-to-3sum"):
        with open(args.sat, "r", encoding="utf-8") as fh:
            sat = parse_sat(fh.read())
        run.add_instance(args.sat, "sat", variables=sat.n_vars, clauses=sat.m)
    if args.which == "sat-to-onebridge":
        cov = sat_to_cov(sat)
        t1, t2, params = cov_to_one_bridge(cov)
        os.makedirs(args.out_dir, exist_ok=True)
        p1 = os.path.join(args.out_dir, "t1.txt")
        p2 = os.path.join(args.out_dir, "t2.txt")
        pp = os.path.join(args.out_dir, "params.json")
        _write(p1, serialize_tree(t1))
        _write(p2, serialize_tree(t2))
        params_json = {
            "m": params.m,
            "c": format_number(params.c),
            "c1": format_number(params.c1),
            "c2": format_number(params.c2),
        }
        _write(pp, json.dumps(params_json, sort_keys=True, indent=2) + "\n")
        result = {
            "written": [p1, p2, pp],
            "params": params_json,
            "vertices": [t1.n, t2.n],
        }
        return run.finish(result, [f"wrote {p}" for p in result["written"]], 0)
    if args.which == "sat-to-3sum":
        if args.k is not None and args.k != 3:
            inst = sat_to_ksum(sat, args.k)
            values = inst.integers
            extra = {"k": args.k, "digits": inst.n_digits}
        else:
            inst3 = sat_to_threesum(sat)
            values = inst3.integers
            extra = {"k": 3, "digits": inst3.n_digits}
        text = serialize_integers(values)
        paths = []
        if args.out:
            _write(args.out, text)
            paths.append(args.out)
        else:
            sys.stdout.write(text)
        result = {"count": len(values), "written": paths}
        result.update(extra)
        return run.finish(result, [f"wrote {p}" for p in paths], 0)
    # vc-to-rdbp
    with open(args.graph, "r", encoding="utf-8") as fh:
        points, edges = parse_graph(fh.read())
    run.add_instance(args.graph, "graph", vertices=len(points), edges=len(edges))
    inst = vc_to_rdbp(points, edges, args.k)
    os.makedirs(args.out_dir, exist_ok=True)
    pg = os.path.join(args.out_dir, "graph.txt")
    ppr = os.path.join(args.out_dir, "pairs.txt")
    pc = os.path.join(args.out_dir, "candidates.txt")
    pj = os.path.join(args.out_dir, "params.json")
    _write(pg, serialize_graph(inst.graph.points, inst.graph.edges))
    _write(ppr, serialize_pairs(inst.pairs))
    _write(pc, serialize_pairs(inst.candidates))
    _write(
        pj,
        json.dumps(
            {"budget": inst.budget, "epsilon": inst.epsilon},
            sort_keys=True,
            indent=2,
        )
        + "\n",
    )
    result = {
        "written": [pg, ppr, pc, pj],
        "vertices": len(inst.graph.points),
        "edges": len(inst.graph.edges),
        "pairs": len(inst.pairs),
        "candidates": len(inst.candidates),
        "budget": inst.budget,
        "epsilon": inst.epsilon,
    }
    return run.finish(result, [f"wrote {p}" for p in result["written"]], 0)


def _cmd_verify(args) -> int:
    run = _Run(args)
    if args.which == "iff-onebridge":
        with open(args.sat, "r", encoding="utf-8") as fh:
            sat = parse_sat(fh.read())
        run.add_instance(args.sat, "sat", variables=sat.n_vars, clauses=sat.m)
        rep = verify_one_bridge_iff(sat)
        result = {
            "sat": rep.sat,
            "cov": rep.cov,
            "bridge": rep.bridge,
            "consistent": rep.consistent,
        }
        lines = [
            f"sat {str(rep.sat).lower()} / vectors {str(rep.cov).lower()} / "
            f"bridge {str(rep.bridge).lower()}",
            "consistent" if rep.consistent else "INCONSISTENT",
        ]
        return run.finish(result, lines, 0 if rep.consistent else 1)
    if args.which == "iff-3sum":
        with open(args.sat, "r", encoding="utf-8") as fh:
            sat = parse_sat(fh.read())
        run.add_instance(args.sat, "sat", variables=sat.n_vars, clauses=sat.m)
        rep = (
            verify_threesum_iff(sat)
            if args.k in (None, 3)
            else verify_ksum_iff(sat, args.k)
        )
        result = {"sat": rep.sat, "sum_hit": rep.sum_hit, "consistent": rep.consistent}
        lines = [
            f"sat {str(rep.sat).lower()} / sum {str(rep.sum_hit).lower()}",
            "consistent" if rep.consistent else "INCONSISTENT",
        ]
        return run.finish(result, lines, 0 if rep.consistent else 1)
    with open(args.graph, "r", encoding="utf-8") as fh:
        points, edges = parse_graph(fh.read())
    run.add_instance(args.graph, "graph", vertices=len(points), edges=len(edges))
    rep = verify_rdbp_iff(points, edges)
    result = {
        "cover_size": rep.cover_size,
        "budget_size": rep.budget_size,
        "subsets_match_covers": rep.subsets_match_covers,
        "consistent": rep.consistent,
    }
    lines = [
        f"cover {rep.cover_size} / budget {rep.budget_size} / "
        f"subsets match {str(rep.subsets_match_covers).lower()}",
        "consistent" if rep.consistent else "INCONSISTENT",
    ]
    return run.finish(result, lines, 0 if rep.consistent else 1)


def _cmd_bench(args) -> int:
    run = _Run(args)
    report = bench_mod.run_bench(seed=args.seed)
    lines = [
        f"exact exponent {report['exact']['exponent']:.2f} "
        f"over n={report['exact']['sizes']}",
        f"twin exponent {report['twin']['exponent']:.2f} "
        f"over n={report['twin']['sizes']}",
        f"approx/exact total time ratio {report['approx']['time_ratio_vs_exact']:.3f}",
    ]
    return run.finish(report, lines, 0)


# ---------------------------------------------------------------------------
# Parser


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="bridgeworks", description=__doc__)
    sub = ap.add_subparsers(dest="cmd", required=True)

    def common(p):
        p.add_argument("--json", action="store_true", help="print a run report")

    p = sub.add_parser("bridge", help="single bridge insertion")
    bsub = p.add_subparsers(dest="mode", required=True)
    for mode in ("exact", "approx", "decide"):
        bp = bsub.add_parser(mode)
        bp.add_argument("t1")
        bp.add_argument("t2")
        common(bp)
        if mode == "exact":
            bp.add_argument("--threads", type=int, default=1)
            bp.add_argument("--emit-dot", metavar="PATH")
        if mode == "decide":
            bp.add_argument("--c1", required=True)
            bp.add_argument("--c2", required=True)
        bp.set_defaults(func=_cmd_bridge, emit_dot=None)

    p = sub.add_parser("twin", help="two vertex-disjoint bridges")
    tsub = p.add_subparsers(dest="mode", required=True)
    for mode in ("solve", "brute"):
        tp = tsub.add_parser(mode)
        tp.add_argument("t1")
        tp.add_argument("t2")
        common(tp)
        tp.add_argument("--emit-dot", metavar="PATH")
        if mode == "brute":
            tp.add_argument("--force", action="store_true")
        tp.set_defaults(func=_cmd_twin, force=False)

    p = sub.add_parser("forest", help="connect a forest through a hub tree")
    fsub = p.add_subparsers(dest="mode", required=True)
    fp = fsub.add_parser("connect")
    fp.add_argument("forests", nargs="+")
    common(fp)
    fp.set_defaults(func=_cmd_forest)

    p = sub.add_parser("gen", help="named example instances")
    gsub = p.add_subparsers(dest="which", required=True)
    gp = gsub.add_parser("fig2")
    gp.add_argument("--n", type=int, required=True)
    gp.add_argument("--eps", required=True)
    gp.add_argument("--out-dir")
    common(gp)
    gp.set_defaults(func=_cmd_gen)
    gp = gsub.add_parser("fig3")
    gp.add_argument("--eps", required=True)
    gp.add_argument("--out-dir")
    common(gp)
    gp.set_defaults(func=_cmd_gen)

    p = sub.add_parser("reduce", help="hardness reductions")
    rsub = p.add_subparsers(dest="which", required=True)
    rp = rsub.add_parser("sat-to-onebridge")
    rp.add_argument("--sat", required=True)
    rp.add_argument("--out-dir", required=True)
    common(rp)
    rp.set_defaults(func=_cmd_reduce)
    rp = rsub.add_parser("sat-to-3sum")
    rp.add_argument("--sat", required=True)
    rp.add_argument("--k", type=int)
    rp.add_argument("--out")
    common(rp)
    rp.set_defaults(func=_cmd_reduce)
    rp = rsub.add_parser("vc-to-rdbp")
    rp.add_argument("--graph", required=True)
    rp.add_argument("--k", type=int, required=True)
    rp.add_argument("--out-dir", required=True)
    common(rp)
    rp.set_defaults(func=_cmd_reduce)

    p = sub.add_parser("verify", help="reduction equivalence checks")
    vsub = p.add_subparsers(dest="which", required=True)
    vp = vsub.add_parser("iff-onebridge")
    vp.add_argument("--sat", required=True)
    common(vp)
    vp.set_defaults(func=_cmd_verify)
    vp = vsub.add_parser("iff-3sum")
    vp.add_argument("--sat", required=True)
    vp.add_argument("--k", type=int)
    common(vp)
    vp.set_defaults(func=_cmd_verify)
    vp = vsub.add_parser("iff-rdbp")
    vp.add_argument("--graph", required=True)
    common(vp)
    vp.set_defaults(func=_cmd_verify)

    p = sub.add_parser("bench", help="scaling measurements")
    p.add_argument("--seed", type=int, default=0)
    common(p)
    p.set_defaults(func=_cmd_bench)

    return ap


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors already; normalize other codes
        return 2 if exc.code not in (0,) else 0
    args._argv = argv
    try:
        return args.func(args)
    except (ParseError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
