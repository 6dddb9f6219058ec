"""File formats and the command-line driver.

Round-trips must be byte-identical after one serialize/parse cycle, and the
--json run reports must validate against the bundled schema and reproduce
exactly apart from duration_ms.
"""

from __future__ import annotations

import json
from fractions import Fraction
from importlib import resources

import jsonschema
import pytest

from bridgeworks import WeightedTree, solve_exact
from bridgeworks.cli import main
from bridgeworks.io import (
    ParseError,
    format_number,
    gen_random_tree,
    parse_graph,
    parse_integers,
    parse_number,
    parse_pairs,
    parse_sat,
    parse_tree,
    parse_tree_json,
    serialize_graph,
    serialize_integers,
    serialize_pairs,
    serialize_sat,
    serialize_tree,
    serialize_tree_json,
)
from bridgeworks.reductions import OneInThreeSatInstance


def geometric_tree():
    return WeightedTree([(0, 0), (3, 4), (Fraction(1, 2), 2)], [(0, 1), (1, 2)])


def explicit_tree():
    return WeightedTree(
        [(0, 0), (10, 0), (20, 0)],
        [(0, 1, Fraction(7, 3)), (1, 2, 4)],
        explicit_weights=True,
    )


# ------------------------------------------------------------------- numbers

def test_number_round_trip():
    for x in (0, -17, Fraction(7, 3), Fraction(-1, 2), 2.5, 1e-9):
        back = parse_number(format_number(x))
        assert back == x
        assert type(back) is type(x)
    assert format_number(Fraction(6, 3)) == "2"  # whole rationals print as ints


def test_parse_number_errors_carry_location():
    with pytest.raises(ParseError) as ei:
        parse_number("3/0", line=4, column=9)
    assert ei.value.line == 4 and ei.value.column == 9
    with pytest.raises(ParseError):
        parse_number("inf")
    with pytest.raises(ParseError):
        parse_number("abc")


# --------------------------------------------------------------------- trees

def test_tree_text_round_trip_is_byte_stable():
    for t in (geometric_tree(), explicit_tree()):
        text = serialize_tree(t)
        again = serialize_tree(parse_tree(text))
        assert again == text
    assert "7/3" in serialize_tree(explicit_tree())
    assert serialize_tree(geometric_tree()).count("\n") == 1 + 3 + 2


def test_tree_text_comments_and_blank_lines():
    text = "# header\n3 2\n\n0 0 0\n1 3 4  # hyp 5\n2 1/2 2\n0 1\n1 2\n"
    t = parse_tree(text)
    assert t.n == 3
    assert t.points[2] == (Fraction(1, 2), 2)
    assert not t.explicit_weights


@pytest.mark.parametrize(
    "text,line",
    [
        ("", None),
        ("3\n", 1),
        ("2 1\n0 0 0\n1 1 1\n0 1\n0 1\n", 5),  # extra content line
        ("2 1\n0 0 0\n0 1 1\n0 1\n", 3),  # duplicate id
        ("2 1\n0 0 0\n5 1 1\n0 1\n", 3),  # id out of range
        ("3 2\n0 0 0\n1 1 0\n2 2 0\n0 1 5\n1 2\n", 6),  # mixed edge rows
        ("2 1\n0 0 0\n1 1 1\n0 9\n", 4),  # endpoint out of range
    ],
)
def test_tree_parse_errors_point_at_the_line(text, line):
    with pytest.raises(ParseError) as ei:
        parse_tree(text)
    if line is not None:
        assert ei.value.line == line


def test_tree_json_round_trip():
    labeled = WeightedTree(
        [(0, 0), (1, 0)], [(0, 1)], labels=("root", "tip")
    )
    for t in (geometric_tree(), explicit_tree(), labeled):
        text = serialize_tree_json(t)
        back = parse_tree_json(text)
        assert serialize_tree_json(back) == text
        assert back.points == t.points
        assert back.edges == t.edges
        assert back.labels == t.labels
    # exact coordinates survive as strings, not floats
    assert '"1/2"' in serialize_tree_json(geometric_tree())
    with pytest.raises(ParseError):
        parse_tree_json("{not json")


# ------------------------------------------------------- graphs, pairs, sat

def test_graph_round_trip_and_weight_rejection():
    pts = [(0, 0), (4, 0), (2, 3)]
    edges = [(0, 1), (1, 2), (2, 0)]
    text = serialize_graph(pts, edges)
    p2, e2 = parse_graph(text)
    assert p2 == pts and e2 == edges
    with pytest.raises(ParseError):
        parse_graph("2 1\n0 0 0\n1 1 1\n0 1 5\n")


def test_pairs_and_integers_round_trip():
    pairs = [(0, 3), (2, 2), (5, 1)]
    assert parse_pairs(serialize_pairs(pairs)) == pairs
    vals = (3, -40, 0, 12345678901234567890)
    assert parse_integers(serialize_integers(vals)) == vals
    with pytest.raises(ParseError):
        parse_integers("1 2\n")


def test_sat_round_trip_and_errors():
    inst = OneInThreeSatInstance(4, ((1, -2, 3), (-1, 2, 4)))
    text = serialize_sat(inst)
    back = parse_sat("c comment\n" + text)
    assert back.n_vars == 4 and back.clauses == inst.clauses
    assert serialize_sat(back) == text
    with pytest.raises(ParseError):
        parse_sat("1 2 3 0\n")  # clause before problem line
    with pytest.raises(ParseError):
        parse_sat("p cnf 3 2\n1 2 3 0\n")  # promised 2 clauses
    with pytest.raises(ParseError):
        parse_sat("p cnf 3 1\n1 2 0\n")  # not three literals


def test_gen_random_tree_properties():
    a = gen_random_tree(12, seed=7)
    b = gen_random_tree(12, seed=7)
    assert a.points == b.points and a.edges == b.edges
    g = gen_random_tree(10, seed=3, bbox=(0, 0, 30, 0), grid=True)
    assert len(set(g.points)) == 10
    assert all(y == 0 for _, y in g.points)
    w = gen_random_tree(8, seed=5, explicit_weight_range=(2, 9))
    assert w.explicit_weights
    assert all(2 <= e[2] <= 9 for e in w.edges)
    with pytest.raises(ValueError):
        gen_random_tree(0, seed=1)
    with pytest.raises(ValueError):
        gen_random_tree(50, seed=1, bbox=(0, 0, 6, 0), grid=True)


# ----------------------------------------------------------------------- CLI

SCHEMA = json.loads(
    resources.files("bridgeworks").joinpath("schemas/run_report.schema.json").read_text()
)


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def report_of(capsys, *argv):
    code, out, _ = run_cli(capsys, *argv)
    rep = json.loads(out)
    jsonschema.validate(rep, SCHEMA)
    assert rep["exit_code"] == code
    return code, rep


def write_tree(tmp_path, name, tree):
    p = tmp_path / name
    p.write_text(serialize_tree(tree))
    return str(p)


@pytest.fixture
def tree_files(tmp_path):
    t1 = WeightedTree([(0, 0), (4, 0), (4, 3)], [(0, 1), (1, 2)])
    t2 = WeightedTree([(10, 0), (14, 0)], [(0, 1)])
    return write_tree(tmp_path, "t1.txt", t1), write_tree(tmp_path, "t2.txt", t2), t1, t2


def test_cli_bridge_exact_matches_library(tree_files, capsys):
    p1, p2, t1, t2 = tree_files
    code, rep = report_of(capsys, "bridge", "exact", p1, p2, "--json")
    assert code == 0
    sol = solve_exact(t1, t2)
    assert rep["result"]["p"] == sol.p and rep["result"]["q"] == sol.q
    assert rep["result"]["value"] == pytest.approx(float(sol.value))
    assert rep["result"]["backend"] == sol.backend
    assert [i["kind"] for i in rep["instances"]] == ["tree", "tree"]


def test_cli_reports_reproduce_modulo_duration(tree_files, capsys):
    p1, p2, _, _ = tree_files
    _, rep_a = report_of(capsys, "twin", "solve", p1, p2, "--json")
    _, rep_b = report_of(capsys, "twin", "solve", p1, p2, "--json")
    rep_a.pop("duration_ms")
    rep_b.pop("duration_ms")
    assert rep_a == rep_b


def test_cli_decide_exit_codes(tree_files, capsys):
    p1, p2, t1, t2 = tree_files
    # leaves 0 in t1 and 1 in t2 through bridge (1, 0): 4 + 6 + 4
    code, rep = report_of(capsys, "bridge", "decide", p1, p2, "--c1", "6", "--c2", "14", "--json")
    assert code == 0
    assert rep["result"]["witness"] is not None
    code, rep = report_of(capsys, "bridge", "decide", p1, p2, "--c1", "6", "--c2", "1", "--json")
    assert code == 1
    assert rep["result"]["witness"] is None


def test_cli_bridge_human_output(tree_files, capsys):
    p1, p2, _, _ = tree_files
    code, out, _ = run_cli(capsys, "bridge", "exact", p1, p2)
    assert code == 0
    assert out.startswith("bridge (")
    assert "merged diameter" in out


def test_cli_bridge_approx_runs_without_dot_option(tree_files, capsys):
    p1, p2, _, _ = tree_files
    code, rep = report_of(capsys, "bridge", "approx", p1, p2, "--json")
    assert code == 0
    assert rep["result"]["method"] == "greedy"


def test_cli_emit_dot(tree_files, tmp_path, capsys):
    p1, p2, _, _ = tree_files
    dot = tmp_path / "merged.dot"
    code, _, _ = run_cli(capsys, "bridge", "exact", p1, p2, "--emit-dot", str(dot))
    assert code == 0
    body = dot.read_text()
    assert body.startswith("graph merged {")
    assert "a0 -- a1" in body and "[style=dashed]" in body


def test_cli_forest_connect(tmp_path, capsys):
    paths = []
    for i, x0 in enumerate((0, 50, 100)):
        t = WeightedTree([(x0, 0), (x0 + 3, 0)], [(0, 1)])
        paths.append(write_tree(tmp_path, f"f{i}.txt", t))
    code, rep = report_of(capsys, "forest", "connect", *paths, "--json")
    assert code == 0
    assert len(rep["result"]["bridges"]) == 2
    assert 0 <= rep["result"]["hub"] < 3


def test_cli_gen_round_trips(tmp_path, capsys):
    out2 = tmp_path / "fig2"
    code, rep = report_of(capsys, "gen", "fig2", "--n", "5", "--eps", "1/100",
                          "--out-dir", str(out2), "--json")
    assert code == 0
    for p in rep["result"]["written"]:
        parse_tree(open(p).read())
    out3 = tmp_path / "fig3"
    code, rep = report_of(capsys, "gen", "fig3", "--eps", "1/100",
                          "--out-dir", str(out3), "--json")
    assert code == 0
    for p in rep["result"]["written"]:
        parse_tree(open(p).read())
    assert rep["result"]["vertices"] == [4, 4]


def test_cli_reduce_sat_to_onebridge(tmp_path, capsys):
    sat = tmp_path / "f.cnf"
    sat.write_text("p cnf 4 2\n1 2 3 0\n-1 2 4 0\n")
    out = tmp_path / "red"
    code, rep = report_of(capsys, "reduce", "sat-to-onebridge", "--sat", str(sat),
                          "--out-dir", str(out), "--json")
    assert code == 0
    t1 = parse_tree((out / "t1.txt").read_text())
    t2 = parse_tree((out / "t2.txt").read_text())
    assert t1.explicit_weights and t2.explicit_weights
    params = json.loads((out / "params.json").read_text())
    # terminals coincide, so the bridge width is zero
    assert parse_number(params["c1"]) == 0
    assert parse_number(params["c2"]) > parse_number(params["c"]) > 0
    assert rep["instances"][0]["kind"] == "sat"


def test_cli_reduce_sat_to_3sum(tmp_path, capsys):
    sat = tmp_path / "f.cnf"
    sat.write_text("p cnf 4 1\n1 -2 4 0\n")
    out = tmp_path / "s.txt"
    code, rep = report_of(capsys, "reduce", "sat-to-3sum", "--sat", str(sat),
                          "--out", str(out), "--json")
    assert code == 0
    vals = parse_integers(out.read_text())
    assert len(vals) == 2 ** (4 // 2 + 1) + 1 == rep["result"]["count"]
    assert min(vals) < 0  # the target element

    code, rep = report_of(capsys, "reduce", "sat-to-3sum", "--sat", str(sat),
                          "--k", "4", "--out", str(out), "--json")
    assert code == 0 and rep["result"]["k"] == 4
    parse_integers(out.read_text())


def test_cli_reduce_vc_to_rdbp(tmp_path, capsys):
    from bridgeworks.reductions import k4_embedding

    pts, edges = k4_embedding()
    g = tmp_path / "k4.txt"
    g.write_text(serialize_graph(pts, edges))
    out = tmp_path / "rdbp"
    code, rep = report_of(capsys, "reduce", "vc-to-rdbp", "--graph", str(g),
                          "--k", "3", "--out-dir", str(out), "--json")
    assert code == 0
    gp, ge = parse_graph((out / "graph.txt").read_text())
    assert len(gp) == rep["result"]["vertices"]
    assert len(parse_pairs((out / "pairs.txt").read_text())) == len(edges)
    assert len(parse_pairs((out / "candidates.txt").read_text())) == 4
    assert json.loads((out / "params.json").read_text())["budget"] == 3


def test_cli_verify_commands(tmp_path, capsys):
    sat = tmp_path / "f.cnf"
    sat.write_text("p cnf 3 1\n1 2 3 0\n")
    code, rep = report_of(capsys, "verify", "iff-onebridge", "--sat", str(sat), "--json")
    assert code == 0 and rep["result"]["consistent"]
    assert rep["result"]["sat"] is True

    code, rep = report_of(capsys, "verify", "iff-3sum", "--sat", str(sat), "--json")
    assert code == 0 and rep["result"]["consistent"]

    from bridgeworks.reductions import k4_embedding

    pts, edges = k4_embedding()
    g = tmp_path / "k4.txt"
    g.write_text(serialize_graph(pts, edges))
    code, rep = report_of(capsys, "verify", "iff-rdbp", "--graph", str(g), "--json")
    assert code == 0 and rep["result"]["consistent"]
    assert rep["result"]["cover_size"] == rep["result"]["budget_size"] == 3


def test_cli_backend_env_is_recorded(tree_files, capsys, monkeypatch):
    p1, p2, _, _ = tree_files
    monkeypatch.setenv("BRIDGEWORKS_BACKEND", "double")
    code, rep = report_of(capsys, "bridge", "exact", p1, p2, "--json")
    assert code == 0
    assert rep["backend_env"] == "double"
    assert rep["result"]["backend"] == "double"


def test_cli_usage_and_input_errors(tmp_path, capsys):
    assert main(["no-such-command"]) == 2
    capsys.readouterr()
    assert main(["bridge", "exact", "/nope/a.txt", "/nope/b.txt"]) == 2
    capsys.readouterr()
    bad = tmp_path / "bad.txt"
    bad.write_text("3\n")
    good = tmp_path / "g.txt"
    good.write_text(serialize_tree(WeightedTree([(0, 0), (1, 0)], [(0, 1)])))
    code = main(["bridge", "exact", str(bad), str(good)])
    assert code == 2
    assert "error:" in capsys.readouterr().err
