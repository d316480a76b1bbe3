from __future__ import annotations

import json

import pytest

from sfec.cli import main
from sfec.instance import (
    ParseError,
    instance_from_json,
    instance_to_json,
    load_instance,
    parse_cost,
    result_to_json,
)
from sfec.primal_dual import solve

from .conftest import FIXTURES

ALL_FIXTURES = sorted(p.stem for p in FIXTURES.glob("*.json"))


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def write(tmp_path, doc, name="inst.json"):
    path = tmp_path / name
    path.write_text(doc if isinstance(doc, str) else json.dumps(doc))
    return path


# ---------------------------------------------------------------- solve


def test_solve_triangle(capsys, fixture_path):
    code, out, _ = run(capsys, "solve", fixture_path("triangle"))
    assert code == 0
    assert "cost: 2\n" in out and "dual: 2\n" in out
    assert "edges: sa#0, at#1" in out


def test_solve_trace_and_json(capsys, fixture_path):
    code, out, _ = run(capsys, "solve", fixture_path("star"), "--trace")
    assert code == 0 and "iter 0:" in out and "eps=1/2" in out and "dual: 5/2" in out
    code, out, _ = run(capsys, "solve", fixture_path("triangle"), "--json")
    doc = json.loads(out)
    assert doc["cost"] == "2" and doc["final_edges"] == [0, 1]
    assert doc["history"][0] == {"cores": [[0], [2]], "epsilon": "1", "tight_edge": 0}


def test_solve_empty_family(capsys, fixture_path):
    code, out, _ = run(capsys, "solve", fixture_path("empty_family"))
    assert code == 0 and "cost: 0" in out and "edges: (none)" in out


def test_solve_infeasible_exit_2(capsys, fixture_path):
    code, _, err = run(capsys, "solve", fixture_path("infeasible"))
    assert code == 2 and "infeasible" in err


# ---------------------------------------------------------------- parse errors


@pytest.mark.parametrize(
    "doc, where",
    [
        ("{not json", "line 1"),
        ({"nodes": 2, "edges": [[0, 1, 1.5]], "family": {"type": "kcf", "k": 2}}, "edges[0][2]"),
        ({"nodes": 2, "edges": [[0, 0, "1"]], "family": {"type": "kcf", "k": 2}}, "edges[0]"),
        ({"nodes": 2, "edges": [[0, 5, "1"]], "family": {"type": "kcf", "k": 2}}, "edges[0]"),
        ({"nodes": 2, "edges": [[0, 1, "-1"]], "family": {"type": "kcf", "k": 2}}, "edges[0][2]"),
        ({"nodes": 2, "edges": [], "family": {"type": "bogus"}}, "family.type"),
        ({"nodes": 3, "edges": [], "family": {"type": "t_join", "terminals": [0, 1, 2]}}, "family"),
        ({"nodes": 3, "edges": [], "family": {"type": "kcf"}}, "family"),
        ({"nodes": 3, "edges": []}, "$"),
        ([1, 2], "$"),
    ],
)
def test_parse_errors_exit_1(capsys, tmp_path, doc, where):
    code, _, err = run(capsys, "solve", write(tmp_path, doc))
    assert code == 1
    assert where in err


def test_missing_file_exit_1(capsys, tmp_path):
    code, _, _ = run(capsys, "solve", tmp_path / "nope.json")
    assert code == 1


def test_parse_cost_forms():
    assert parse_cost("3") == 3 and parse_cost("2.5") == parse_cost("5/2") and parse_cost(7) == 7
    for bad in (1.5, True, None, "x", "1/0"):
        with pytest.raises(ParseError):
            parse_cost(bad)


# ---------------------------------------------------------------- exact / verify / classify


def test_exact(capsys, fixture_path):
    code, out, _ = run(capsys, "exact", fixture_path("triangle"))
    assert code == 0 and out.splitlines()[0] == "2"
    code, out, _ = run(capsys, "exact", fixture_path("star"), "--method", "enumerate", "--json")
    assert json.loads(out) == {"optimum": "3", "edges": [0, 1]}


def test_exact_limit_exit_3(capsys, tmp_path):
    doc = {"nodes": 2, "edges": [[0, 1, "1"]] * 23, "family": {"type": "st_path", "s": 0, "t": 1}}
    code, _, err = run(capsys, "exact", write(tmp_path, doc))
    assert code == 3 and "limit" in err


def test_verify_triangle_all_pass(capsys, fixture_path):
    code, out, _ = run(capsys, "verify", fixture_path("triangle"))
    assert code == 0
    lines = out.splitlines()
    assert lines[-1] == "overall: pass"
    assert all(line.split()[1] == "pass" for line in lines[:-1])


def test_verify_external_result(capsys, tmp_path, fixture_path):
    inst = load_instance(fixture_path("sf_kcf"))
    doc = result_to_json(solve(inst.graph, inst.family))
    code, out, _ = run(capsys, "verify", fixture_path("sf_kcf"), "--result", write(tmp_path, doc, "r.json"), "--json")
    assert code == 0 and json.loads(out)["passed"] is True
    doc["dual_total"] = "1000"
    code, out, _ = run(capsys, "verify", fixture_path("sf_kcf"), "--result", write(tmp_path, doc, "r.json"))
    assert code == 4 and "dual_feasible" in out and "overall: FAIL" in out


def test_verify_non_semi_fixture_exit_4(capsys, fixture_path):
    code, out, _ = run(capsys, "verify", fixture_path("example3"))
    assert code == 4 and "laminar_witness" in out


def test_classify_example1(capsys, fixture_path):
    code, out, _ = run(capsys, "classify", fixture_path("example1"))
    assert code == 0
    assert out.splitlines()[0] == "semi-uncrossable: yes, uncrossable: no (witness A={s,t}, B={x,s})"


def test_classify_examples_3_4(capsys, fixture_path):
    _, out, _ = run(capsys, "classify", fixture_path("example3"))
    assert out.startswith("semi-uncrossable: no (witness A={s,t}, B={s,x})")
    _, out, _ = run(capsys, "classify", fixture_path("example4"))
    assert out.startswith("semi-uncrossable: no (witness A={x,s}, B={x,y})")
    code, out, _ = run(capsys, "classify", fixture_path("example1_symmetrized"), "--json")
    doc = json.loads(out)
    assert code == 0 and doc["flags"]["semi_uncrossable"] is False and doc["implications_hold"] is True


def test_classify_limit_exit_3(capsys, tmp_path):
    doc = {"nodes": 17, "edges": [], "family": {"type": "kcf", "k": 2}}
    code, _, err = run(capsys, "classify", write(tmp_path, doc))
    assert code == 3


# ---------------------------------------------------------------- suite


def test_suite_json_is_deterministic(capsys):
    code_a, out_a, _ = run(capsys, "suite", "--trials", "30", "--seed", "5", "--json")
    code_b, out_b, _ = run(capsys, "suite", "--trials", "30", "--seed", "5", "--json")
    assert out_a == out_b and code_a == code_b
    doc = json.loads(out_a)
    assert len(doc["cells"]) == 27
    cell = next(c for c in doc["cells"] if (c["row"], c["column"]) == ("st_path", "sna"))
    assert cell["status"] == "counterexample"
    for c in doc["cells"]:
        if c["worst_ratio"] is not None:
            num, _, den = c["worst_ratio"].partition("/")
            assert int(num) <= 2 * int(den or 1)


# ---------------------------------------------------------------- round trip


@pytest.mark.parametrize("name", ALL_FIXTURES)
def test_round_trip(fixture_path, name):
    first = load_instance(fixture_path(name))
    doc = instance_to_json(first)
    second = instance_from_json(json.loads(json.dumps(doc)))
    assert second == first
    assert instance_to_json(second) == doc


def test_fixture_corpus_complete():
    expected = {
        "example1", "example1_symmetrized", "example2", "example3", "example4", "st_path_sna",
        "triangle", "star", "infeasible", "empty_family",
        "steiner_forest", "t_join", "gp2p", "kcf", "tkcf", "sna", "st_path",
    }
    assert expected <= set(ALL_FIXTURES)
