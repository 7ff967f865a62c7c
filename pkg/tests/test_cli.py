import json

import pytest

from degree_lab.cli import main

M = r"(\x:0->0. x (x y)) (\z:0. w)"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_check(capsys):
    code, out, _ = run(capsys, "check", "-e", M, "--json")
    assert code == 0
    data = json.loads(out)
    assert data["maxdeg"] == 2 and data["type"] == "0" and data["pure"]


def test_reduce(capsys):
    code, out, _ = run(capsys, "reduce", "-e", M)
    assert code == 0 and out.strip() == "w"
    code, out, _ = run(capsys, "reduce", "-e", M, "--strategy", "rhd", "--json", "--trace")
    data = json.loads(out)
    assert data["length"] == 3 and len(data["steps"]) == 3
    code, _, err = run(capsys, "reduce", "-e", "x[y]", "--strategy", "rhd")
    assert code == 2 and "pure" in err


def test_simp_and_w(capsys):
    code, out, _ = run(capsys, "simp", "-e", M, "--degree", "2")
    assert out.strip() == r"((\z:0. w) ((\z:0. w) y))[\z:0. w]"
    code, out, _ = run(capsys, "simpfull", "-e", M, "--json")
    assert json.loads(out)["weight"] == 3
    code, out, _ = run(capsys, "w-measure", "-e", M)
    assert out.strip() == "3"


def test_steps_and_graph(capsys):
    code, out, _ = run(capsys, "steps", "-e", M, "--json")
    assert [s["degree"] for s in json.loads(out)] == [2]
    code, out, _ = run(capsys, "graph", "-e", r"(\x:0->0. x (x z)) (\y:0. w)", "--json")
    data = json.loads(out)
    assert len(data["vertices"]) == 5 and len(data["edges"]) == 5
    code, out, _ = run(capsys, "graph", "-e", "y", "--dot")
    assert out.startswith("digraph")


def test_t_measure(capsys):
    code, out, _ = run(capsys, "t-measure", "-e", r"(\x:0->0. x (x z)) (\y:0. w)", "--json")
    assert json.loads(out)["pretty"] == "[(2, [[], [(1, [[]^5])^2]])]"


def test_verify_decrease(capsys):
    for measure in ("w", "t"):
        code, out, _ = run(capsys, "verify-decrease", "-e", r"(\x:0. y x x) ((\z:0. z) w)", "--measure", measure)
        assert code == 0 and "FAIL" not in out


def test_file_input(tmp_path, capsys):
    p = tmp_path / "t.lam"
    p.write_text(M + "\n")
    code, out, _ = run(capsys, "w-measure", str(p))
    assert code == 0 and out.strip() == "3"
    code, _, err = run(capsys, "check", str(tmp_path / "missing"))
    assert code == 2


def test_input_errors(capsys):
    code, _, err = run(capsys, "check", "-e", r"(\x:0. x")
    assert code == 2 and "line 1, column 9" in err
    code, _, err = run(capsys, "check", "-e", "x x")
    assert code == 2


def test_budget_exit(capsys):
    code, _, err = run(capsys, "t-measure", "-e", r"(\x:0->0. x (x z)) (\y:0. w)", "--budget", "2")
    assert code == 3 and "budget" in err
    code, _, _ = run(capsys, "graph", "-e", r"(\x:0->0. x (x z)) (\y:0. w)", "--max-nodes", "2")
    assert code == 3


def test_props(capsys):
    code, out, _ = run(capsys, "props", "--suite", "w-decrease", "--count", "10", "--json")
    assert code == 0 and json.loads(out)["failures"] == []
