import io
import json

import pytest

from toffa.cli import run_cli

from conftest import fixture_path

GRIDSTIX = fixture_path("gridstix.toffa")
RECONFIG = fixture_path("gridstix_reconfig.toffa")
BASE = fixture_path("base.scn")
ORDER = fixture_path("reconfig.scn")
PAIRS = fixture_path("pairs.scn")


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    code = run_cli(argv, out, err)
    return code, out.getvalue(), err.getvalue()


def test_validate_ok():
    code, out, _ = run(["validate", GRIDSTIX])
    assert code == 0
    assert out == "GridStix: ok\n"


def test_validate_bad_file(tmp_path):
    bad = tmp_path / "bad.toffa"
    bad.write_text('model "X"\nnonsense\n')
    code, _, err = run(["validate", str(bad)])
    assert code == 1
    assert "line 2" in err


def test_missing_file_is_usage_error():
    code, _, err = run(["validate", "no-such-file.toffa"])
    assert code == 2
    assert "cannot read" in err


def test_unknown_command_is_usage_error(capsys):
    code, _, _ = run(["frobnicate", GRIDSTIX])
    assert code == 2
    capsys.readouterr()


def test_ccfs_listing():
    code, out, _ = run(["ccfs", GRIDSTIX])
    assert code == 0
    assert out.splitlines() == [
        "ccf1 = {c3, c7}",
        "ccf2 = {c4, c7}",
        "ccf3 = {c5, c7}",
        "ccf4 = {c3, c8}",
        "ccf5 = {c4, c8}",
        "ccf6 = {c5, c8}",
    ]


def test_check_names_conflicts():
    code, out, _ = run(["check", GRIDSTIX])
    assert code == 0
    first = out.splitlines()[0]
    assert "ccf1" in first and "f3" in first
    assert any("ccf1" in ln and "f9" in ln for ln in out.splitlines())


def test_prioritize_table():
    code, out, _ = run(["prioritize", GRIDSTIX, "--scenario", BASE])
    assert code == 0
    assert "goal g2 = 0.50" in out
    assert "context c2 = 0.50" in out
    assert "softgoal sg1 = 0.60" in out
    assert "CR = 0.00" in out


def test_utility_table_format():
    code, out, _ = run(["utility", GRIDSTIX, "--scenario", BASE])
    assert code == 0
    lines = out.splitlines()
    assert lines[0].split() == ["feature", "contC", "contG", "contSG", "utility"]
    row = dict(zip(("feature", "cc", "cg", "csg", "u"), lines[1].split()))
    assert row["feature"] == "f2"
    assert row["cc"] == "0.83" and row["cg"] == "0.33" and row["csg"] == "0.50"


def test_optimize_notation():
    code, out, _ = run(["optimize", GRIDSTIX, "--scenario", BASE])
    assert code == 0
    assert out == (
        "F1 = {f0, f1, f2, ¬f3, f4, f5, ¬f6, f7, f8, ¬f9, f10}\n"
        "objective = 3.85\n"
    )


def test_optimize_structured_full_precision():
    code, out, _ = run(["optimize", GRIDSTIX, "--scenario", BASE, "--format", "structured"])
    assert code == 0
    data = json.loads(out)
    cfg = data["configurations"][0]
    assert cfg["objective"] == pytest.approx(3.85, abs=1e-9)
    assert cfg["assignment"]["f3"] is False


def test_optimize_top_k():
    code, out, _ = run(["optimize", GRIDSTIX, "--scenario", BASE, "--top-k", "3"])
    assert code == 0
    assert out.count("objective =") == 3
    assert out.splitlines()[0].startswith("F1 = ")


def test_tradeoff_map():
    code, out, _ = run(["tradeoff", RECONFIG, "--scenario", ORDER])
    assert code == 0
    assert "  ccf1 -> F1" in out
    assert "  ccf3 -> F2" in out
    assert "  ccf5 -> F3" in out


def test_tradeoff_comparison():
    code, out, _ = run(["tradeoff", RECONFIG, "--scenario", PAIRS])
    assert code == 0
    assert "disagreement ccf1" in out


def test_adapt_model_dot():
    code, out, _ = run(["adapt-model", RECONFIG, "--scenario", ORDER, "--format", "dot"])
    assert code == 0
    assert out.startswith("digraph")
    assert 'F1 -> F2 [label="ccf3"];' in out


def test_output_determinism():
    for argv in (
        ["utility", GRIDSTIX, "--scenario", BASE],
        ["tradeoff", RECONFIG, "--scenario", ORDER, "--format", "structured"],
    ):
        a = run(argv)
        b = run(argv)
        assert a == b


def test_node_limit_env(monkeypatch):
    monkeypatch.setenv("TOFFA_NODE_LIMIT", "2")
    code, _, err = run(["optimize", GRIDSTIX, "--scenario", BASE])
    assert code == 1
    assert "exceeded" in err
    monkeypatch.setenv("TOFFA_NODE_LIMIT", "zero")
    code, _, err = run(["optimize", GRIDSTIX, "--scenario", BASE])
    assert code == 2
