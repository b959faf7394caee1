from __future__ import annotations

import json
import subprocess
import sys

import pytest

from kmquat.cli import run

A2_INLINE = "[[2,-1],[-1,2]]"


@pytest.fixture
def a2_file(tmp_path):
    p = tmp_path / "a2.json"
    p.write_text(json.dumps({"matrix": [[2, -1], [-1, 2]]}))
    return str(p)


def lines(capsys):
    return capsys.readouterr().out.strip().splitlines()


def test_validate(a2_file, capsys):
    assert run(["validate", "--matrix", a2_file]) == 0
    assert lines(capsys) == ["valid GCM, n=2, r=2"]


def test_validate_violation(capsys):
    assert run(["validate", "--matrix", "[[2,-1],[0,2]]"]) == 1
    data = json.loads(capsys.readouterr().out)
    assert data["violations"] == [{"axiom": "AsymmetricZero", "cell": [2, 1], "value": 0}]


def test_realize(capsys):
    assert run(["realize", "--matrix", "[[2,-2],[-2,2]]"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["E"] == [["2/1", "-2/1", "0/1"], ["-2/1", "2/1", "1/1"], ["0/1", "1/1", "0/1"]]
    assert run(["realize", "--matrix", "[[0]]"]) == 2
    assert run(["realize", "--matrix", "[[0]]", "--no-check"]) == 0


@pytest.mark.parametrize(
    "matrix,expr,out",
    [(A2_INLINE, "[Je1,Jf1]", "-1*hv1"), (A2_INLINE, "[e1,e1]", "0"), ("[[2]]", "[f1,[e1,Je1]]", "0")],
)
def test_bracket_examples(matrix, expr, out, capsys):
    assert run(["bracket", "--matrix", matrix, expr]) == 0
    assert lines(capsys) == [out]


def test_bracket_oracle(capsys):
    assert run(["bracket", "--matrix", A2_INLINE, "[e1,[e1,f1]]", "--oracle", "--trunc", "3"]) == 0
    out = lines(capsys)
    assert out[0] == "-2*e1"
    assert json.loads(out[1])["status"] == "pass"


def test_bracket_errors(capsys):
    assert run(["bracket", "--matrix", A2_INLINE, "[e1,"]) == 2
    assert "position 4" in capsys.readouterr().err
    assert run(["bracket", "--matrix", A2_INLINE, "[ie1,Jf1]"]) == 2
    assert "--oracle" in capsys.readouterr().err
    assert run(["bracket", "--matrix", A2_INLINE, "[ie1,Jf1]", "--oracle", "--trunc", "2"]) == 0
    assert json.loads(capsys.readouterr().out)["check"] == "oracle-only"
    assert run(["bracket", "--matrix", A2_INLINE, "e3"]) == 2


def test_input_errors(tmp_path, capsys):
    assert run(["validate", "--matrix", str(tmp_path / "missing.json")]) == 2
    assert run(["validate", "--matrix", "[[2,"]) == 2
    assert run(["validate", "--matrix", "[[2.5]]"]) == 2
    assert run(["verify", "--matrix", A2_INLINE, "--trunc", "1"]) == 2
    assert "--trunc" in capsys.readouterr().err
    assert run(["mult", "--matrix", A2_INLINE, "--max-height", "0"]) == 2
    assert run(["mult", "--matrix", A2_INLINE]) == 2
    assert run([]) == 2
    assert run(["frobnicate"]) == 2


def test_verify_suites(capsys):
    assert run(["verify", "--matrix", A2_INLINE, "--suite", "relations"]) == 0
    summary = json.loads(lines(capsys)[-1])
    assert summary == {"summary": {"relation": {"pass": 120, "fail": 0, "n/a": 0}}, "status": "pass"}
    assert run(["verify", "--matrix", "[[2]]", "--suite", "jacobi", "--trials", "20", "--seed", "5"]) == 0


def test_verify_reports_annihilation_failures(capsys):
    assert run(["verify", "--matrix", A2_INLINE, "--suite", "annihilation", "--trunc", "4"]) == 1
    out = [json.loads(l) for l in lines(capsys)]
    assert out[-1]["status"] == "fail"
    failures = out[:-1]
    assert len(failures) == 32
    assert all(r["check"] == "annihilation" and r["status"] == "fail" for r in failures)
    assert {"check", "generator", "status"} <= set(failures[0])


def test_verify_is_deterministic(capsys):
    args = ["verify", "--matrix", A2_INLINE, "--suite", "jacobi", "--trials", "30", "--seed", "11", "-v"]
    run(args)
    first = capsys.readouterr().out
    run(args)
    assert capsys.readouterr().out == first


def test_mult_tsv(capsys):
    assert run(["mult", "--matrix", "[[2,-2],[-2,2]]", "--algebra", "standard", "--max-height", "2"]) == 0
    assert lines(capsys) == [
        "degree\tht\tdimU\tdimS",
        "cartan\t0\t6\t6",
        "(1,0)\t1\t2\t2",
        "(0,1)\t1\t2\t2",
        "(2,0)\t2\t1\t0",
        "(1,1)\t2\t4\t2",
        "(0,2)\t2\t1\t0",
        "total_real\t\t52\t36",
    ]


def test_mult_json(capsys):
    assert run(["mult", "--matrix", "[[2]]", "--max-height", "3", "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["totalRealDim"]["reduced"] == 12
    assert [r["universal"]["complexDim"] for r in data["rows"]] == [2, 1, 2]


def test_radical(capsys):
    assert run(["radical", "--matrix", A2_INLINE, "--degree", "1,1"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["dim"] == 2 and data["freeDim"] == 4
    assert run(["radical", "--matrix", A2_INLINE, "--degree", "-1,-1"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["degree"] == [-1, -1]
    assert data["basis"] == ["1*[f1,f2] + 1*[Jf1,Jf2]", "1*[f1,Jf2] + -1*[Jf1,f2]"]
    assert run(["radical", "--matrix", A2_INLINE, "--degree", "2,1", "--ideal", "serre"]) == 0
    assert json.loads(capsys.readouterr().out)["dim"] == 8
    for bad in ("1,-1", "0,0", "1,1,1", "x"):
        assert run(["radical", "--matrix", A2_INLINE, "--degree", bad]) == 2
    assert run(["radical", "--matrix", A2_INLINE, "--degree", "3,2"]) == 2


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "kmquat.cli", "validate", "--matrix", "[[2]]"], capture_output=True, text=True
    )
    assert proc.returncode == 0 and proc.stdout.strip() == "valid GCM, n=1, r=1"
