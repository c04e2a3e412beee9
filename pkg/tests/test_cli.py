"""Command-line interface: exit codes, JSON output, round trips."""

import json
import subprocess
import sys

import pytest

from nilquant.cli import run


def _capture(capsys, argv):
    code = run(argv)
    return code, capsys.readouterr().out


def test_certify_pass(capsys):
    code, out = _capture(capsys, ["certify", "--family", "A", "--rank", "1",
                                  "--k", "1", "--lambda", "2", "--l", "3"])
    assert code == 0
    doc = json.loads(out)
    assert doc["ok"] is True
    claims = {r["claim"] for r in doc["reports"]}
    assert "certified_irreducible" in claims


def test_certify_weight_out_of_range_exit3(capsys):
    code = run(["certify", "--family", "A", "--rank", "1", "--k", "1",
                "--lambda", "5", "--l", "3"])
    assert code == 3


def test_unsupported_order_exit3():
    assert run(["build", "--family", "G", "--rank", "2", "--k", "1",
                "--lambda", "0,0", "--l", "9", "--out", "-"]) == 3
    assert run(["build", "--family", "A", "--rank", "1", "--k", "1",
                "--lambda", "0", "--l", "4", "--out", "-"]) == 3


def test_bad_lambda_length_exit2():
    assert run(["build", "--family", "A", "--rank", "2", "--k", "1",
                "--lambda", "0", "--l", "5", "--out", "-"]) == 2


def test_verify_passes_and_fails(capsys):
    code, out = _capture(capsys, ["verify", "--family", "B", "--rank", "2",
                                  "--k", "2", "--lambda", "1", "--l", "3"])
    assert code == 0
    doc = json.loads(out)
    assert doc["ok"] and any(r["claim"] == "oracle_equality" for r in doc["reports"])
    code, _ = _capture(capsys, ["verify", "--family", "D", "--rank", "3", "--k", "2",
                                "--lambda", "1,1", "--l", "3",
                                "--d-variant", "printed", "--threads", "1"])
    assert code == 1


def test_build_deterministic_and_roundtrip(tmp_path, capsys):
    args = ["build", "--family", "B", "--rank", "2", "--k", "2", "--lambda", "1",
            "--l", "3"]
    p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
    assert run(args + ["--out", str(p1)]) == 0
    assert run(args + ["--out", str(p2)]) == 0
    assert p1.read_bytes() == p2.read_bytes()

    code, out = _capture(capsys, ["verify", "--family", "B", "--rank", "2",
                                  "--k", "2", "--l", "3", "--in", str(p1)])
    assert code == 0
    loaded = json.loads(out)
    code, out = _capture(capsys, ["verify", "--family", "B", "--rank", "2",
                                  "--k", "2", "--lambda", "1", "--l", "3"])
    built = json.loads(out)
    assert loaded["reports"] == built["reports"]


def test_primitive_closure_character(capsys):
    code, out = _capture(capsys, ["primitive", "--family", "B", "--rank", "2",
                                  "--k", "2", "--lambda", "1", "--l", "3"])
    assert code == 0
    assert json.loads(out)["reports"][0]["witness"]["dim_P"] == 1

    code, out = _capture(capsys, ["closure", "--family", "A", "--rank", "1",
                                  "--k", "1", "--lambda", "2", "--l", "3"])
    assert json.loads(out)["reports"][0]["witness"]["dim_L"] == 3

    code, out = _capture(capsys, ["character", "--family", "A", "--rank", "1",
                                  "--k", "1", "--lambda", "2", "--l", "3"])
    weights = json.loads(out)["reports"][0]["witness"]["weights"]
    assert {tuple(w["weight"]) for w in weights} == {(0,), (1,), (2,)}


def test_print_rho(capsys):
    code, out = _capture(capsys, ["print-rho", "--family", "G", "--rank", "2"])
    assert code == 0
    assert "x[1,2]" in out


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "nilquant", "closure", "--family", "A",
         "--rank", "1", "--k", "1", "--lambda", "1", "--l", "3"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["reports"][0]["witness"]["dim_L"] == 2
