import json
import os
import subprocess
import sys
from math import comb

import pytest

from kholes import cli, harness, relations
from kholes.harness import CheckResult


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_generate_then_count(tmp_path, capsys):
    f = tmp_path / "c.txt"
    code, out, _ = run(capsys, "generate", "--family", "convex", "--n", "7", "--seed", "3", "--out", str(f))
    assert code == 0 and json.loads(out)["results"]["n"] == 7
    code, out, _ = run(capsys, "count", "--in", str(f), "--k", "4", "--class", "convex", "--no-timing")
    env = json.loads(out)
    assert code == 0
    assert env["results"]["count"] == comb(7, 4)
    assert set(env) == {"tool_version", "command", "params", "results", "runtime_ms"}
    assert env["runtime_ms"] is None


def test_generate_to_stdout(capsys):
    code, out, _ = run(capsys, "generate", "--family", "random", "--n", "6", "--seed", "1")
    assert code == 0 and out.splitlines()[0] == "6"


def test_count_series_csv(capsys):
    code, out, _ = run(capsys, "count", "--family", "random", "--sizes", "6", "7", "--k", "3",
                       "--format", "csv")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "n,k,class,objects,count" and len(lines) == 3


def test_output_is_byte_stable(tmp_path, capsys):
    f = tmp_path / "r.txt"
    run(capsys, "generate", "--family", "random", "--n", "8", "--seed", "2", "--out", str(f))
    outs = {run(capsys, "polygonizations", "--in", str(f), "--list", "--no-timing")[1] for _ in range(2)}
    assert len(outs) == 1


def test_crossing_and_relations(tmp_path, capsys):
    f = tmp_path / "c.txt"
    run(capsys, "generate", "--family", "convex", "--n", "6", "--out", str(f))
    code, out, _ = run(capsys, "crossing", "--in", str(f))
    assert code == 0 and json.loads(out)["results"]["crossing_number"] == 15
    code, out, _ = run(capsys, "relations", "--k", "5", "--class", "convex", "--strategy", "grid:4")
    rel = json.loads(out)["results"]["relation"]
    assert (rel["c1"], rel["c2"], rel["x"]) == ("-3/4", "-1/4", "-1/4")
    code, out, _ = run(capsys, "relations", "--k", "5", "--class", "nonconvex", "--strategy", "grid:4",
                       "--objective", "upper")
    rel = json.loads(out)["results"]["relation"]
    assert code == 0 and rel["c4"] == "94993/250000"
    assert relations.parse_rational(rel["x"]) >= 0


def test_grid_and_bounds(capsys):
    code, out, _ = run(capsys, "grid", "--m", "3", "--op", "prime4holes")
    assert code == 0 and json.loads(out)["results"]["count"] == 60
    code, out, _ = run(capsys, "grid", "--m", "9", "--op", "phi-check")
    assert code == 0 and json.loads(out)["results"]["violations"] == []
    code, out, _ = run(capsys, "grid", "--m", "4", "--op", "rowholes")
    assert code == 0 and json.loads(out)["results"]["valid"] >= 54
    code, out, _ = run(capsys, "bounds", "--k", "4", "--n", "15", "--T", "1")
    res = json.loads(out)["results"]
    assert res["convex_max_threshold"] == 15 and res["khole_upper_expression"] == "1365"


def test_input_error_exit_code(tmp_path, capsys):
    f = tmp_path / "bad.txt"
    f.write_text("3\n0 0\n1 1\n2 2\n")
    code, out, err = run(capsys, "crossing", "--in", str(f))
    assert code == 2 and out == "" and "degenerate" in json.loads(err)["error"]
    code, _, _ = run(capsys, "grid", "--m", "3", "--op", "prime4holes", "--k", "7")
    assert code == 2


def test_check_failure_exit_code(monkeypatch, capsys):
    monkeypatch.setitem(harness.CRITERIA, 99, lambda cfg: CheckResult("c99", "broken", "fail", 0, 1))
    monkeypatch.setitem(harness.SUITES, "broken", (99,))
    code, out, _ = run(capsys, "verify", "broken", "--no-timing")
    assert code == 1 and json.loads(out)["results"]["checks"][0]["status"] == "fail"


def test_timeout_exit_code(capsys):
    code, _, err = run(capsys, "grid", "--m", "9", "--op", "prime4holes", "--timeout-secs", "0.3")
    assert code == 3 and "timed out" in err


def test_verify_suite(capsys, monkeypatch):
    monkeypatch.delenv("KHOLES_ORDER_TYPES_9", raising=False)
    code, out, _ = run(capsys, "verify", "optional-db", "--no-timing")
    checks = json.loads(out)["results"]["checks"]
    assert code == 0 and checks[0]["status"] == "skip"


def test_console_entry_point():
    env = dict(os.environ)
    proc = subprocess.run([sys.executable, "-m", "kholes.cli", "--version"], capture_output=True, text=True, env=env)
    assert proc.returncode == 0 and proc.stdout.strip()
