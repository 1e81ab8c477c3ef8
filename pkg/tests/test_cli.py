import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from ttk.cli import main

ROOT = Path(__file__).resolve().parent.parent
FIX = ROOT / "fixtures"
GOLDEN = Path(__file__).resolve().parent / "golden"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr().out
    return code, json.loads(out) if out.lstrip().startswith(("{", "[")) else out


def run_proc(*argv, threads=None):
    env = dict(os.environ)
    if threads is not None:
        env["TTK_THREADS"] = str(threads)
    p = subprocess.run([sys.executable, "-m", "ttk.cli", *map(str, argv)],
                       capture_output=True, env=env, cwd=ROOT)
    return p.returncode, p.stdout


@pytest.mark.parametrize("cmd,name,code", [
    ("check-gpd", "gf1.json", 0),
    ("check-ttg", "skeletal_z2.json", 0),
    ("check-tta", "t1.json", 0),
])
def test_checks_pass(capsys, cmd, name, code):
    c, doc = run(capsys, cmd, FIX / name)
    assert c == code
    assert doc["valid"] is True and doc["violations"] == []


def test_check_gpd_reports_violations(capsys, tmp_path):
    doc = json.loads((FIX / "gf1.json").read_text())
    doc["inverse"] = [[a, "f"] if a == "f" else [a, b] for a, b in doc["inverse"]]
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(doc))
    c, out = run(capsys, "check-gpd", p)
    assert c == 1
    assert out["valid"] is False
    assert "gpd.inverse" in {v["clause"] for v in out["violations"]}


def test_secondary_and_tertiary_checks(capsys):
    assert run(capsys, "sec-check", FIX / "s1.json")[0] == 1
    assert run(capsys, "tert-check", FIX / "t1c.json")[0] == 1
    code, out = run(capsys, "correct", FIX / "s1.json")
    assert code == 0
    assert run(capsys, "correct", FIX / "s1_starved.json")[0] == 1


def test_toda3(capsys):
    code, out = run(capsys, "toda3", "x1|Y1>Y0", "x2|Y2>Y1", "w|Y3>Y2", "--algebra", FIX / "t1.json")
    assert code == 0
    assert out["values"] and out["contains_zero"] is False
    code, out = run(capsys, "toda3", "x1|Y1>Y0", "x2|Y2>Y1", "x3|Y3>Y2", "--algebra", FIX / "t1.json")
    assert code == 0 and out["contains_zero"] is True


def test_toda3_precondition_is_usage_error(capsys):
    code, out = run(capsys, "toda3", "x2|Y2>Y1", "w|Y3>Y2", "x4|Y4>Y3", "--algebra", FIX / "t1.json")
    assert code == 2
    assert out["error"] == "CompositesNotNull"


def test_obstruct(capsys):
    code, out = run(capsys, "obstruct", FIX / "b1.json", "--algebra", FIX / "t1.json")
    assert code == 0
    assert out["command"] == "obstruct"


def test_d2_d3_and_e_page(capsys):
    code, out = run(capsys, "d3", FIX / "ad1.json", "--element", "x0|A0>T", "--n", 0)
    assert code == 0
    code, out = run(capsys, "e-page", FIX / "ad1.json", "--page", 3)
    assert code == 0
    assert run(capsys, "e-page", FIX / "ad1.json", "--page", 5)[0] == 2


def test_resolve_ext_chart(capsys):
    code, out = run(capsys, "resolve", "--s-max", 3, "--t-max", 8)
    assert code == 0
    code, out = run(capsys, "ext", "--s", 1, "--t", 2, "--s-max", 3, "--t-max", 8)
    assert code == 0 and out["dim"] == 1
    assert run(capsys, "ext", "--s", 1, "--s-max", 3, "--t-max", 8)[0] == 2
    code, out = run(capsys, "chart", "--s-max", 3, "--t-max", 3, "--format", "tsv")
    assert code == 0
    assert out == (GOLDEN / "ext_chart_s3_t3.tsv").read_text()
    assert run(capsys, "chart", "--format", "pdf")[0] == 2
    assert run(capsys, "resolve", "--s-max", 11)[0] == 2


def test_forget_double(capsys):
    code, out = run(capsys, "forget-double", FIX / "dg1.json", "--emit")
    assert code == 0


@pytest.mark.parametrize("argv", [
    ["bogus"],
    [],
    ["check-tta", "/nonexistent/file.json"],
    ["check-tta", str(FIX / "t1.json"), "--limit", "0"],
])
def test_usage_errors(capsys, argv):
    code, out = run(capsys, *argv)
    assert code == 2
    assert out["error"] == "UsageError"


def test_seed_is_accepted(capsys):
    a = run(capsys, "--seed", 7, "check-tta", FIX / "t1.json")
    b = run(capsys, "check-tta", FIX / "t1.json", "--seed", 9)
    assert a == b and a[0] == 0


@pytest.mark.parametrize("argv", [
    ["toda3", "x1|Y1>Y0", "x2|Y2>Y1", "w|Y3>Y2", "--algebra", "fixtures/t1.json"],
    ["toda4", "x1|Y1>Y0", "x2|Y2>Y1", "x3|Y3>Y2", "x4|Y4>Y3", "--algebra", "fixtures/t1.json"],
    ["chart", "--s-max", "8", "--t-max", "21", "--format", "svg"],
    ["tert-check", "fixtures/t1c.json"],
])
def test_byte_identical_across_runs_and_threads(argv):
    ref = run_proc(*argv, threads=1)
    assert ref[1]
    assert run_proc(*argv, threads=1) == ref
    assert run_proc(*argv, threads=4) == ref
