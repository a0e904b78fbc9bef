import json
import os
import subprocess
import sys

import pytest

from orbitclosure import catalog
from orbitclosure.cli import SCHEMA, main

PLAN_7B_6C = os.path.join(catalog.DATA_DIR, "plans", "7B-6C.json")


def run(capsys, *argv):
    code = main(list(argv) + ["--quiet"])
    out = capsys.readouterr().out
    report = json.loads(out)
    assert report["schema"] == SCHEMA
    assert report["exit_code"] == code
    return code, report


def test_in_closure_inline_forms(capsys, tmp_path):
    code, report = run(capsys, "in-closure", "--source", "x1^3+x1*x2^2", "--target", "x1^2*x2",
                       "--vars", "x1,x2", "--cache", str(tmp_path))
    assert code == 0
    assert report["verdicts"][0]["outcome"] == "InClosure"
    assert report["arguments"]["source"] == "x1^3+x1*x2^2"


def test_negative_verdict_exits_zero(capsys):
    code, report = run(capsys, "in-closure", "--source", "a^2*b", "--target", "a^3+a*b^2", "--vars", "a,b")
    assert code == 0
    assert report["verdicts"][0]["outcome"] == "NotInClosure"


def test_verify_limit_packaged_fixture(capsys):
    code, report = run(capsys, "verify-limit", "--fixture", "fixtures/1A-3A.json")
    assert code == 0
    assert report["result"]["verified"] is True


def test_in_orbit_by_label(capsys):
    code, report = run(capsys, "in-orbit", "--source", "4D", "--target", "4D")
    assert code == 0
    assert report["verdicts"][0]["outcome"] == "InOrbit"


def test_orbit_dim_and_singular(capsys):
    code, report = run(capsys, "orbit-dim", "--form", "4D")
    assert (code, report["result"]["orbit_dim"]) == (0, 10)
    code, report = run(capsys, "orbit-dim", "--form", "6C", "--method", "tangent")
    assert (code, report["result"]["orbit_dim"]) == (0, 14)
    code, report = run(capsys, "singular", "--form", "6A")
    assert (code, report["result"]["dim"]) == (0, 2)


def test_sub_elim_sub_plan(capsys):
    plan = os.path.join(catalog.DATA_DIR, "plans", "2A-4D.json")
    code, report = run(capsys, "sub-elim-sub", "--source", "x1*x2*x3", "--target", "x1^3+x2^3",
                       "--vars", "x1,x2,x3", "--plan", plan)
    assert code == 0
    assert report["verdicts"][0]["outcome"] == "ContainmentProven"


def test_budget_exceeded_exits_two(capsys):
    code, report = run(capsys, "in-closure", "--source", "6C", "--target", "7B", "--max-pairs", "3")
    assert code == 2
    assert report["verdicts"][0]["outcome"] == "BudgetExceeded"


def test_inconclusive_exits_two(capsys, tmp_path):
    plan = tmp_path / "plan.json"
    plan.write_text(json.dumps({"pre": {"c30": "1", "c12": "1"}, "ansatz": [["free", "free"], ["free", "free"]], "post": {"c21": "0", "c03": "0"}}))
    code, report = run(capsys, "sub-elim-sub", "--source", "x1^2*x2", "--target", "x1^3+x1*x2^2",
                       "--vars", "x1,x2", "--plan", str(plan))
    assert code == 2
    assert report["verdicts"][0]["outcome"] == "Inconclusive"


@pytest.mark.parametrize("argv, error", [
    (["in-closure", "--source", "x1^3+", "--target", "x1^3", "--vars", "x1"], "parse_error"),
    (["in-closure", "--source", "9Z", "--target", "1A"], "missing_vars"),
    (["in-closure", "--source", "x1^3", "--target", "x1^2", "--vars", "x1"], "dimension_mismatch"),
    (["sub-elim-sub", "--source", "1A", "--target", "2A", "--plan", PLAN_7B_6C], "plan_mismatch"),
    (["in-closure", "--source", "x1^3", "--target", "x1^3", "--vars", "x1", "--degree", "4"], "degree_mismatch"),
    (["in-closure", "--source", "x1^3", "--target", "1A", "--vars", "x1"], "parse_error"),
    (["verify-limit", "--fixture", "no-such-file.json"], "bad_fixture"),
    (["cache", "show", "deadbeef"], "unknown_key"),
    (["sub-elim-sub", "--source", "1A", "--target", "1A", "--plan", "no-such-plan.json"], "bad_plan"),
])
def test_usage_errors_exit_one(capsys, tmp_path, argv, error):
    code, report = run(capsys, *argv, "--cache", str(tmp_path))
    assert code == 1
    assert report["error"]["code"] == error


def test_bad_arguments_exit_one(capsys):
    assert main(["in-orbit"]) == 1
    assert main(["frobnicate"]) == 1


def test_cache_lifecycle(capsys, tmp_path):
    cache = str(tmp_path / "cache")
    _, report = run(capsys, "cache", "list", "--cache", cache)
    assert report["result"]["entries"] == []
    run(capsys, "in-closure", "--source", "x1^3+x1*x2^2", "--target", "x1^2*x2", "--vars", "x1,x2", "--cache", cache)
    _, report = run(capsys, "cache", "list", "--cache", cache)
    entries = report["result"]["entries"]
    assert len(entries) == 1
    _, shown = run(capsys, "cache", "show", entries[0]["key"], "--cache", cache)
    assert "source-form: x1^3 + x1*x2^2" in shown["result"]["text"]
    _, warm = run(capsys, "in-closure", "--source", "x1^3+x1*x2^2", "--target", "x1^2*x2", "--vars", "x1,x2",
                  "--cache", cache)
    assert warm["verdicts"][0]["stats"]["cache"] == "hit"
    _, report = run(capsys, "cache", "purge", "--cache", cache)
    assert report["result"]["removed"] == 1
    _, report = run(capsys, "cache", "list", "--cache", cache)
    assert report["result"]["entries"] == []


def test_json_output_file(capsys, tmp_path):
    path = tmp_path / "report.json"
    code = main(["orbit-dim", "--form", "1A", "--json", str(path), "--quiet"])
    assert code == 0
    assert json.loads(path.read_text())["result"]["orbit_dim"] == 4


def test_console_script_runs():
    proc = subprocess.run([sys.executable, "-m", "orbitclosure.cli", "orbit-dim", "--form", "2A", "--quiet"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"]["orbit_dim"] == 8
