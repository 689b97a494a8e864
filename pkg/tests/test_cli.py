import json
import subprocess
import sys

import pytest

from spinlocal.cli import main


def run(tmp_path, *argv):
    out = tmp_path / "report.json"
    code = main([*argv, "--out", str(out)])
    return code, json.loads(out.read_text(encoding="utf-8"))


def check(report, cid):
    (found,) = [c for c in report["checks"] if c["id"] == cid]
    return found


def test_cells_small(tmp_path):
    code, report = run(tmp_path, "cells", "--n", "2", "--i", "1")
    assert code == 0
    assert check(report, "subsets_enumerated")["actual"] == "5"


def test_cells_orbit_count(tmp_path):
    code, report = run(tmp_path, "cells", "--n", "4", "--i", "2")
    assert code == 0
    c = check(report, "orbit_count")
    assert (c["expected"], c["actual"], c["status"]) == ("3", "3", "pass")


def test_exotic_has_two_checks(tmp_path):
    code, report = run(tmp_path, "exotic")
    assert code == 0
    assert len(report["checks"]) == 2
    assert all(c["status"] == "pass" for c in report["checks"])


def test_report_layout(tmp_path):
    _, report = run(tmp_path, "faces", "--n", "3", "--i", "1")
    assert list(report) == ["version", "command", "params", "checks", "overall"]
    assert list(report["checks"][0]) == ["id", "status", "expected", "actual", "runtime_ms"]
    ids = [c["id"] for c in report["checks"]]
    assert len(ids) == len(set(ids))


def test_reports_are_deterministic(tmp_path):
    def strip(report):
        for c in report["checks"]:
            c.pop("runtime_ms")
        return report

    first = strip(run(tmp_path, "blowup", "--chart", "y12", "--trials", "20", "--seed", "3")[1])
    second = strip(run(tmp_path, "blowup", "--chart", "y12", "--trials", "20", "--seed", "3")[1])
    assert first == second


def test_resource_limit_exit_code(tmp_path):
    code, report = run(tmp_path, "chart", "--i", "1", "--max-basis", "3")
    assert code == 3
    assert report["overall"] == "resource-limit"


def test_deep_checks_are_skipped_by_default(tmp_path):
    code, report = run(tmp_path, "chart", "--i", "2", "--n", "4")
    assert code == 0
    assert {c["status"] for c in report["checks"]} == {"skipped"}


@pytest.mark.parametrize("argv", [
    ["cells", "--n", "2"],
    ["cells", "--n", "2", "--i", "1", "--bogus"],
    ["cells", "--n", "2", "--i", "3"],
    ["spin-oracle", "--n", "2", "--i", "1", "--sign", "sideways"],
    ["nonsense"],
])
def test_usage_errors(argv, capsys):
    assert main(argv) == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "spinlocal", "parahoric", "--n", "4"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.strip().endswith("overall: pass")


def test_failing_check_exit_code(tmp_path, monkeypatch):
    import spinlocal.weylcomb as wc

    monkeypatch.setattr(wc, "orbit_count", lambda n, i: 0)
    code, report = run(tmp_path, "cells", "--n", "4", "--i", "2")
    assert code == 1
    assert report["overall"] == "fail"
    assert check(report, "orbit_count")["status"] == "fail"
