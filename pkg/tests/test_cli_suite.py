import csv
import io
import json
import math

import pytest

from opineq.cli import main
from opineq.errors import ConfigError, UnknownCheckId
from opineq.results import CheckResult, Status
from opineq.suite import SuitePlan, emit_report, run_verify


def _small(**kw):
    base = dict(checks=["gt-trace", "ineq6"], dims=[1, 2], trials=3, seed=5)
    base.update(kw)
    return SuitePlan(**base)


def _strip_time(report):
    return {k: v for k, v in report.items() if k != "timestamp"}


def _fake_report(results):
    return {"tool_version": "0", "timestamp": "t", "plan": {}, "results": [r.to_dict() for r in results], "summary": {}}


def _result(margin, part=""):
    return CheckResult("gt-trace", part, {"v": 0.5}, 1.0, 1.0 + margin, margin, True, Status.PASS, ratio=1.0)


# -- plan -------------------------------------------------------------------


def test_plan_validation():
    with pytest.raises(UnknownCheckId):
        SuitePlan(checks=["bogus"]).validate()
    with pytest.raises(ConfigError):
        SuitePlan(checks=["gt-trace"], trials=0).validate()
    with pytest.raises(ConfigError):
        SuitePlan(checks=["limit36"], limit_p=[0.1, 0.5]).validate()
    with pytest.raises(ConfigError):
        SuitePlan.from_dict({"checks": ["gt-trace"], "colour": "red"})


def test_plan_dict_roundtrip():
    plan = _small(v=[0.25], norms=["schatten:2"])
    assert SuitePlan.from_dict(plan.to_dict()) == plan


def test_single_check_override_left_empty_is_an_error():
    with pytest.raises(ConfigError):
        SuitePlan(checks=["lemma21"], v=[0.5]).validate()
    # with several checks the axis just keeps its defaults where nothing fits
    report, code = run_verify(SuitePlan(checks=["lemma21", "ineq6"], dims=[1], trials=2, v=[0.5]))
    assert {r["params"]["v"] for r in report["results"] if r["check_id"] == "ineq6"} == {0.5}
    assert {r["check_id"] for r in report["results"]} == {"lemma21", "ineq6"}


# -- runner ------------------------------------------------------------------


def test_run_verify_counts_and_order():
    plan = _small()
    report, code = run_verify(plan)
    assert code == 0
    results = report["results"]
    assert len(results) == 2 * 3 + 2 * 3 * 2  # ineq6 returns two parts
    assert [r["check_id"] for r in results] == ["gt-trace"] * 6 + ["ineq6"] * 12
    assert report["summary"]["ineq6"] == {"pass": 12, "fail": 0, "not_applicable": 0}
    assert all(r["params"]["seed"] == 5 for r in results)


def test_run_is_deterministic_and_worker_independent():
    plan = _small(checks=["gt-classic", "lemma32"], trials=4)
    one = _strip_time(run_verify(plan)[0])
    again = _strip_time(run_verify(plan)[0])
    pooled = _strip_time(run_verify(plan, workers=2, chunk=3)[0])
    assert one == again == pooled
    other = _strip_time(run_verify(_small(checks=["gt-classic", "lemma32"], trials=4, seed=6))[0])
    assert other != one


def test_failure_sets_exit_code():
    # the trace norm breaks the reverse Ando-Hiai bound
    plan = SuitePlan(checks=["ah-classic"], dims=[3], trials=5, norms=["schatten:1"], p=[3.0])
    report, code = run_verify(plan)
    assert code == 1 and report["summary"]["ah-classic"]["fail"] > 0


# -- serialization -------------------------------------------------------------


def test_json_margin_roundtrip():
    text = emit_report(_fake_report([_result(1e-17)]))
    assert json.loads(text)["results"][0]["margin"] == 1e-17


def test_json_non_finite_values_become_strings():
    res = _result(0.0)
    res.details = {"K": math.inf}
    loaded = json.loads(emit_report(_fake_report([res])))
    assert loaded["results"][0]["details"]["K"] == "inf"


def test_empty_report():
    report, code = run_verify(SuitePlan(checks=["gt-trace"], dims=[1], trials=1))
    report["results"] = []
    loaded = json.loads(emit_report(report))
    assert loaded["results"] == [] and code == 0
    with pytest.raises(ConfigError):
        SuitePlan(checks=[], dims=[1]).validate()
    # a Ky Fan 2-norm has no meaning in dimension 1, so nothing runs
    report, code = run_verify(SuitePlan(checks=["gt-classic"], dims=[1], trials=3, norms=["kyfan:2"]))
    loaded = json.loads(emit_report(report))
    assert loaded["results"] == [] and code == 0
    assert loaded["summary"] == {"gt-classic": {"pass": 0, "fail": 0, "not_applicable": 0}}


def test_csv_rows_and_columns(tmp_path):
    text = emit_report(_fake_report([_result(0.1, "a"), _result(0.2, "b"), _result(1e-17, "c")]), "csv", tmp_path / "r.csv")
    rows = list(csv.DictReader(io.StringIO(text)))
    assert len(rows) == 3 and len(text.strip().splitlines()) == 4
    assert text.splitlines()[0].startswith("check_id,part,status,margin,lhs,rhs,ratio")
    assert float(rows[2]["margin"]) == 1e-17 and rows[0]["params.v"] == "0.5"
    assert (tmp_path / "r.csv").read_text() == text


def test_unknown_format():
    with pytest.raises(ConfigError):
        emit_report(_fake_report([]), "xml")


# -- command line ----------------------------------------------------------------


def test_cli_verify_writes_report(tmp_path):
    out = tmp_path / "report.json"
    code = main(["verify", "--checks", "gt-trace,ineq6", "--dims", "1,2", "--trials", "2", "--seed", "0x10", "--out", str(out)])
    assert code == 0
    report = json.loads(out.read_text())
    assert report["plan"]["seed"] == 16
    assert set(report["summary"]) == {"gt-trace", "ineq6"}


def test_cli_csv(tmp_path, capsys):
    assert main(["verify", "--checks", "gt-trace", "--dims", "2", "--trials", "3", "--format", "csv"]) == 0
    assert len(capsys.readouterr().out.strip().splitlines()) == 4


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "--checks", "nope"],
        ["verify", "--checks", "gt-trace", "--trials", "0"],
        ["limit", "--p-list", "0.1,0.5"],
        ["verify", "--seed", "-1"],
        ["verify", "--plan", "/nonexistent/plan.json"],
        ["constants", "K", "h=1", "v=0.5"],
        ["constants", "K", "h=2"],
        ["scan", "--check", "gt-classic"],
        ["bogus"],
    ],
)
def test_cli_usage_errors(argv, capsys):
    try:
        code = main(argv)
    except SystemExit as exc:
        code = exc.code
    assert code == 2


def test_cli_fail_exit_code(capsys):
    code = main(["verify", "--checks", "ah-classic", "--dims", "3", "--trials", "5", "--norm", "schatten:1", "--p", "3"])
    assert code == 1


def test_cli_plan_file_with_flag_override(tmp_path, capsys):
    plan = tmp_path / "plan.json"
    plan.write_text(json.dumps({"checks": ["ineq6"], "dims": [1, 2], "trials": 4, "seed": 3, "v": [0.25]}))
    assert main(["verify", "--plan", str(plan), "--trials", "2"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["plan"]["trials"] == 2 and report["plan"]["seed"] == 3
    assert len(report["results"]) == 2 * 2 * 2
    assert {r["params"]["v"] for r in report["results"]} == {0.25}


def test_cli_suite_preset_then_flags(capsys):
    assert main(["verify", "--suite", "quick", "--checks", "gt-trace", "--trials", "2"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["plan"]["dims"] == [1, 2, 3] and len(report["results"]) == 6


@pytest.mark.parametrize(
    "argv, want",
    [
        (["K", "h=3", "v=2"], 16 / 12),
        (["C", "m=1", "M=4", "v=2"], 16 / 7),
        (["L", "m=1", "M=4", "v=0.5"], 25 / 16),
        (["xi-psi", "s=0.25", "t=4", "v=0.5"], [1.25, 1.25]),
        (["K-mp", "m=1", "M=4"], 25 / 16),
        (["gamma", "m2=0.1", "m1=0.2", "M1=0.5", "M2=1", "p=1", "v=1"], 1.0),
    ],
)
def test_cli_constants(argv, want, capsys):
    assert main(["constants", *argv]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["name"] == argv[0]
    assert out["value"] == pytest.approx(want, rel=1e-10)


def test_cli_limit(capsys):
    assert main(["limit", "--dims", "2", "--trials", "3", "--mean", "harmonic", "--v", "0.5"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert {r["check_id"] for r in report["results"]} == {"limit36"}
    assert report["plan"]["limit_p"] == [1.0, 0.5, 0.1, 0.05, 0.01, 0.005, 0.001]


def test_cli_scan(tmp_path):
    out = tmp_path / "scan.json"
    assert main(["scan", "--check", "thm23-ah", "--v", "1,1.5", "--trials", "4", "--out", str(out)]) == 0
    rows = json.loads(out.read_text())
    assert {r["cell"]["v"] for r in rows} == {1.0, 1.5}
    assert all(not r["violation"] for r in rows)


def test_module_entry_point():
    import subprocess
    import sys

    proc = subprocess.run([sys.executable, "-m", "opineq", "constants", "C", "m=1", "M=4", "v=2"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["value"] == pytest.approx(16 / 7)
