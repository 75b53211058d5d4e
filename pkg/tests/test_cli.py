import csv
import json

import jsonschema
import pytest

from carleman import cli
from carleman.suites import RunConfig


def _run(tmp_path, *args):
    rc = cli.main(list(args) + ["--out", str(tmp_path)])
    return rc, json.loads((tmp_path / f"{args[0]}.json").read_text())


@pytest.mark.parametrize("cmd", ["verify-symbolic", "verify-commutators", "certify", "heat-kernel"])
def test_report_matches_schema(tmp_path, cmd):
    rc, report = _run(tmp_path, cmd)
    assert rc == 0 and report["ok"]
    jsonschema.validate(report, cli.load_schema())
    assert report["command"] == cmd and report["seed"] == cli.DEFAULT_SEED
    assert report["records"] and report["wall_time"] >= 0


def test_flagged_typo_recorded(tmp_path):
    _, report = _run(tmp_path, "verify-commutators")
    flagged = {r["name"] for r in report["records"] if r["status"] == "flagged-typo"}
    assert "commutator_case4 (d=1)" in flagged
    assert all(r["status"] != "fail" for r in report["records"])


def test_csv_sidecars(tmp_path):
    rc, _ = _run(tmp_path, "heat-kernel")
    with open(tmp_path / "heat-kernel_kernel_profile.csv") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == cli.CSV_COLUMNS["heat-kernel"]["kernel_profile"]
    assert len(rows) > 10 and all(len(r) == 3 for r in rows)
    rc, _ = _run(tmp_path, "evolve")
    with open(tmp_path / "evolve_H_lambda.csv") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["t", "log_H"] and float(rows[-1][0]) == 1.0


def test_output_dir_from_environment(tmp_path, monkeypatch):
    monkeypatch.setenv(cli.OUT_ENV, str(tmp_path / "envout"))
    assert cli.main(["certify"]) == 0
    assert (tmp_path / "envout" / "certify.json").exists()


@pytest.mark.parametrize("argv", [["bogus"], ["certify", "--tol", "-1"], ["certify", "--d", "4"],
                                   ["evolve", "--V", "wild"], ["certify", "--grid", "8"],
                                   ["lower-bound-demo", "--R", "-4"], ["evolve", "--lambda", "-1"]])
def test_configuration_errors_exit_2(tmp_path, argv, capsys):
    assert cli.main(argv + ["--out", str(tmp_path)]) == 2
    assert not list(tmp_path.iterdir())


def test_failed_check_exits_1(tmp_path):
    # an absurd tolerance makes the quadrature comparison fail honestly
    rc, report = _run(tmp_path, "verify-form", "--tol", "1e-300", "--grid", "32")
    assert rc == 1 and not report["ok"]
    failed = [r for r in report["records"] if r["status"] == "fail"]
    assert failed and failed[0]["values"]["tol"] == 1e-300


def test_run_config_echo():
    cfg = RunConfig("certify", d=2, R=[4, 8])
    report, _ = cli.run(cfg)
    assert report["config"]["R"] == [4.0, 8.0] and report["config"]["d"] == 2
    jsonschema.validate(report, cli.load_schema())
