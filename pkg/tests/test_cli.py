import csv
import io
import json

import pytest

from ford_cherries.cli import EXIT_OK, EXIT_USAGE, EXIT_VALIDATION, run
from ford_cherries.exact import CurveExtrema
from ford_cherries.io import dump_json, format_value, write_csv


@pytest.mark.parametrize("alpha, golden", [("0", "pmf_n4_alpha0.csv"), ("0.5", "pmf_n4_alpha0.5.csv")])
def test_pmf_golden(alpha, golden, golden_dir, capsys):
    """Test if the pmf subcommand reproduces the golden CSV byte for byte."""
    assert run(["pmf", "--n", "4", "--alpha", alpha]) == EXIT_OK
    assert capsys.readouterr().out == (golden_dir / golden).read_text()


def test_pmf_accepts_rational_alpha(golden_dir, capsys):
    """Test if alpha = 1/2 written as a fraction gives the same table."""
    assert run(["pmf", "--n", "4", "--alpha", "1/2"]) == EXIT_OK
    assert capsys.readouterr().out == (golden_dir / "pmf_n4_alpha0.5.csv").read_text()


def test_pmf_json(capsys):
    """Test if the pmf JSON holds (a, c, prob) triples."""
    assert run(["pmf", "--n", "5", "--alpha", "0", "--format", "json"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["n"] == 5
    assert sum(p for _, _, p in payload["table"]) == pytest.approx(1.0)


def test_out_file(tmp_path, golden_dir, capsys):
    """Test if --out receives the primary output and stdout stays empty."""
    target = tmp_path / "pmf.csv"
    assert run(["pmf", "--n", "4", "--alpha", "0", "--out", str(target)]) == EXIT_OK
    assert capsys.readouterr().out == ""
    assert target.read_text() == (golden_dir / "pmf_n4_alpha0.csv").read_text()


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["pmf", "--n", "4", "--alpha", "1.5"],
        ["pmf", "--n", "4", "--alpha", "half"],
        ["pmf", "--n", "2", "--alpha", "0.5"],
        ["pmf", "--n", "four", "--alpha", "0.5"],
        ["simulate", "--n", "1", "--alpha", "0.5"],
        ["simulate", "--n", "5", "--alpha", "0.5", "--trials", "0"],
        ["moments", "--n", "2", "--alpha", "0.5"],
        ["sweep", "--grid", "0:2:0.5"],
        ["sweep", "--quantity", "entropy"],
        ["validate", "--only", "nothing"],
        ["tabulate"],
    ],
)
def test_usage_errors(argv, capsys):
    """Test if invalid command lines exit with status 1 and write nothing to stdout."""
    assert run(argv) == EXIT_USAGE
    assert capsys.readouterr().out == ""


def test_limits(capsys):
    """Test if the limits JSON carries nu, mu, S and the 6 x 6 Sigma."""
    assert run(["limits", "--alpha", "0.5"]) == EXIT_OK
    record = json.loads(capsys.readouterr().out)
    assert record["nu"] == pytest.approx(0.125)
    assert record["mu"] == pytest.approx(0.25)
    assert record["S"][0][0] == pytest.approx(0.046875)
    assert record["S"][0][1] == 0.0
    assert record["S"][1][1] == pytest.approx(0.0625)
    assert len(record["sigma"]) == 6
    assert sum(record["v"]) == pytest.approx(2.0)


def test_limits_csv(capsys):
    """Test if the limits CSV has one row with the scalar limits."""
    assert run(["limits", "--alpha", "0", "--format", "csv"]) == EXIT_OK
    rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
    assert len(rows) == 1
    assert rows[0]["alpha"] == "0"
    assert float(rows[0]["sigma2"]) == pytest.approx(2 / 45)
    assert float(rows[0]["rho"]) == pytest.approx(-1 / 45)


def test_moments(capsys):
    """Test if the moments CSV has one row per n starting at three leaves."""
    assert run(["moments", "--n", "6", "--alpha", "0"]) == EXIT_OK
    rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
    assert [int(row["n"]) for row in rows] == [3, 4, 5, 6]
    assert rows[0]["corr"] == ""
    assert float(rows[-1]["ec"]) == pytest.approx(2.0)


def test_moments_json(capsys):
    """Test if the moments JSON carries the last trace and the closed forms."""
    assert run(["moments", "--n", "50", "--alpha", "0.3", "--format", "json"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["trace"]["n"] == 50
    assert payload["closed_form"]["mean_c"] == pytest.approx(payload["trace"]["ec"], rel=1e-10)
    assert set(payload["second_moment_asymptotics"]) == {"var_c", "cov_ac", "var_a"}


def test_sweep(capsys):
    """Test if the sweep prints the requested columns over an inclusive grid."""
    assert run(["sweep", "--grid", "0:1:0.5", "--quantity", "sigma2,cov"]) == EXIT_OK
    rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
    assert [row["alpha"] for row in rows] == ["0", "0.5", "1"]
    assert list(rows[0]) == ["alpha", "sigma2", "cov"]
    assert float(rows[0]["sigma2"]) == pytest.approx(2 / 45)
    assert rows[1]["cov"] == "0"
    assert rows[2]["sigma2"] == "0"


def test_extrema(capsys):
    """Test if the extrema JSON reports both maximizers."""
    assert run(["extrema"]) == EXIT_OK
    extrema = json.loads(capsys.readouterr().out)
    assert extrema["a0"] == pytest.approx(0.7339, abs=1e-4)
    assert extrema["a1"] == pytest.approx(0.8688, abs=1e-4)


@pytest.mark.parametrize("engine", ["tree", "urn"])
def test_simulate(engine, tmp_path, capsys):
    """Test if a small campaign reports its counts and writes raw rows."""
    raw = tmp_path / "raw.csv"
    argv = ["simulate", "--n", "3", "--alpha", "0.5", "--trials", "25", "--engine", engine, "--raw-out", str(raw)]
    assert run(argv) == EXIT_OK
    summary = json.loads(capsys.readouterr().out)
    assert summary["counts"] == [[1, 1, 25]]
    assert summary["mean_c"] == 1.0
    assert len(raw.read_text().splitlines()) == 26


def test_simulate_csv(capsys):
    """Test if the simulate CSV lists one row per observed cell."""
    assert run(["simulate", "--n", "3", "--alpha", "0.5", "--trials", "4", "--format", "csv"]) == EXIT_OK
    assert capsys.readouterr().out == "n,alpha,a,c,count\n3,0.5,1,1,4\n"


def test_validate_subset(capsys):
    """Test if a passing subset of checks exits with status 0."""
    assert run(["validate", "--only", "special_limits,extrema"]) == EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert report["passed"] is True
    assert [check["name"] for check in report["checks"]] == ["special_limits", "extrema"]


def test_validate_failure_exit_status(capsys, monkeypatch):
    """Test if a failing check exits with status 2."""
    misplaced = CurveExtrema(a0=0.5, a1=0.5, sigma2_max=0.0, cov_max=0.0)
    monkeypatch.setattr("ford_cherries.montecarlo.harness.limit_curve_extrema", lambda: misplaced)
    assert run(["validate", "--only", "extrema"]) == EXIT_VALIDATION
    assert json.loads(capsys.readouterr().out)["passed"] is False


def test_format_value():
    """Test if measured values keep 17 digits, parameters print short and negative zero disappears."""
    assert format_value(2 / 3) == "0.66666666666666663"
    assert format_value(0.1, "alpha") == "0.1"
    assert format_value(-0.0) == "0"
    assert format_value(7) == "7"
    assert format_value(None) == ""


def test_writers():
    """Test if the CSV writer uses bare newlines and the JSON writer sorts keys."""
    stream = io.StringIO()
    write_csv(stream, ("alpha", "x"), [(0.25, 1.5)])
    assert stream.getvalue() == "alpha,x\n0.25,1.5\n"
    assert dump_json({"b": -0.0, "a": [1, 2]}) == '{\n  "a": [\n    1,\n    2\n  ],\n  "b": 0.0\n}\n'
