import csv
import io
import json
import subprocess
import sys

import pytest

from amplitrace import cli
from amplitrace.errors import ConsistencyError, NumericError


def _run(capsys, argv):
    code = cli.main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def _json(capsys, argv):
    code, out, err = _run(capsys, argv + ["--json"])
    assert code == 0, err
    return json.loads(out)


def test_catalog_lists_pairs(capsys):
    rep = _json(capsys, ["catalog"])
    assert len(rep["pairs"]) >= 12
    assert all(p["classification"] in ("ST", "T", "NT") for p in rep["pairs"])
    assert rep["schema_version"] == 1


def test_analyze_split_control(capsys):
    rep = _json(capsys, ["analyze-pair", "--pair", "split-control"])
    assert rep["h_large"] is False and rep["classification"] == "ST"
    assert rep["witness"] is None


def test_coset_count_gl2(capsys):
    rep = _json(capsys, ["coset-count", "--type", "GL2", "--lambda", "1,0", "--q", "5"])
    assert rep["value"] == 6
    assert rep["polynomial"] == [1, 1]
    rep = _json(capsys, ["coset-count", "--type", "A1", "--lambda", "1", "--q", "2,3,5"])
    assert [row["value"] for row in rep["table"]] == [6, 12, 30]
    assert rep["anchors"]["polynomial"]


def test_amplifier_plan(capsys):
    rep = _json(capsys, ["amplifier-plan", "--pair", "su21", "--P", "100", "--A", "10", "--delta0", "1"])
    assert rep["S"] == [53, 59, 61, 67, 71, 73, 79, 83, 89, 97]
    assert rep["nu"] == [1, -1]
    assert rep["budget"]["c"] == "1/20" and rep["budget"]["delta"] == "7/320"
    assert rep["period_bounds"]["cross_sum_certified"] is True
    rep = _json(capsys, ["amplifier-plan", "--pair", "maclachlan-reid", "--P", "3", "--A", "1",
                         "--delta0", "1", "--congruence", "0,7"])
    assert rep["degenerate"] is True and rep["S"] == []
    rep = _json(capsys, ["amplifier-plan", "--pair", "split-control", "--P", "10", "--A", "1", "--delta0", "1"])
    assert rep["h_large"] is False and rep["degenerate"] is True


def test_verify_arch_single_suite(capsys):
    rep = _json(capsys, ["verify-arch", "--model", "h2", "--suite", "displacement"])
    assert rep["pass"] is True and rep["model"] == "h2"


@pytest.mark.parametrize("argv", [
    ["analyze-pair", "--pair", "nope"],
    ["coset-count", "--type", "X9", "--lambda", "1"],
    ["coset-count", "--type", "A1", "--lambda", "1,0"],
    ["amplifier-plan", "--pair", "su21", "--P", "10", "--A", "10", "--delta0", "0"],
    ["amplifier-plan", "--pair", "su21", "--P", "10", "--A", "x", "--delta0", "1"],
    ["amplifier-plan", "--pair", "su21", "--P", "10", "--A", "1", "--delta0", "1", "--nu", "0,0"],
    ["verify-arch", "--model", "h2", "--suite", "kxi"],
    ["analyze-pair", "--pair", "su51", "--cap", "2"],
    [],
])
def test_invalid_input_exits_2(capsys, argv):
    code, out, err = _run(capsys, argv)
    assert code == 2
    assert out == ""


def test_consistency_and_numeric_exit_codes(capsys, monkeypatch):
    def boom_consistency(cfg):
        raise ConsistencyError("oracle mismatch")

    def boom_numeric(cfg):
        raise NumericError("quadrature failed")

    monkeypatch.setitem(cli.HANDLERS, "catalog", boom_consistency)
    assert _run(capsys, ["catalog"])[0] == 3
    monkeypatch.setitem(cli.HANDLERS, "catalog", boom_numeric)
    code, _, err = _run(capsys, ["catalog"])
    assert code == 4 and "quadrature failed" in err


def test_report_schema_violation_is_consistency_error(monkeypatch):
    monkeypatch.setitem(cli.HANDLERS, "coset-count", lambda cfg: {"value": 1})
    with pytest.raises(ConsistencyError):
        cli.run({"version": 1, "command": "coset-count", "type": "A1", "lambda": [1]})


@pytest.mark.parametrize("cfg", [
    {"version": 1, "command": "catalog", "colour": "red"},
    {"version": 2, "command": "catalog"},
    {"version": 1, "command": "dance"},
    {"version": 1, "command": "amplifier-plan", "pair": "su21", "P": 1, "A": "1", "delta0": "1"},
    {"version": 1, "command": "coset-count", "type": "A1", "lambda": [1], "q": [1]},
])
def test_config_validation(cfg, tmp_path, capsys):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(cfg))
    assert _run(capsys, ["--config", str(path)])[0] == 2


def test_config_file_and_determinism(tmp_path, capsys):
    cfg = {"version": 1, "command": "coset-count", "type": "A2", "lambda": [1, 0], "q": [2, 3], "output": "json"}
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(cfg))
    code, first, _ = _run(capsys, ["--config", str(path)])
    assert code == 0
    code, second, _ = _run(capsys, ["--config", str(path)])
    assert first == second
    rep = json.loads(first)
    assert rep["polynomial_text"] == "q^4 + 2*q^3 + 2*q^2 + q"
    cli.validate_report(rep)
    assert _run(capsys, ["--config", str(tmp_path / "missing.json")])[0] == 2
    (tmp_path / "bad.json").write_text("{not json")
    assert _run(capsys, ["--config", str(tmp_path / "bad.json")])[0] == 2


@pytest.mark.parametrize("argv", [
    ["catalog"],
    ["analyze-pair", "--pair", "so41"],
    ["coset-count", "--type", "B2", "--lambda", "1,1", "--q", "2,7"],
    ["amplifier-plan", "--pair", "maclachlan-reid", "--P", "10", "--A", "10", "--delta0", "1"],
    ["verify-arch", "--model", "h3", "--suite", "tube", "--seed", "4"],
])
def test_reports_round_trip_through_schema(capsys, argv):
    code, out, _ = _run(capsys, argv + ["--json"])
    assert code == 0
    rep = json.loads(out)
    cli.validate_report(rep)
    assert json.loads(json.dumps(rep)) == rep
    code, again, _ = _run(capsys, argv + ["--json"])
    assert again == out


def test_csv_and_text_output(capsys):
    code, out, _ = _run(capsys, ["coset-count", "--type", "A1", "--lambda", "1", "--q", "2,3", "--output", "csv"])
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [r["value"] for r in rows] == ["6", "12"]
    code, out, _ = _run(capsys, ["--output", "csv", "catalog"])
    assert code == 0 and out.splitlines()[0].startswith("pair,")
    code, out, _ = _run(capsys, ["analyze-pair", "--pair", "so31"])
    assert code == 0 and "classification: T" in out
    code, out, _ = _run(capsys, ["analyze-pair", "--pair", "so31", "--output", "csv"])
    assert out.splitlines()[0] == "key,value"


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "amplitrace.cli", "coset-count", "--type", "GL2",
                           "--lambda", "1,0", "--q", "5", "--json"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["value"] == 6
