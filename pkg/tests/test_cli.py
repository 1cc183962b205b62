import csv
import io
import json
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

from verlinde.cli import main

SCHEMA = json.loads(resources.files("verlinde").joinpath("schema/report.schema.json").read_text())

INVOCATIONS = [
    ["fusion", "--p", "5"],
    ["fusion", "--p", "7"],
    ["objects", "--p", "7"],
    ["sympowers", "--p", "5", "--object", "2L2+L3", "--max-degree", "3"],
    ["nilpotence", "--p", "7"],
    ["lie", "--p", "5", "--object", "1,2,3"],
    ["pbw", "--p", "5", "--target", "sl-L3"],
    ["pbw", "--p", "7", "--target", "sl-L2"],
    ["hopf-verify", "--p", "5", "--target", "O-sl-L2"],
    ["hopf-verify", "--p", "5", "--target", "corrupted-delta"],
    ["hc-roundtrip", "--p", "5", "--pair", "k-sl-L2"],
    ["hc-roundtrip", "--p", "5", "--pair", "smash-Z2-L2L2"],
    ["cohochschild", "--p", "5", "--object", "3"],
    ["gl-points", "--p", "5", "--algebra", "sq-L3"],
    ["pgl", "--p", "5", "--i", "2"],
]


def run(capsys, argv):
    code = main(argv)
    return code, capsys.readouterr().out


@pytest.mark.parametrize("argv", INVOCATIONS, ids=lambda a: "-".join(a))
def test_json_reports_validate(capsys, argv):
    code, out = run(capsys, argv + ["--format", "json"])
    report = json.loads(out)
    jsonschema.validate(report, SCHEMA)
    assert report["command"] == argv[0]
    assert code == (0 if report["all_pass"] else 1)
    assert report["all_pass"], [c for c in report["checks"] if not c["pass"]]
    assert "wall_clock_seconds" not in report


def test_output_is_deterministic(capsys):
    argv = ["hc-roundtrip", "--p", "5", "--pair", "k-sl-L3", "--format", "json"]
    _, first = run(capsys, argv)
    _, second = run(capsys, argv)
    assert first == second


def test_timing_flag(capsys):
    _, out = run(capsys, ["fusion", "--p", "5", "--format", "json", "--timing"])
    report = json.loads(out)
    jsonschema.validate(report, SCHEMA)
    assert report["wall_clock_seconds"] >= 0


def test_csv_format(capsys):
    code, out = run(capsys, ["fusion", "--p", "5", "--format", "csv"])
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0
    assert rows[0] == ["i\\j", "L1", "L2", "L3", "L4"]
    assert rows[2][2] == "L1 + L3"


def test_table_format(capsys):
    code, out = run(capsys, ["nilpotence", "--p", "5"])
    assert code == 0
    assert out.startswith("nilpotence  p=5")
    assert "PASS  L2_top_nonzero" in out


def test_out_file(tmp_path, capsys):
    target = tmp_path / "r.json"
    code = main(["pgl", "--p", "5", "--i", "4", "--format", "json", "--out", str(target)])
    assert code == 0
    assert capsys.readouterr().out == ""
    jsonschema.validate(json.loads(target.read_text()), SCHEMA)


def test_pbw_certificate(capsys):
    _, out = run(capsys, ["pbw", "--p", "5", "--target", "sl-L2", "--format", "json"])
    cert = json.loads(out)["certificate"]
    assert [d["grU"] for d in cert["degrees"]][:3] == [[1, 0, 0, 0], [0, 0, 1, 0], [1, 0, 0, 0]]


def test_hc_report_dimensions(capsys):
    _, out = run(capsys, ["hc-roundtrip", "--p", "5", "--pair", "smash-Z2-L2L2", "--format", "json"])
    hopf = json.loads(out)["hopf"]
    assert hopf["dim"] == 100
    assert hopf["dim_before_semisimplification"] == 200


@pytest.mark.parametrize("argv", [
    ["fusion", "--p", "4"],
    ["fusion", "--p", "3"],
    ["lie", "--p", "5", "--object", "L9"],
    ["lie", "--p", "5", "--object", "banana"],
    ["pbw", "--target", "nope"],
    ["pgl", "--p", "5", "--i", "1"],
])
def test_bad_arguments_exit_2(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_module_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "verlinde", "fusion", "--p", "5", "--format", "json"],
        capture_output=True, text=True, check=False,
    )
    assert out.returncode == 0
    assert json.loads(out.stdout)["all_pass"]
