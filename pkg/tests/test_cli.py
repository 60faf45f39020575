import json
import subprocess
import sys

import jsonschema
import pytest

from spinrep import __version__
from spinrep.cli import RunConfig, main, run
from spinrep.schema import REPORT_SCHEMA


def cli(*args):
    return subprocess.run([sys.executable, "-m", "spinrep", *args], capture_output=True, text=True)


def report(capsys, *args):
    code = main(list(args) + ["--no-timestamp"])
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_spectrum_schroedinger_one_three(capsys):
    code, doc = report(capsys, "spectrum", "--spin", "1", "--sites", "3", "--hamiltonian", "schroedinger")
    assert code == 0
    jsonschema.validate(doc, REPORT_SCHEMA)
    spectrum_doc = doc["result"]["spectrum"]
    assert [(c["exact"], c["multiplicity"]) for c in spectrum_doc["classes"]] == [("-3", 1), ("0", 16), ("3", 10)]
    assert all(c["exact_verified"] for c in spectrum_doc["classes"])
    assert spectrum_doc["trace"] == pytest.approx(27, abs=1e-10)
    copies = {r["value"]: (r["copies"], r["irrep_dim"]) for r in doc["result"]["decomposition"]}
    assert copies == {"-3": (1, 1), "0": (8, 2), "3": (10, 1)}
    assert doc["version"] == __version__
    assert doc["config"]["spin"] == "1" and doc["config"]["tol"] == 1e-10
    assert "snapping" in doc["provenance"]


def test_multiplets_table(capsys):
    code, doc = report(capsys, "multiplets", "--spin", "1", "--sites", "3")
    assert code == 0
    jsonschema.validate(doc, REPORT_SCHEMA)
    rows = [(r["total_spin"], r["multiplicity"]) for r in doc["result"]["table"]["rows"]]
    assert rows == [("0", 1), ("1", 3), ("2", 2), ("3", 1)]
    assert doc["result"]["table"]["dimension"] == 27 and doc["result"]["table"]["sum_rule_ok"]


def test_verify_prop5_half_two(capsys):
    code, doc = report(capsys, "verify", "--suite", "prop5", "--spin", "1/2", "--sites", "2")
    assert code == 0
    jsonschema.validate(doc, REPORT_SCHEMA)
    assert {c["status"] for c in doc["result"]["claims"]} == {"PASS"}
    assert all(c["samples"] in (0, 100) and c["seed"] in (0, 42) for c in doc["result"]["claims"])


def test_heisenberg_spectrum_cross_checked(capsys):
    code, doc = report(capsys, "spectrum", "--spin", "1/2", "--sites", "4")
    assert code == 0
    assert doc["result"]["multiplet_check"]["match"]


@pytest.mark.parametrize("action", ["closure", "jops", "dual"])
def test_qrep_reports_validate(capsys, action):
    code, doc = report(capsys, "qrep", action, "--spin", "1", "--sites", "3", "--kernel", "0,0")
    assert code == 0
    jsonschema.validate(doc, REPORT_SCHEMA)
    assert doc["result"]["action"] == action


def test_build_roundtrip(capsys):
    from spinrep.linalg import load_matrix

    code, doc = report(capsys, "build", "--spin", "1/2", "--sites", "2", "--hamiltonian", "schroedinger")
    assert code == 0
    jsonschema.validate(doc, REPORT_SCHEMA)
    M, system, R = load_matrix(doc["result"])
    assert system == {"sites": 2, "twice_spin": 1}
    assert R is not None and M.shape == (4, 4)


def test_csv_table(capsys):
    assert main(["spectrum", "--spin", "1/2", "--sites", "2", "--format", "csv-table"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "value,multiplicity,residual,exact_verified"
    assert lines[1].startswith("0,1,") and lines[2].startswith("2,3,")


def test_output_file(tmp_path, capsys):
    out = tmp_path / "r.json"
    assert main(["multiplets", "--spin", "1/2", "--sites", "3", "--output", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert "timestamp" in doc
    jsonschema.validate(doc, REPORT_SCHEMA)


def test_byte_identical_runs():
    args = ["verify", "--suite", "prop6", "--spin", "1", "--sites", "3", "--samples", "10", "--no-timestamp"]
    a, b = cli(*args), cli(*args)
    assert a.returncode == 0 and a.stdout == b.stdout and a.stdout


@pytest.mark.parametrize("args", [
    ["spectrum", "--spin", "1/3"],
    ["spectrum", "--sites", "0"],
    ["spectrum", "--tol", "-1"],
    ["spectrum", "--tol", "nan"],
    ["verify", "--samples", "0"],
    ["verify", "--suite", "prop9"],
    ["spectrum", "--graph", "1-1"],
    ["spectrum", "--hamiltonian", "ising"],
    ["qrep", "jops", "--spin", "1/2"],
    ["qrep", "dual", "--spin", "1", "--sites", "3", "--epsilon", "1"],
    ["qrep", "dual", "--spin", "1", "--kernel", "0"],
    ["build", "--format", "csv-table"],
    ["spectrum", "--spin", "1", "--convention", "exchange_match"],
])
def test_usage_errors_exit_nonzero(args):
    res = cli(*args)
    assert res.returncode == 2
    assert "error" in res.stderr


def test_capacity_error_names_cap():
    res = cli("spectrum", "--spin", "1/2", "--sites", "13")
    assert res.returncode == 3
    assert "4096" in res.stderr


def test_schema_command_prints_schema():
    res = cli("schema")
    assert res.returncode == 0 and json.loads(res.stdout)["title"] == "spinrep report"


def test_run_api_without_timestamp():
    status, doc = run(RunConfig(command="multiplets", spin="1/2", sites=2, timestamp=False))
    assert status == 0 and "timestamp" not in doc
