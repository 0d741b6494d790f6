import json

import pytest
from click.testing import CliRunner

from blockfact.cli import main
from blockfact.schemas import instance_config
from blockfact.verify import canned_k1

runner = CliRunner()


@pytest.fixture()
def k1_path(tmp_path):
    path = tmp_path / "k1.json"
    path.write_text(json.dumps(instance_config(canned_k1())))
    return str(path)


def test_davenport():
    result = runner.invoke(main, ["davenport", "[3,3]"])
    assert result.exit_code == 0
    assert result.output.strip() == "5"


def test_davenport_bad_literal():
    result = runner.invoke(main, ["davenport", "nope"])
    assert result.exit_code == 2


def test_davenport_cap_exit_code():
    result = runner.invoke(main, ["davenport", "[100]"])
    assert result.exit_code == 3


def test_predict_pretty(k1_path):
    result = runner.invoke(main, ["predict", k1_path])
    assert result.exit_code == 0
    assert "c: 3" in result.output
    assert "rho: 3/2" in result.output
    assert "delta: {1}" in result.output


def test_atoms_json(k1_path):
    result = runner.invoke(main, ["atoms", k1_path, "--format", "json"])
    assert result.exit_code == 0
    doc = json.loads(result.output)
    assert doc["count"] == 4
    assert doc["closed_form_agrees"] is True


def test_factorize_identity(k1_path):
    literal = json.dumps({"free": {}, "parts": [[0, [0]]]})
    result = runner.invoke(main, ["factorize", k1_path, literal, "--format", "json"])
    assert result.exit_code == 0
    doc = json.loads(result.output)
    assert doc["factorizations"] == [[]]
    assert doc["rho"] == "1"


def test_factorize_bad_element(k1_path):
    literal = json.dumps({"free": [[1]], "parts": [[0, [0]]]})
    result = runner.invoke(main, ["factorize", k1_path, literal])
    assert result.exit_code == 2
    assert "element" in result.output


def test_invariants_json(k1_path):
    result = runner.invoke(main, ["invariants", k1_path, "--cap", "6", "--format", "json"])
    assert result.exit_code == 0
    doc = json.loads(result.output)
    assert doc["c"] == 3
    assert doc["rho"] == "3/2"
    assert doc["digest"]


def test_invariants_jsonl_rows(k1_path):
    result = runner.invoke(main, ["invariants", k1_path, "--cap", "5", "--format", "jsonl"])
    assert result.exit_code == 0
    rows = [json.loads(line) for line in result.output.strip().splitlines()]
    assert all({"element", "L", "delta", "rho", "c", "cmon"} <= set(r) for r in rows)
    assert any(r["rho"] == "3/2" for r in rows)


def test_invariants_csv_out_file(k1_path, tmp_path):
    out = tmp_path / "report.csv"
    result = runner.invoke(
        main, ["invariants", k1_path, "--cap", "5", "--format", "csv", "--out", str(out)]
    )
    assert result.exit_code == 0
    header = out.read_text().splitlines()[0]
    assert "rho" in header and "cap" in header


def test_malformed_instance_exit_code(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"group": [2], "components": [{"units": [3], "iota_p": [0], "iota_units": [[1]]}]}))
    result = runner.invoke(main, ["predict", str(bad)])
    assert result.exit_code == 2
    assert "components[0].iota_units[0]" in result.output


def test_verify_scenario(tmp_path):
    out = tmp_path / "report.jsonl"
    result = runner.invoke(
        main,
        [
            "verify",
            "--scenario", "closed-form-atoms",
            "--cap", "5",
            "--format", "jsonl",
            "--out", str(out),
        ],
    )
    assert result.exit_code == 0
    rows = [json.loads(line) for line in out.read_text().splitlines()]
    assert rows and all(row["ok"] for row in rows)


def test_verify_pretty():
    result = runner.invoke(main, ["verify", "--scenario", "sharp-local"])
    assert result.exit_code == 0
    assert "sharp-local-k2" in result.output
