import json
from pathlib import Path

import pytest
from click.testing import CliRunner

from nctangent.cli import main

SCENARIOS = Path(__file__).resolve().parent.parent / "scenarios"


def run(*args):
    return CliRunner().invoke(main, list(args))


def report_of(result):
    return json.loads(result.output)


def statuses(result):
    return {c["id"]: c["status"] for c in report_of(result)["checks"]}


def test_hopf_check_passes():
    result = run("hopf-check", "--scenario", str(SCENARIOS / "hopf_d3.json"))
    assert result.exit_code == 0
    got = statuses(result)
    assert got == {
        "hopf:antipode": "pass",
        "hopf:coassociativity": "pass",
        "hopf:commutators": "pass",
        "hopf:counit": "pass",
    }


def test_partition_check_matrix_diagonal():
    result = run(
        "partition-check", "--scenario", str(SCENARIOS / "matrix_partition.json")
    )
    assert result.exit_code == 0
    got = statuses(result)
    assert set(got) == {
        "partition:membership",
        "partition:local-finiteness",
        "partition:positivity-witness",
        "partition:sum-law",
    }
    assert all(v == "pass" for v in got.values())


def test_partition_check_moyal_surrogate():
    result = run(
        "partition-check", "--scenario", str(SCENARIOS / "moyal_truncated.json")
    )
    assert result.exit_code == 0
    assert all(v == "pass" for v in statuses(result).values())


def test_partition_reconstruction_with_covering():
    result = run(
        "partition-check", "--scenario", str(SCENARIOS / "function_4pt.json")
    )
    assert result.exit_code == 0
    assert statuses(result)["partition:reconstruction"] == "pass"


def test_covering_check_block_model():
    result = run(
        "covering-check", "--scenario", str(SCENARIOS / "block_model.json")
    )
    assert result.exit_code == 0
    got = statuses(result)
    assert len(got) == 6
    assert all(v == "pass" for v in got.values())


def test_adapted_check_reports_discrepancy():
    result = run(
        "adapted-check", "--scenario", str(SCENARIOS / "function_4pt.json")
    )
    assert result.exit_code == 1
    got = statuses(result)
    assert got["adapted:closure"] == "pass"
    assert got["adapted:literal"] == "fail"
    witness = next(
        c["witness"]
        for c in report_of(result)["checks"]
        if c["id"] == "adapted:literal"
    )
    assert "9/25" in json.dumps(witness)


def test_glue_derivations_block_model():
    result = run(
        "glue-derivations", "--scenario", str(SCENARIOS / "block_model.json")
    )
    assert result.exit_code == 0
    assert statuses(result) == {"glue:leibniz": "pass", "glue:roundtrip": "pass"}


def test_forms_check_block_model():
    result = run("forms-check", "--scenario", str(SCENARIOS / "block_model.json"))
    assert result.exit_code == 0
    got = statuses(result)
    assert set(got) == {
        "forms:dd-zero",
        "forms:duality",
        "forms:wedge-compat",
        "forms:d-locality",
    }
    assert all(v == "pass" for v in got.values())


def test_forms_check_single_chart():
    result = run("forms-check", "--scenario", str(SCENARIOS / "m3_model.json"))
    assert result.exit_code == 0
    assert set(statuses(result)) == {"forms:dd-zero", "forms:duality"}


def test_curvature_constant_imaginary():
    result = run("curvature", "--scenario", str(SCENARIOS / "curvature_d1.json"))
    assert result.exit_code == 0
    assert all(v == "pass" for v in statuses(result).values())


def test_curvature_seeded():
    result = run(
        "curvature", "--scenario", str(SCENARIOS / "m3_model.json"), "--seed", "3"
    )
    assert result.exit_code == 0
    assert report_of(result)["seed"] == 3
    assert all(v == "pass" for v in statuses(result).values())


def test_curvature_real_gamma_fails(tmp_path):
    scenario = {
        "kappa": "1",
        "d": 1,
        "algebra": {"model": "matrix", "n": 2},
        "action": {"type": "canonical", "N": 2},
        "connection": {"type": "constant", "value": "2"},
    }
    path = tmp_path / "real_gamma.json"
    path.write_text(json.dumps(scenario))
    result = run("curvature", "--scenario", str(path))
    assert result.exit_code == 1
    got = statuses(result)
    assert got["curvature:coefficients"] == "fail"
    assert got["curvature:axioms"] == "fail"


def test_all_command_block_model():
    result = run("all", "--scenario", str(SCENARIOS / "block_model.json"))
    assert result.exit_code == 0
    ids = [c["id"] for c in report_of(result)["checks"]]
    assert ids == sorted(ids)
    assert len(ids) == 23


def test_report_deterministic():
    args = (
        "forms-check",
        "--scenario",
        str(SCENARIOS / "block_model.json"),
        "--seed",
        "5",
    )
    first = report_of(run(*args))
    second = report_of(run(*args))
    strip = lambda rep: [
        {k: v for k, v in c.items() if k != "millis"} for c in rep["checks"]
    ]
    assert strip(first) == strip(second)
    assert first["seed"] == 5


def test_out_writes_report(tmp_path):
    out = tmp_path / "report.json"
    result = run(
        "partition-check",
        "--scenario",
        str(SCENARIOS / "matrix_partition.json"),
        "--out",
        str(out),
    )
    assert result.exit_code == 0
    assert json.loads(out.read_text()) == report_of(result)


def test_zero_kappa_rejected(tmp_path):
    path = tmp_path / "zero.json"
    path.write_text('{"kappa": "0", "d": 1}')
    result = run("hopf-check", "--scenario", str(path))
    assert result.exit_code == 2
    assert "kappa must be positive" in result.output


def test_undersized_canonical_action_rejected(tmp_path):
    scenario = {
        "kappa": "1",
        "d": 2,
        "algebra": {"model": "matrix", "n": 2},
        "action": {"type": "canonical", "N": 2},
    }
    path = tmp_path / "small.json"
    path.write_text(json.dumps(scenario))
    result = run("forms-check", "--scenario", str(path))
    assert result.exit_code == 2
    assert "N >= d+1" in result.output


def test_missing_section_named_in_diagnostic():
    result = run(
        "partition-check", "--scenario", str(SCENARIOS / "hopf_d3.json")
    )
    assert result.exit_code == 2
    assert "algebra" in result.output


def test_malformed_json_rejected(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("not json")
    result = run("all", "--scenario", str(path))
    assert result.exit_code == 2
    assert "not valid JSON" in result.output
