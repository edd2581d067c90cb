import numpy as np
import pandas as pd
import pytest

from config import Settings
from core.exceptions import ProbabilityError, ScenarioError
from core.fixtures import read_matrices
from core.types import CheckStatus
from infrastructure.observability import CheckMetrics
from orchestrator.simulator import (
    build_timeline,
    interference_profile,
    run_measurement_scenario,
    simulate,
)
from orchestrator.verifier import verify_scenario
from scenario.loader import load_scenario
from services.exporter import ResultExporter


def _by_label(result):
    return {query.label: query for query in result.queries}


def _status(report, prefix):
    return [check.status for check in report.checks if check.name.startswith(prefix)]


# =============================================================================
# VERIFICAÇÃO
# =============================================================================

def test_rotation_preset_verifies():
    metrics = CheckMetrics()
    report = verify_scenario(load_scenario("rotation2d"), metrics)
    assert report.passed
    assert _status(report, "gauge-invariance") == [CheckStatus.PASSED] * 3
    assert report.summary["checks_failed"] == 0
    assert report.summary["checks_total"] == len(report.checks)


def test_exponential_preset_verifies():
    assert verify_scenario(load_scenario("exponential2x2")).passed


def test_corrupted_column_fails_and_names_column():
    report = verify_scenario(load_scenario("corrupted_column"))
    assert not report.passed
    [failure] = report.failed
    assert failure.name == "stochastic[t=1]"
    assert "column 0" in failure.detail


def test_gauge_check_skipped_without_seed(write_scenario):
    data = {
        "schema_version": 1,
        "name": "unseeded",
        "system": {"kind": "rotation-2d", "omega": 1.0},
        "check_times": [0.3],
    }
    report = verify_scenario(load_scenario(write_scenario(data)))
    assert report.passed
    assert _status(report, "gauge-invariance") == [CheckStatus.SKIPPED]


def test_measurement_and_division_presets_verify():
    assert verify_scenario(load_scenario("measurement")).passed
    assert verify_scenario(load_scenario("division")).passed


def test_schrodinger_check_follows_settings():
    report = verify_scenario(load_scenario("rotation2d"))
    assert _status(report, "schrodinger") == [CheckStatus.PASSED] * 3

    coarse = verify_scenario(load_scenario("rotation2d", settings=Settings(RK4_STEPS=1)))
    assert not coarse.passed
    assert coarse.failed
    assert all(check.name.startswith("schrodinger") for check in coarse.failed)


def test_schrodinger_check_skipped_for_division_family():
    statuses = _status(verify_scenario(load_scenario("division")), "schrodinger")
    assert statuses
    assert set(statuses) == {CheckStatus.SKIPPED}


def test_division_zero_tolerance_follows_settings():
    grid = [0.0, np.pi / 4]
    default = interference_profile(load_scenario("rotation2d"), np.pi / 2, grid)
    assert [p.division_event for p in default] == [True, False]
    loose = load_scenario("rotation2d", settings=Settings(DIVISION_ZERO_TOL=0.6))
    assert [p.division_event for p in interference_profile(loose, np.pi / 2, grid)] == [True, True]


# =============================================================================
# SIMULAÇÃO
# =============================================================================

def test_timeline_puts_events_before_queries():
    spec = load_scenario("measurement").spec
    steps = build_timeline(spec)
    assert [step.time for step in steps] == [0.5, 0.5, 1.0]
    assert steps[0].order == 0


def test_rotation_simulation_values():
    result = _by_label(simulate(load_scenario("rotation2d")))
    values = result["probabilities"].columns["value"]
    assert values == pytest.approx([np.cos(0.7) ** 2, np.sin(0.7) ** 2], abs=1e-12)
    assert result["sigma_z"].columns["value"][0] == pytest.approx(np.cos(1.4), abs=1e-12)
    assert result["density"].matrix.shape == (2, 2)

    frequencies = result["histogram"].columns["value"]
    sigma = np.sqrt(100_000 * np.cos(0.7) ** 2 * np.sin(0.7) ** 2)
    assert frequencies.sum() == pytest.approx(1.0, abs=1e-12)
    assert abs(frequencies[0] * 100_000 - 100_000 * np.cos(0.7) ** 2) <= 3 * sigma


def test_simulation_is_reproducible():
    first = _by_label(simulate(load_scenario("rotation2d")))["histogram"].columns["value"]
    second = _by_label(simulate(load_scenario("rotation2d")))["histogram"].columns["value"]
    assert np.array_equal(first, second)


def test_measurement_simulation():
    result = simulate(load_scenario("measurement"))
    queries = _by_label(result)
    assert queries["device_probs"].columns["probability"] == pytest.approx([0.5, 0.5], abs=1e-12)
    assert queries["probabilities"].columns["value"] == pytest.approx([0.5, 0.5], abs=1e-12)
    assert len(result.measurements) == 1


def test_division_simulation_interference():
    queries = _by_label(simulate(load_scenario("division")))
    profile = queries["interference"].columns
    assert profile["t_prime"].tolist() == [0.0, 1.0, 1.5]
    assert profile["max_abs_discrepancy"][0] < 1e-10
    assert profile["max_abs_discrepancy"][1] < 1e-10
    assert queries["probabilities"].columns["value"].sum() == pytest.approx(1.0, abs=1e-12)


def test_rotation_interference_profile():
    profile = interference_profile(load_scenario("rotation2d"), np.pi / 2, [0.0, np.pi / 4])
    assert profile[0].max_abs_discrepancy == pytest.approx(0.0, abs=1e-12)
    assert profile[1].max_abs_discrepancy == pytest.approx(0.5, abs=1e-12)


def test_draws_need_a_seed(write_scenario):
    data = {
        "schema_version": 1,
        "name": "unseeded",
        "system": {"kind": "rotation-2d", "omega": 1.0},
        "queries": [{"time": 0.4, "quantity": "probabilities", "draws": 10}],
    }
    with pytest.raises(ScenarioError) as info:
        simulate(load_scenario(write_scenario(data)))
    assert "seed" in info.value.message


def test_measurement_run_collapses_each_outcome():
    run = run_measurement_scenario(load_scenario("measurement"))
    assert run.result.t == 0.5
    assert len(run.collapsed) == 2
    assert run.repeat_probabilities == pytest.approx([1.0, 1.0], abs=1e-12)
    assert run.result.device_probs.entries == pytest.approx([0.5, 0.5], abs=1e-12)


def test_measure_needs_measurement_event():
    with pytest.raises(ScenarioError):
        run_measurement_scenario(load_scenario("rotation2d"))


# =============================================================================
# EXPORTAÇÃO
# =============================================================================

def test_distribution_columns_are_validated():
    with pytest.raises(ProbabilityError):
        ResultExporter.validate_columns({"index": np.arange(2), "value": np.array([0.5, 0.6])}, 1e-10)
    ResultExporter.validate_columns({"t_prime": np.zeros(2), "max_abs_discrepancy": np.ones(2)}, 1e-10)


def test_query_csv_round_trips(tmp_path):
    result = _by_label(simulate(load_scenario("rotation2d")))
    path = ResultExporter.write_query(result["probabilities"], tmp_path, "rotation2d")
    assert path.name == "rotation2d_probabilities.csv"
    frame = pd.read_csv(path)
    assert list(frame.columns) == ["index", "value"]
    assert frame["value"].tolist() == pytest.approx([np.cos(0.7) ** 2, np.sin(0.7) ** 2], abs=1e-15)


def test_density_query_writes_fixture(tmp_path):
    result = _by_label(simulate(load_scenario("rotation2d")))
    path = ResultExporter.write_query(result["density"], tmp_path, "rotation2d")
    assert path.suffix == ".txt"
    assert np.array_equal(read_matrices(path)[0], result["density"].matrix)


def test_measurement_run_files(tmp_path):
    run = run_measurement_scenario(load_scenario("measurement"))
    paths = ResultExporter.write_measurement_run(run, tmp_path, "measurement")
    assert [p.name for p in paths] == ["measurement_device_probs.csv", "measurement_hybrid.txt", "measurement_collapsed.txt"]
    assert len(read_matrices(paths[2])) == 2


def test_report_rendering(tmp_path):
    report = verify_scenario(load_scenario("corrupted_column"))
    table = ResultExporter.to_table(report.checks)
    assert "stochastic[t=1]" in table
    path = ResultExporter.write_report(report, tmp_path / "report.md")
    text = path.read_text(encoding="utf-8")
    assert text.startswith("# Verification report: corrupted_column")
    assert "**Status:** FAILED" in text
