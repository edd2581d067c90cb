import numpy as np
import pandas as pd
import pytest

from cli.main import EXIT_CHECK_FAILED, EXIT_OK, EXIT_USAGE, main
from config import get_settings
from core.fixtures import read_matrices


def run(*argv, out):
    return main([*argv, "--out", str(out)])


# =============================================================================
# VERIFY
# =============================================================================

def test_verify_rotation(tmp_path):
    assert run("verify", "rotation2d", out=tmp_path) == EXIT_OK
    report = (tmp_path / "rotation2d_report.md").read_text(encoding="utf-8")
    assert "**Status:** PASSED" in report


def test_verify_exponential(tmp_path):
    assert run("verify", "exponential2x2", out=tmp_path) == EXIT_OK


def test_verify_corrupted_column(tmp_path, capsys):
    assert run("verify", "corrupted_column", out=tmp_path) == EXIT_CHECK_FAILED
    assert "column 0" in capsys.readouterr().err


def test_verify_with_seed_override(tmp_path):
    assert run("verify", "corrupted_column", "--seed", "5", out=tmp_path) == EXIT_CHECK_FAILED
    assert run("verify", "rotation2d", "--seed", "5", "--tol", "1e-9", out=tmp_path) == EXIT_OK


# =============================================================================
# SIMULATE
# =============================================================================

def test_simulate_rotation(tmp_path):
    assert run("simulate", "rotation2d", out=tmp_path) == EXIT_OK
    probabilities = pd.read_csv(tmp_path / "rotation2d_probabilities.csv")
    assert probabilities["value"].tolist() == pytest.approx([np.cos(0.7) ** 2, np.sin(0.7) ** 2], abs=1e-15)

    histogram_path = tmp_path / "rotation2d_histogram.csv"
    assert histogram_path.read_text(encoding="utf-8").splitlines()[0] == "index,value"
    histogram = pd.read_csv(histogram_path)
    draws = 100_000
    sigma = np.sqrt(draws * np.cos(0.7) ** 2 * np.sin(0.7) ** 2)
    assert histogram["value"].sum() == pytest.approx(1.0, abs=1e-12)
    assert abs(histogram["value"][0] * draws - draws * np.cos(0.7) ** 2) <= 3 * sigma

    assert (tmp_path / "rotation2d_density.txt").exists()
    expectation = pd.read_csv(tmp_path / "rotation2d_sigma_z.csv")
    assert expectation["value"][0] == pytest.approx(np.cos(1.4), abs=1e-12)


def test_simulate_is_byte_identical(tmp_path):
    first, second = tmp_path / "a", tmp_path / "b"
    assert run("simulate", "rotation2d", out=first) == EXIT_OK
    assert run("simulate", "rotation2d", out=second) == EXIT_OK
    for name in ("rotation2d_probabilities.csv", "rotation2d_histogram.csv", "rotation2d_interference.csv"):
        assert (first / name).read_bytes() == (second / name).read_bytes()


def test_simulate_measurement(tmp_path):
    assert run("simulate", "measurement", out=tmp_path) == EXIT_OK
    device = pd.read_csv(tmp_path / "measurement_device_probs.csv")
    assert device["probability"].tolist() == pytest.approx([0.5, 0.5], abs=1e-12)
    assert (tmp_path / "measurement_measurements.csv").exists()


def test_simulate_unknown_quantity(tmp_path, write_scenario):
    path = write_scenario(
        {
            "schema_version": 1,
            "name": "bad",
            "system": {"kind": "rotation-2d", "omega": 1.0},
            "queries": [{"time": 0.5, "quantity": "entropy"}],
        }
    )
    assert run("simulate", str(path), out=tmp_path) == EXIT_USAGE


def test_simulate_invalid_json(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text("{ not json", encoding="utf-8")
    assert run("simulate", str(path), out=tmp_path) == EXIT_USAGE
    assert "broken.json:1:3" in capsys.readouterr().err


# =============================================================================
# INTERFERE
# =============================================================================

def test_interfere_rotation(tmp_path):
    code = run("interfere", "rotation2d", "--t", repr(np.pi / 2), "--t-primes", "0," + repr(np.pi / 4), out=tmp_path)
    assert code == EXIT_OK
    frame = pd.read_csv(tmp_path / "rotation2d_interference.csv")
    assert frame["max_abs_discrepancy"].tolist() == pytest.approx([0.0, 0.5], abs=1e-12)


def test_interfere_grid(tmp_path):
    assert run("interfere", "rotation2d", "--t", repr(np.pi / 2), "--grid", "0:" + repr(np.pi / 2) + ":3", out=tmp_path) == EXIT_OK
    frame = pd.read_csv(tmp_path / "rotation2d_interference.csv")
    assert frame["max_abs_discrepancy"].tolist() == pytest.approx([0.0, 0.5, 0.0], abs=1e-12)


def test_interfere_needs_grid(tmp_path):
    assert run("interfere", "rotation2d", "--t", "1.0", out=tmp_path) == EXIT_USAGE


# =============================================================================
# DILATE E MEASURE
# =============================================================================

def test_dilate_identity_kraus(tmp_path, fixture_dir):
    assert run("dilate", str(fixture_dir / "identity_kraus.txt"), out=tmp_path) == EXIT_OK
    [unitary] = read_matrices(tmp_path / "identity_kraus_stinespring.txt")
    assert np.array_equal(unitary, np.eye(8))
    assert (tmp_path / "identity_kraus_dilation_report.md").exists()


def test_dilate_rotation_kraus(tmp_path, fixture_dir):
    assert run("dilate", str(fixture_dir / "rotation_quarter_kraus.txt"), "--gamma", "1", out=tmp_path) == EXIT_OK


def test_dilate_broken_kraus(tmp_path, fixture_dir, capsys):
    assert run("dilate", str(fixture_dir / "broken_kraus.txt"), out=tmp_path) == EXIT_CHECK_FAILED
    assert "failed" in capsys.readouterr().err


def test_measure(tmp_path):
    assert run("measure", "measurement", out=tmp_path) == EXIT_OK
    device = pd.read_csv(tmp_path / "measurement_device_probs.csv")
    assert device["probability"].tolist() == pytest.approx([0.5, 0.5], abs=1e-12)
    assert len(read_matrices(tmp_path / "measurement_collapsed.txt")) == 2


# =============================================================================
# USO
# =============================================================================

def test_missing_arguments():
    assert main(["verify"]) == EXIT_USAGE


def test_seed_out_of_range(tmp_path):
    assert run("verify", "rotation2d", "--seed", str(2 ** 64), out=tmp_path) == EXIT_USAGE


def test_non_positive_tolerance(tmp_path):
    assert run("verify", "rotation2d", "--tol", "0", out=tmp_path) == EXIT_USAGE


def test_missing_scenario_file(tmp_path):
    assert run("verify", str(tmp_path / "nothing.json"), out=tmp_path) == EXIT_USAGE


# =============================================================================
# CONFIGURAÇÃO POR AMBIENTE
# =============================================================================

@pytest.fixture
def fresh_settings():
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


def test_version(capsys):
    assert main(["--version"]) == EXIT_OK
    assert capsys.readouterr().out.strip().endswith(get_settings().APP_VERSION)


def test_rk4_steps_from_environment(tmp_path, monkeypatch, fresh_settings):
    monkeypatch.setenv("RK4_STEPS", "1")
    assert run("verify", "rotation2d", out=tmp_path) == EXIT_CHECK_FAILED
    assert "schrodinger" in (tmp_path / "rotation2d_report.md").read_text(encoding="utf-8")


def test_invalid_environment_setting(tmp_path, monkeypatch, fresh_settings, capsys):
    monkeypatch.setenv("RK4_STEPS", "0")
    assert run("verify", "rotation2d", out=tmp_path) == EXIT_USAGE
    assert "RK4_STEPS" in capsys.readouterr().err


def test_gram_schmidt_reject_from_environment(tmp_path, fixture_dir, monkeypatch, fresh_settings, capsys):
    monkeypatch.setenv("GRAM_SCHMIDT_REJECT", "2.0")
    assert run("dilate", str(fixture_dir / "identity_kraus.txt"), out=tmp_path) == EXIT_CHECK_FAILED
    assert "Gram-Schmidt" in capsys.readouterr().err
