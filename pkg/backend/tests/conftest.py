"""
Fixtures compartilhadas dos testes.
"""

import json
from pathlib import Path

import numpy as np
import pytest

from core.linalg import random_hermitian, random_unit_columns, random_unitary
from correspondence.correspondence_model import DensityMatrix, EvolutionOperator
from stochastic.sampling import make_rng
from stochastic.stochastic_model import StochasticMatrix

BACKEND_DIR = Path(__file__).resolve().parent.parent
FIXTURE_DIR = BACKEND_DIR / "fixtures"


@pytest.fixture
def rng():
    return make_rng(20260101)


@pytest.fixture
def fixture_dir() -> Path:
    return FIXTURE_DIR


@pytest.fixture
def random_theta(rng):
    """Θ complexa com colunas de norma 1."""

    def factory(n: int) -> EvolutionOperator:
        return EvolutionOperator(random_unit_columns(n, rng))

    return factory


@pytest.fixture
def unitary(rng):
    def factory(n: int) -> np.ndarray:
        return random_unitary(n, rng)

    return factory


@pytest.fixture
def hermitian(rng):
    def factory(n: int, scale: float = 1.0) -> np.ndarray:
        return random_hermitian(n, rng, scale)

    return factory


@pytest.fixture
def stochastic(rng):
    """Γ com colunas de Dirichlet uniforme."""

    def factory(n: int) -> StochasticMatrix:
        return StochasticMatrix(rng.dirichlet(np.ones(n), size=n).T, tol=1e-10)

    return factory


@pytest.fixture
def density(rng):
    """ρ = G G† / tr(G G†) com G gaussiana complexa."""

    def factory(n: int) -> DensityMatrix:
        G = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        rho = G @ np.conj(G).T
        rho = rho / np.trace(rho)
        return DensityMatrix(0.5 * (rho + np.conj(rho).T), tol=1e-10)

    return factory


@pytest.fixture
def write_scenario(tmp_path):
    """Grava um dicionário como cenário JSON em tmp_path."""

    def factory(data: dict, name: str = "scenario.json") -> Path:
        path = tmp_path / name
        path.write_text(json.dumps(data), encoding="utf-8")
        return path

    return factory
