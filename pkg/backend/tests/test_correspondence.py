import numpy as np
import pytest

from core.exceptions import DimensionError, KrausIdentityError, StochasticityError, ValidationError
from core.linalg import random_phases
from correspondence.correspondence_model import DensityMatrix, EvolutionOperator, KrausSet, PhaseMatrix, StateVector
from correspondence.dictionary import (
    born_rule,
    dictionary_routes,
    evolution_from_stochastic,
    kraus_decomposition,
    kraus_from_evolution,
    stochastic_from_evolution,
)
from correspondence.gauge import build_frame, gauge_schur_hadamard, gauge_unitary
from correspondence.states import (
    configuration_probabilities,
    density_matrix,
    expectation_qm,
    state_vector,
    to_heisenberg,
)
from stochastic.layer import propagate
from stochastic.stochastic_model import ProbabilityVector, StochasticMatrix


def _sizes(rng, count):
    return [int(n) for n in rng.integers(2, 9, size=count)]


# =============================================================================
# DICIONÁRIO
# =============================================================================

def test_dictionary_routes_agree(random_theta, rng):
    for n in _sizes(rng, 100):
        by_modulus, by_trace, residual = dictionary_routes(random_theta(n))
        assert residual < 1e-12
        assert np.max(np.abs(by_modulus.sum(axis=0) - 1.0)) < 1e-12


@pytest.mark.slow
def test_dictionary_routes_agree_sweep(random_theta, rng):
    for n in _sizes(rng, 1000):
        assert dictionary_routes(random_theta(n))[2] < 1e-12


def test_unitary_evolution_is_doubly_stochastic(unitary, rng):
    for n in _sizes(rng, 100):
        gamma = stochastic_from_evolution(EvolutionOperator(unitary(n), tol=1e-12))
        assert gamma.is_doubly_stochastic(1e-12)


@pytest.mark.slow
def test_unitary_evolution_is_doubly_stochastic_sweep(unitary, rng):
    for n in _sizes(rng, 1000):
        gamma = stochastic_from_evolution(EvolutionOperator(unitary(n)))
        assert np.max(np.abs(gamma.row_sums() - 1.0)) < 1e-12


def test_permutation_theta_gives_same_permutation():
    P = np.eye(3)[:, [2, 0, 1]]
    gamma = stochastic_from_evolution(EvolutionOperator(P))
    assert np.array_equal(gamma.entries, P)


def test_evolution_operator_rejects_bad_column():
    theta = np.array([[1.0, 0.5], [0.0, 0.5]])
    with pytest.raises(StochasticityError) as info:
        EvolutionOperator(theta)
    assert info.value.column == 1


def test_round_trip_through_square_root(stochastic, rng):
    for _ in range(100):
        gamma = stochastic(int(rng.integers(2, 7)))
        back = stochastic_from_evolution(evolution_from_stochastic(gamma), tol=1e-12)
        assert np.max(np.abs(back.entries - gamma.entries)) <= 1e-14


def test_born_rule_of_state_vector():
    psi = StateVector(np.array([0.6, 0.8j]))
    assert np.allclose(born_rule(psi).entries, [0.36, 0.64])


# =============================================================================
# KRAUS
# =============================================================================

def test_kraus_identity_and_decomposition(random_theta, rng):
    for n in _sizes(rng, 100):
        theta = random_theta(n)
        kraus = kraus_from_evolution(theta)
        assert len(kraus) == n
        assert kraus.identity_residual() < 1e-12
        assert np.max(np.abs(kraus_decomposition(kraus) - np.abs(theta.theta) ** 2)) < 1e-12


def test_kraus_set_rejects_broken_identity():
    with pytest.raises(KrausIdentityError):
        KrausSet((0.9 * np.eye(2),))


def test_kraus_operators_must_share_shape():
    with pytest.raises(DimensionError):
        KrausSet((np.eye(2), np.eye(3)))


# =============================================================================
# ESTADOS
# =============================================================================

def test_density_matrix_reproduces_propagated_probabilities(random_theta, rng):
    for n in _sizes(rng, 50):
        theta = random_theta(n)
        p0 = ProbabilityVector(rng.dirichlet(np.ones(n)), tol=1e-10)
        rho = density_matrix(theta, p0)
        gamma = StochasticMatrix(np.abs(theta.theta) ** 2, tol=1e-10)
        assert np.allclose(configuration_probabilities(rho).entries, propagate(gamma, p0).entries, atol=1e-12)


def test_state_vector_is_column(random_theta):
    theta = random_theta(4)
    psi = state_vector(theta, 2)
    assert np.array_equal(psi.psi, theta.theta[:, 2])
    assert np.allclose(psi.density().rho, density_matrix(theta, ProbabilityVector.point(4, 2)).rho)


def test_expectation_matches_heisenberg_picture(random_theta, hermitian, rng):
    theta = random_theta(5)
    p0 = ProbabilityVector(rng.dirichlet(np.ones(5)), tol=1e-10)
    A = hermitian(5)
    schrodinger = expectation_qm(A, density_matrix(theta, p0))
    heisenberg = np.real(np.trace(to_heisenberg(A, theta) @ np.diag(p0.entries)))
    assert schrodinger == pytest.approx(heisenberg, abs=1e-12)


def test_expectation_of_diagonal_observable_is_stochastic_average(random_theta):
    theta = random_theta(3)
    rho = density_matrix(theta, ProbabilityVector.point(3, 0))
    a = np.array([1.0, 2.0, -1.0])
    assert expectation_qm(np.diag(a), rho) == pytest.approx(float(a @ rho.probabilities()), abs=1e-12)


def test_density_matrix_validation():
    with pytest.raises(ValidationError):
        DensityMatrix(np.diag([0.5, 0.6]))
    with pytest.raises(ValidationError):
        DensityMatrix(np.diag([1.5, -0.5]))


# =============================================================================
# GAUGE
# =============================================================================

def test_schur_hadamard_gauge_preserves_gamma(random_theta, rng):
    for n in _sizes(rng, 50):
        theta = random_theta(n)
        phased = gauge_schur_hadamard(theta, PhaseMatrix(random_phases((n, n), rng)))
        assert np.max(np.abs(np.abs(phased.theta) ** 2 - np.abs(theta.theta) ** 2)) < 1e-12


def test_unitary_gauge_preserves_observables(random_theta, unitary, hermitian, rng):
    for _ in range(50):
        n = int(rng.integers(2, 7))
        theta = random_theta(n)
        p0 = ProbabilityVector(rng.dirichlet(np.ones(n)), tol=1e-10)
        frame = build_frame(theta, p0, observables=(hermitian(n),), j=0)
        moved = gauge_unitary(frame, unitary(n), unitary(n))
        assert np.max(np.abs(moved.transition_matrix() - frame.transition_matrix())) < 1e-12
        assert np.max(np.abs(moved.probabilities() - frame.probabilities())) < 1e-12
        assert moved.expectations()[0] == pytest.approx(frame.expectations()[0], abs=1e-12)
        assert np.isclose(np.vdot(moved.psi.psi, moved.psi.psi).real, 1.0)


@pytest.mark.slow
def test_gauge_invariance_sweep(random_theta, unitary, hermitian, rng):
    for _ in range(500):
        n = int(rng.integers(2, 9))
        theta = random_theta(n)
        frame = build_frame(theta, ProbabilityVector.uniform(n), observables=(hermitian(n),))
        moved = gauge_unitary(frame, unitary(n), unitary(n))
        phased = gauge_schur_hadamard(theta, PhaseMatrix(random_phases((n, n), rng)))
        assert np.max(np.abs(moved.transition_matrix() - frame.transition_matrix())) < 1e-12
        assert np.max(np.abs(np.abs(phased.theta) ** 2 - np.abs(theta.theta) ** 2)) < 1e-12


def test_phase_matrix_shape_must_match(random_theta):
    with pytest.raises(DimensionError):
        gauge_schur_hadamard(random_theta(3), PhaseMatrix(np.zeros((2, 2))))
