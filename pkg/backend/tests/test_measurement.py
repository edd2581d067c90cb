import numpy as np
import pytest

from core.exceptions import InvalidIndexError, NonInjectiveMapError, NotSelfAdjointError, PreconditionError
from core.linalg import max_abs
from dynamics.family_model import SIGMA_Y, ConstantHamiltonianFamily, RotationFamily
from dynamics.generators import evaluate
from measurement.measurement_model import MeasurementScenario
from measurement.observables import emergeable_expectation_residual, emergeable_velocity, spectral_decompose
from measurement.process import collapse, device_born_rule, hybrid_matrix, repeat_probability, run_measurement
from measurement.uncertainty import uncertainty_check

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]])
SIGMA_Z = np.diag([1.0, -1.0])


def _sigma_x_scenario(d_of=(0, 1), e_of=(2, 0)):
    return MeasurementScenario(
        observable=spectral_decompose(SIGMA_X),
        device_dim=2,
        environment_dim=3,
        d_of=d_of,
        e_of=e_of,
        t_prime=0.5,
        post_subject=ConstantHamiltonianFamily(SIGMA_Z),
    )


def _random_scenario(rng, unitary, hermitian, observable=None):
    n = observable.shape[0] if observable is not None else int(rng.integers(2, 5))
    decomposed = spectral_decompose(hermitian(n) if observable is None else observable)
    outcomes = decomposed.outcome_count
    device, environment = outcomes + int(rng.integers(0, 2)), outcomes + int(rng.integers(0, 2))
    return MeasurementScenario(
        observable=decomposed,
        device_dim=device,
        environment_dim=environment,
        d_of=tuple(rng.choice(device, size=outcomes, replace=False)),
        e_of=tuple(rng.choice(environment, size=outcomes, replace=False)),
        pre_unitary=unitary(n),
        initial_configuration=int(rng.integers(0, n)),
        t_prime=0.3,
        post_subject=ConstantHamiltonianFamily(hermitian(n, 0.5)),
        post_device=ConstantHamiltonianFamily(hermitian(device, 0.5)),
    )


# =============================================================================
# OBSERVÁVEIS
# =============================================================================

def test_spectral_decomposition_of_sigma_x():
    observable = spectral_decompose(SIGMA_X)
    assert observable.eigenvalues == pytest.approx((-1.0, 1.0))
    assert np.allclose(observable.eigenvector(1), np.array([1.0, 1.0]) / np.sqrt(2.0))
    assert max_abs(sum(observable.projectors) - np.eye(2)) < 1e-12


def test_degenerate_eigenvalues_share_a_projector():
    observable = spectral_decompose(np.diag([1.0, 1.0, 2.0]))
    assert observable.outcome_count == 2
    assert observable.rank(0) == 2
    assert observable.eigenvector(0) is None
    assert np.allclose(observable.projectors[0], np.diag([1.0, 1.0, 0.0]))


def test_degeneracy_tolerance_is_absolute():
    assert spectral_decompose(np.diag([1.0, 1.0 + 5e-9])).outcome_count == 1
    assert spectral_decompose(np.diag([1.0, 1.0 + 2e-8])).outcome_count == 2
    wide = spectral_decompose(np.diag([0.0, 1e6, 1e6 + 1e-3]))
    assert wide.outcome_count == 3
    assert wide.eigenvalues[2] - wide.eigenvalues[1] == pytest.approx(1e-3, rel=1e-6)


def test_spectral_decomposition_requires_self_adjoint():
    with pytest.raises(NotSelfAdjointError):
        spectral_decompose(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_emergeable_velocity_of_rotation():
    velocity = emergeable_velocity(SIGMA_Z, RotationFamily(0.7))
    assert max_abs(velocity + 2 * 0.7 * SIGMA_X) < 1e-8
    assert max_abs(velocity @ SIGMA_Z - SIGMA_Z @ velocity) > 1.0


def test_emergeable_velocity_matches_expectation_rate(density):
    family = ConstantHamiltonianFamily(SIGMA_X + 0.5 * SIGMA_Y)
    assert emergeable_expectation_residual(SIGMA_Z, family, density(2)) < 1e-7


def test_emergeable_velocity_rejects_bad_step():
    with pytest.raises(PreconditionError):
        emergeable_velocity(SIGMA_Z, RotationFamily(1.0), dt=0.0)


# =============================================================================
# PROCESSO DE MEDIÇÃO
# =============================================================================

def test_device_born_rule_for_sigma_x():
    assert np.allclose(device_born_rule(_sigma_x_scenario()).entries, [0.5, 0.5], atol=1e-12)


def test_device_probabilities_ignore_label_choice():
    first = device_born_rule(_sigma_x_scenario()).entries
    second = device_born_rule(_sigma_x_scenario(d_of=(1, 0), e_of=(0, 1))).entries
    assert np.allclose(first, second, atol=1e-14)


def test_labels_must_be_injective():
    with pytest.raises(NonInjectiveMapError):
        _sigma_x_scenario(d_of=(1, 1))


def test_hybrid_matrix_is_stochastic():
    matrix, residual = hybrid_matrix(_sigma_x_scenario(), 1.4)
    assert np.allclose(matrix.sum(axis=0), 1.0, atol=1e-12)
    assert residual < 1e-12


def test_run_measurement_routes_agree():
    result = run_measurement(_sigma_x_scenario(), 1.0)
    assert result.subject_route_residual < 1e-10
    assert np.allclose(result.subject_probs, [0.5, 0.5], atol=1e-12)
    assert result.joint_probs.shape == (2, 2, 3)
    assert np.allclose(result.mixed_density.rho, 0.5 * np.eye(2), atol=1e-12)


def test_degenerate_observable_skips_hybrid_route():
    scenario = MeasurementScenario(
        observable=spectral_decompose(np.diag([1.0, 1.0, 2.0])),
        device_dim=2,
        environment_dim=2,
        d_of=(0, 1),
        e_of=(1, 0),
        pre_unitary=np.eye(3)[:, [0, 2, 1]],
    )
    result = run_measurement(scenario, 0.0)
    assert result.subject_route_residual is None
    assert np.allclose(result.device_probs.entries, [1.0, 0.0])
    assert np.allclose(result.conditional_densities[0].rho, np.diag([0.5, 0.5, 0.0]))


def test_measurement_before_event_is_rejected():
    with pytest.raises(PreconditionError):
        run_measurement(_sigma_x_scenario(), 0.2)


def test_collapse_returns_eigenvector_at_event():
    scenario = _sigma_x_scenario()
    collapsed = collapse(scenario, 1, scenario.t_prime)
    assert collapsed.eigenvalue == pytest.approx(1.0)
    assert np.allclose(collapsed.state.psi, scenario.observable.eigenvector(1))
    assert np.allclose(collapsed.density.probabilities(), [0.5, 0.5])


def test_collapse_rejects_unknown_outcome():
    with pytest.raises(InvalidIndexError):
        collapse(_sigma_x_scenario(), 2, 1.0)


def test_repeat_measurement_is_certain():
    scenario = _sigma_x_scenario()
    for alpha in range(2):
        assert repeat_probability(scenario, alpha) == pytest.approx(1.0, abs=1e-12)


def test_random_measurement_scenarios(rng, unitary, hermitian):
    for _ in range(20):
        scenario = _random_scenario(rng, unitary, hermitian)
        result = run_measurement(scenario, 0.3 + float(rng.uniform(0.0, 2.0)))
        assert result.subject_route_residual < 1e-10
        assert result.device_probs.entries.sum() == pytest.approx(1.0, abs=1e-12)


def test_configuration_observable_hybrid_matches_subject_gamma(rng, unitary, hermitian):
    for _ in range(20):
        n = int(rng.integers(2, 5))
        values = rng.permutation(np.arange(n, dtype=float) * 1.5 - 1.0)
        scenario = _random_scenario(rng, unitary, hermitian, observable=np.diag(values))
        t = scenario.t_prime + float(rng.uniform(0.0, 2.0))
        matrix, _ = hybrid_matrix(scenario, t)
        gamma = np.abs(evaluate(scenario.post_subject, t - scenario.t_prime)) ** 2
        # resultado α ↔ configuração com o α-ésimo menor valor
        assert max_abs(matrix - gamma[:, np.argsort(values)]) < 1e-12


def test_mixed_density_is_weighted_projector_sum(rng, unitary, hermitian):
    for k in range(20):
        n = int(rng.integers(2, 5))
        q = unitary(n)
        spectrum = rng.normal(size=n)
        if k % 2:
            spectrum[1] = spectrum[0]
        spectrum = np.sort(spectrum)
        A = q @ np.diag(spectrum) @ np.conj(q).T
        scenario = _random_scenario(rng, unitary, hermitian, observable=0.5 * (A + np.conj(A).T))
        t = scenario.t_prime + float(rng.uniform(0.0, 2.0))
        result = run_measurement(scenario, t)

        psi = scenario.subject_state()
        weighted = np.zeros((n, n), dtype=complex)
        for value in np.unique(spectrum):
            basis = q[:, spectrum == value]
            P = basis @ np.conj(basis).T
            weighted += np.real(np.vdot(psi, P @ psi)) * P / basis.shape[1]
        U = evaluate(scenario.post_subject, t - scenario.t_prime)
        assert max_abs(result.mixed_density.rho - U @ weighted @ np.conj(U).T) < 1e-12


@pytest.mark.slow
def test_random_measurement_sweep(rng, unitary, hermitian):
    for _ in range(200):
        scenario = _random_scenario(rng, unitary, hermitian)
        run_measurement(scenario, 0.3 + float(rng.uniform(0.0, 5.0)))
        for alpha in range(scenario.observable.outcome_count):
            assert repeat_probability(scenario, alpha) == pytest.approx(1.0, abs=1e-10)


# =============================================================================
# INCERTEZA
# =============================================================================

def test_uncertainty_is_tight_for_pauli_pair():
    result = uncertainty_check(SIGMA_X, SIGMA_Y, np.diag([1.0, 0.0]))
    assert result.lhs == pytest.approx(1.0)
    assert result.rhs == pytest.approx(1.0)
    assert result.satisfied


def test_uncertainty_on_random_states(rng, hermitian, density):
    for _ in range(500):
        n = int(rng.integers(2, 7))
        assert uncertainty_check(hermitian(n), hermitian(n), density(n)).satisfied


def test_uncertainty_in_eigenstate_of_large_observable(unitary):
    B = np.diag([1.0, -1.0, 0.5, 0.0])
    for _ in range(200):
        q = unitary(4)
        A = q @ np.diag([1e4, -3e4, 2e4, 5e3]) @ np.conj(q).T
        A = 0.5 * (A + np.conj(A).T)
        v = q[:, 1]
        rho = np.outer(v, np.conj(v))
        result = uncertainty_check(A, B, rho)
        assert result.satisfied
        assert result.lhs < 1e-2


@pytest.mark.slow
def test_uncertainty_sweep(rng, hermitian, density):
    for _ in range(10_000):
        n = int(rng.integers(2, 7))
        assert uncertainty_check(hermitian(n), hermitian(n), density(n)).satisfied
