import numpy as np
import pytest
from scipy.linalg import expm

from core.exceptions import EvaluationError, NotUnitaryError, PreconditionError
from core.linalg import dagger, max_abs
from correspondence.correspondence_model import DensityMatrix, StateVector
from dynamics.equations import ehrenfest_check, heisenberg_eom_check
from dynamics.family_model import (
    SIGMA_Y,
    ConstantHamiltonianFamily,
    ExponentialFamily,
    PiecewiseHamiltonianFamily,
    ProductFamily,
    RelativeFamily,
    RotationFamily,
    SampledGridFamily,
    identity_family,
    unitary_generator,
)
from dynamics.generators import (
    derivative,
    evaluate,
    exact_provider,
    gauge_transformed_hamiltonian,
    hamiltonian_from_family,
    hamiltonian_provider,
    stencil,
)
from dynamics.integrators import integrate_schrodinger, integrate_von_neumann, segments
from dynamics.symmetry import SymmetryKind, classify_symmetry, noether_check
from stochastic.layer import exponential_matrix, sinusoidal_matrix
from stochastic.stochastic_model import RandomVariable

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Z = np.diag([1.0, -1.0]).astype(complex)


# =============================================================================
# FAMÍLIAS
# =============================================================================

def test_rotation_family_gives_sinusoidal_gamma():
    family = RotationFamily(omega=1.3)
    for t in (0.0, 0.2, 1.1):
        assert np.allclose(np.abs(evaluate(family, t)) ** 2, sinusoidal_matrix(1.3, t).entries, atol=1e-14)


def test_exponential_family_gives_exponential_gamma():
    family = ExponentialFamily(tau=0.8)
    for t in (0.0, 0.3, 1.0, 2.5):
        assert np.allclose(np.abs(evaluate(family, t)) ** 2, exponential_matrix(0.8, t).entries, atol=1e-14)


def test_exponential_family_rejects_non_positive_tau():
    with pytest.raises(PreconditionError):
        ExponentialFamily(tau=0.0)


def test_piecewise_family_is_continuous_at_breakpoints(hermitian):
    family = PiecewiseHamiltonianFamily([hermitian(3), hermitian(3)], [0.0, 1.0])
    assert family.breakpoints == (1.0,)
    left = family.unitary(np.nextafter(1.0, 0.0))
    assert max_abs(left - family.unitary(1.0)) < 1e-12


def test_sampled_grid_hits_nodes(unitary):
    U1, U2 = unitary(3), unitary(3)
    family = SampledGridFamily([0.0, 1.0, 2.0], [np.eye(3), U1, U2])
    assert np.array_equal(family.unitary(1.0), U1)
    assert max_abs(evaluate(family, 1.5) @ dagger(evaluate(family, 1.5)) - np.eye(3)) < 1e-10
    with pytest.raises(EvaluationError):
        evaluate(family, 2.5)


def test_product_family_uses_pair_convention():
    family = ProductFamily([RotationFamily(1.0), identity_family(3)])
    assert family.n == 6
    assert np.allclose(family.unitary(0.4), np.kron(RotationFamily(1.0).unitary(0.4), np.eye(3)))


def test_relative_family_starts_at_identity(hermitian):
    base = ConstantHamiltonianFamily(hermitian(3))
    relative = RelativeFamily(base, 0.7)
    assert max_abs(relative.unitary(0.0) - np.eye(3)) < 1e-12
    assert max_abs(relative.unitary(0.5) - base.unitary(1.2) @ dagger(base.unitary(0.7))) < 1e-12


def test_unitary_generator_recovers_step(unitary):
    U = unitary(4)
    H = unitary_generator(U)
    assert max_abs(expm(-1j * H) - U) < 1e-10


def test_evaluate_rejects_non_unitary():
    class Broken(ConstantHamiltonianFamily):
        def unitary(self, t):
            return 1.1 * np.eye(self.n)

    with pytest.raises(NotUnitaryError):
        evaluate(Broken(np.zeros((2, 2))), 0.5)


# =============================================================================
# HAMILTONIANO
# =============================================================================

def test_rotation_hamiltonian_is_sigma_y():
    H = hamiltonian_from_family(RotationFamily(omega=2.0), 0.3)
    assert max_abs(H.H - 2.0 * SIGMA_Y) < 1e-8
    assert H.symmetrization_residual < 1e-8


def test_finite_difference_matches_exact_hamiltonian(hermitian):
    family = ConstantHamiltonianFamily(hermitian(4, 0.5))
    H = hamiltonian_from_family(family, 0.9).H
    assert max_abs(H - family.exact_hamiltonian(0.9)) < 1e-8


def test_stencil_goes_one_sided_near_breakpoint():
    nodes, _ = stencil(1.0, 0.1, breakpoints=(1.0,))
    assert len(nodes) == 3
    assert min(nodes) == 1.0
    nodes, _ = stencil(0.95, 0.1, breakpoints=(1.0,))
    assert nodes[-1] == 0.95


def test_stencil_at_domain_start():
    nodes, weights = stencil(0.0, 0.01, domain=(0.0, 1.0))
    assert nodes[0] == 0.0
    assert derivative(lambda s: s * s, 0.5, 0.01) == pytest.approx(1.0)


def test_piecewise_hamiltonian_on_each_side(hermitian):
    H0, H1 = hermitian(2), hermitian(2)
    family = PiecewiseHamiltonianFamily([H0, H1], [0.0, 1.0])
    assert max_abs(hamiltonian_from_family(family, 1.0).H - H1) < 1e-6
    assert max_abs(hamiltonian_from_family(family, 0.99995).H - H0) < 1e-6


def test_gauge_transformed_hamiltonian(hermitian):
    H, K = hermitian(3, 0.5), hermitian(3, 0.5)
    family = ConstantHamiltonianFamily(H)

    def V(t):
        return expm(-1j * K * t)

    t, dt = 0.6, 1e-5
    moved = gauge_transformed_hamiltonian(family, V, t, dt)
    dU = derivative(lambda s: V(s) @ family.unitary(s), t, dt)
    direct = 1j * dU @ dagger(V(t) @ family.unitary(t))
    assert max_abs(moved - direct) < 1e-7


# =============================================================================
# INTEGRAÇÃO
# =============================================================================

def test_segments_split_at_breakpoints():
    parts = segments(0.0, 2.0, 100, (0.5, 3.0))
    assert [(a, b) for a, b, _ in parts] == [(0.0, 0.5), (0.5, 2.0)]
    assert sum(count for _, _, count in parts) == 100


def test_schrodinger_round_trip(hermitian, unitary):
    family = ConstantHamiltonianFamily(hermitian(3, 0.5))
    psi0 = StateVector(unitary(3)[:, 0])
    forward = integrate_schrodinger(exact_provider(family), psi0, 1.0, 1000)
    assert max_abs(forward.state.psi - evaluate(family, 1.0) @ psi0.psi) < 1e-6
    back = integrate_schrodinger(exact_provider(family), forward.state, 0.0, 1000, t0=1.0)
    assert max_abs(back.state.psi - psi0.psi) < 1e-6
    assert forward.steps == 1000


def test_von_neumann_round_trip(hermitian, density):
    family = ConstantHamiltonianFamily(hermitian(3, 0.5))
    rho0 = density(3)
    forward = integrate_von_neumann(exact_provider(family), rho0, 1.0, 1000)
    U = evaluate(family, 1.0)
    assert max_abs(forward.state.rho - U @ rho0.rho @ dagger(U)) < 1e-6
    back = integrate_von_neumann(exact_provider(family), forward.state, 0.0, 1000, t0=1.0)
    assert max_abs(back.state.rho - rho0.rho) < 1e-6


def test_integration_across_breakpoint(hermitian):
    family = PiecewiseHamiltonianFamily([hermitian(2, 0.5), hermitian(2, 0.5)], [0.0, 1.0])
    psi0 = StateVector(np.array([1.0, 0.0]))
    result = integrate_schrodinger(exact_provider(family), psi0, 2.0, 1000, breakpoints=family.breakpoints)
    assert max_abs(result.state.psi - family.unitary(2.0) @ psi0.psi) < 1e-6


def test_integration_with_finite_difference_hamiltonian():
    family = RotationFamily(omega=1.0)
    psi0 = StateVector(np.array([1.0, 0.0]))
    result = integrate_schrodinger(hamiltonian_provider(family), psi0, 1.0, 200)
    assert max_abs(result.state.psi - family.unitary(1.0)[:, 0]) < 1e-6


def test_exact_provider_needs_closed_form():
    class Opaque(RotationFamily):
        def exact_hamiltonian(self, t):
            return None

    with pytest.raises(PreconditionError):
        exact_provider(Opaque(1.0))(0.1)


# =============================================================================
# EHRENFEST E HEISENBERG
# =============================================================================

def test_ehrenfest_and_heisenberg_constant_hamiltonian(hermitian, density):
    family = ConstantHamiltonianFamily(hermitian(3, 0.3))
    A = hermitian(3, 0.3)
    rho0 = density(3)
    for t in (0.0, 0.4, 1.3):
        assert ehrenfest_check(A, family, rho0, t, 1e-4) < 1e-6
        assert heisenberg_eom_check(A, family, t, 1e-4) < 1e-6


def test_ehrenfest_for_random_variable_on_exponential_family(density):
    family = ExponentialFamily(tau=1.0)
    a = RandomVariable([1.0, -1.0])
    rho0 = density(2)
    for t in (0.3, 0.8):
        assert ehrenfest_check(a, family, rho0, t, 1e-4) < 1e-6
        assert heisenberg_eom_check(a, family, t, 1e-4) < 1e-6


# =============================================================================
# SIMETRIAS
# =============================================================================

def test_identity_is_unitary_symmetry():
    assert classify_symmetry(np.eye(2), RotationFamily(1.0), [0.1, 0.5, 1.0]) == SymmetryKind.UNITARY


def test_swap_on_rotation_is_phase_symmetry():
    assert classify_symmetry(SIGMA_X, RotationFamily(1.0), [0.1, 0.5, 1.0]) == SymmetryKind.PHASE


def test_sign_flip_on_rotation_is_phase_symmetry():
    assert classify_symmetry(SIGMA_Z, RotationFamily(1.0), [0.1, 0.5, 1.0]) == SymmetryKind.PHASE


def test_sign_flip_on_sigma_x_dynamics_is_anti_unitary():
    family = ConstantHamiltonianFamily(SIGMA_X)
    assert classify_symmetry(SIGMA_Z, family, [0.1, 0.5, 1.0]) == SymmetryKind.ANTI_UNITARY


def test_swap_on_diagonal_dynamics_is_anti_unitary():
    family = ConstantHamiltonianFamily(SIGMA_Z)
    assert classify_symmetry(SIGMA_X, family, [0.1, 0.5, 1.0]) == SymmetryKind.ANTI_UNITARY


def test_generic_unitary_is_not_a_symmetry(unitary):
    assert classify_symmetry(unitary(2), RotationFamily(1.0), [0.3, 0.7]) == SymmetryKind.NONE


def test_phase_symmetry_preserves_gamma():
    family = RotationFamily(0.7)
    times = list(np.linspace(0.0, 3.0, 7))
    assert classify_symmetry(SIGMA_X, family, times) == SymmetryKind.PHASE
    for t in times:
        U = family.unitary(t)
        moved = SIGMA_X @ U @ SIGMA_X
        assert max_abs(np.abs(moved) ** 2 - np.abs(U) ** 2) < 1e-12


def test_noether_conserved_charge(hermitian, density):
    H = hermitian(4, 0.3)
    family = ConstantHamiltonianFamily(H)
    G = H @ H
    times = np.linspace(0.0, 5.0, 100)
    assert noether_check(G, family, density(4), times) < 1e-12


def test_noether_detects_non_conserved():
    family = RotationFamily(1.0)
    assert noether_check(SIGMA_Z, family, DensityMatrix(np.diag([1.0, 0.0])), [0.0, np.pi / 4]) == pytest.approx(1.0)
