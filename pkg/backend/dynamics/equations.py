"""
Verificações das equações de Ehrenfest e de Heisenberg por diferenças finitas.
"""

from typing import Union

import numpy as np

from core.linalg import commutator, dagger, max_abs, require_self_adjoint
from correspondence.correspondence_model import DensityMatrix
from dynamics.family_model import UnitaryFamily
from dynamics.generators import derivative, hamiltonian_from_family
from stochastic.stochastic_model import RandomVariable

Observable = Union[RandomVariable, np.ndarray]


def as_observable_matrix(A: Observable) -> np.ndarray:
    if isinstance(A, RandomVariable):
        return A.as_matrix()
    return require_self_adjoint(A, "A")


def evolved_density(family: UnitaryFamily, rho0: DensityMatrix, t: float) -> np.ndarray:
    U = family.unitary(t)
    return U @ rho0.rho @ dagger(U)


def heisenberg_operator(A: np.ndarray, family: UnitaryFamily, t: float) -> np.ndarray:
    """A^H(t) = U†(t) A U(t)."""
    U = family.unitary(t)
    return dagger(U) @ A @ U


def ehrenfest_check(A: Observable, family: UnitaryFamily, rho0: DensityMatrix, t: float, dt: float) -> float:
    """
    |d⟨A⟩/dt − (i/ħ) tr([H, A] ρ)| com A independente do tempo.

    A derivada de ⟨A⟩ e o Hamiltoniano usam o mesmo passo dt.
    """
    A = as_observable_matrix(A)

    def mean(s: float) -> float:
        return float(np.real(np.trace(A @ evolved_density(family, rho0, s))))

    lhs = derivative(mean, t, dt, family.breakpoints, family.domain)
    H = hamiltonian_from_family(family, t, dt).H
    rhs = (1j / family.hbar) * np.trace(commutator(H, A) @ evolved_density(family, rho0, t))
    return float(abs(lhs - rhs))


def heisenberg_eom_check(A: Observable, family: UnitaryFamily, t: float, dt: float) -> float:
    """‖dA^H/dt − (i/ħ)[H^H, A^H]‖_max com A independente do tempo."""
    A = as_observable_matrix(A)
    lhs = derivative(lambda s: heisenberg_operator(A, family, s), t, dt, family.breakpoints, family.domain)
    H_heis = heisenberg_operator(hamiltonian_from_family(family, t, dt).H, family, t)
    rhs = (1j / family.hbar) * commutator(H_heis, heisenberg_operator(A, family, t))
    return max_abs(lhs - rhs)
