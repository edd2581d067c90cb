"""
Decomposição espectral de observáveis e velocidades emergíveis.
"""

from typing import List, Optional

import numpy as np

from core.exceptions import PreconditionError
from core.linalg import as_square, dagger, require_self_adjoint, symmetrize
from core.types import DEGENERACY_TOL, FINITE_DIFFERENCE_DT
from dynamics.family_model import UnitaryFamily
from dynamics.generators import derivative, evaluate
from infrastructure.logging import get_logger
from measurement.measurement_model import Observable
from stochastic.stochastic_model import RandomVariable

logger = get_logger(__name__)


def fix_phase(v: np.ndarray) -> np.ndarray:
    """Torna real positiva a maior componente em módulo."""
    k = int(np.argmax(np.abs(v)))
    return v * (abs(v[k]) / v[k])


def spectral_decompose(M, degeneracy_tol: float = DEGENERACY_TOL) -> Observable:
    """
    Decomposição espectral de M autoadjunta.

    Autovalores consecutivos a menos de ``degeneracy_tol`` (absoluta) são
    agrupados num único autoprojetor.

    Raises:
        NotSelfAdjointError: ‖M − M†‖ acima da tolerância estrutural
    """
    matrix = require_self_adjoint(as_square(M, "M"), "M")
    matrix = 0.5 * (matrix + dagger(matrix))
    values, vectors = np.linalg.eigh(matrix)
    clusters: List[List[int]] = [[0]]
    for k in range(1, len(values)):
        if values[k] - values[clusters[-1][-1]] <= degeneracy_tol:
            clusters[-1].append(k)
        else:
            clusters.append([k])

    eigenvalues, projectors, bases = [], [], []
    for members in clusters:
        basis = vectors[:, members]
        if len(members) == 1:
            basis = fix_phase(basis[:, 0])[:, None]
        eigenvalues.append(float(np.mean(values[members])))
        projectors.append(basis @ dagger(basis))
        bases.append(basis)

    return Observable(
        matrix=matrix,
        eigenvalues=tuple(eigenvalues),
        projectors=tuple(projectors),
        bases=tuple(bases),
    )


def observable_matrix(A) -> np.ndarray:
    if isinstance(A, RandomVariable):
        return A.as_matrix()
    if isinstance(A, Observable):
        return np.array(A.matrix)
    return as_square(A, "A")


def emergeable_velocity(A, family: UnitaryFamily, dt: float = FINITE_DIFFERENCE_DT) -> np.ndarray:
    """
    Ȧ = d/dt [U†(t) A U(t)] em t = 0, simetrizada.

    Em geral não comuta com A, logo não é uma variável de configuração.
    """
    if dt <= 0:
        raise PreconditionError("emergeable_velocity", f"dt must be positive, got {dt}")
    a = observable_matrix(A)
    family.check_domain(0.0)

    def heisenberg(t: float) -> np.ndarray:
        U = family.unitary(t)
        return dagger(U) @ a @ U

    raw = derivative(heisenberg, 0.0, dt, family.breakpoints, family.domain)
    velocity, residual = symmetrize(raw)
    if residual > 1e-8:
        logger.warning("Emergeable velocity far from self-adjoint", extra={"residual": residual, "dt": dt})
    return velocity


def emergeable_expectation_residual(
    A,
    family: UnitaryFamily,
    rho0,
    dt: float = FINITE_DIFFERENCE_DT,
    velocity: Optional[np.ndarray] = None,
) -> float:
    """|tr(Ȧ ρ(0)) − d⟨A⟩/dt(0)|, com a derivada por diferenças finitas."""
    a = observable_matrix(A)
    rho0 = as_square(getattr(rho0, "rho", rho0), "rho0")
    velocity = emergeable_velocity(a, family, dt) if velocity is None else velocity

    def mean(t: float) -> float:
        U = evaluate(family, t)
        return float(np.real(np.trace(a @ U @ rho0 @ dagger(U))))

    rate = derivative(mean, 0.0, dt, family.breakpoints, family.domain)
    return abs(float(np.real(np.trace(velocity @ rho0))) - rate)
