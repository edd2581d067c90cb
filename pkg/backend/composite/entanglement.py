"""
Teste de fatoração da dinâmica estocástica de um sistema de dois fatores.
"""

from typing import Optional, Tuple

import numpy as np

from composite.composite_model import CompositeSystem, EntanglementResult
from core.exceptions import DimensionError
from core.linalg import dagger, max_abs
from core.types import STRUCTURAL_TOL
from dynamics.generators import evaluate
from infrastructure.logging import get_logger

logger = get_logger(__name__)


def canonical_marginals(gamma: np.ndarray, dims: Tuple[int, int]) -> Tuple[np.ndarray, np.ndarray]:
    """
    Marginais com condição inicial uniforme no outro fator:

        Γ^A_ij = (1/N_B) Σ_{b,b0} Γ_{(i,b),(j,b0)}
        Γ^B_{b,b0} = (1/N_A) Σ_{i,j} Γ_{(i,b),(j,b0)}
    """
    n_a, n_b = dims
    blocks = gamma.reshape(n_a, n_b, n_a, n_b)
    gamma_a = blocks.sum(axis=(1, 3)) / n_b
    gamma_b = blocks.sum(axis=(0, 2)) / n_a
    return gamma_a, gamma_b


def entanglement_factorization_test(
    system: CompositeSystem,
    t: float,
    tol: float = STRUCTURAL_TOL,
    t_prime: Optional[float] = None,
) -> EntanglementResult:
    """
    Γ^{AB}(t) = |U(t)|² (ou |U(t←t′)|² quando t_prime é dado) contra
    Γ^A ⊗ Γ^B; fatorável sse o resíduo máximo ≤ tol.

    Um resíduo pequeno testemunha a fatoração; um resíduo grande só indica
    que as marginais canônicas não a realizam.

    Raises:
        DimensionError: sistema sem exatamente dois fatores
    """
    if len(system.factors) != 2:
        raise DimensionError("entanglement_factorization_test", "two factors", len(system.factors))
    dims = system.dims

    U = evaluate(system.family, t)
    if t_prime is not None:
        U = U @ dagger(evaluate(system.family, t_prime))
    gamma = np.abs(U) ** 2

    gamma_a, gamma_b = canonical_marginals(gamma, dims)
    residual = max_abs(gamma - np.kron(gamma_a, gamma_b))
    factorizable = residual <= tol
    logger.debug(
        "Factorization test",
        extra={"t": t, "t_prime": t_prime, "residual": residual, "factorizable": factorizable},
    )
    return EntanglementResult(
        factorizable=factorizable,
        best_residual=residual,
        gamma_joint=gamma,
        gamma_a=gamma_a,
        gamma_b=gamma_b,
        t=t,
        t_prime=t_prime,
    )
