"""
Primitivas de álgebra linear complexa densa.

Matrizes e vetores são ``numpy.ndarray`` de dtype complexo; as funções aqui
são puras e nunca modificam os argumentos. Convenção global de índices de
pares: (i, e) ↦ i·dimE + e, que é a ordem de ``numpy.kron``.
"""

from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.stats import unitary_group

from core.exceptions import (
    DimensionError,
    NonFiniteError,
    NotSelfAdjointError,
    NotUnitaryError,
    PreconditionError,
    ValidationError,
)
from core.types import GRAM_SCHMIDT_REJECT, STRUCTURAL_TOL


class Factor(str, Enum):
    """Fator mantido por ``partial_trace``"""
    FIRST = "first"
    SECOND = "second"


# =============================================================================
# CONVERSÃO E VALIDAÇÃO
# =============================================================================

def as_matrix(M, name: str = "matrix") -> np.ndarray:
    """Converte para matriz complexa 2D, finita e não vazia."""
    arr = np.array(M, dtype=complex)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise DimensionError(name, "(rows>=1, cols>=1)", arr.shape)
    if not np.all(np.isfinite(arr)):
        raise NonFiniteError(name)
    return arr


def as_square(M, name: str = "matrix") -> np.ndarray:
    arr = as_matrix(M, name)
    if arr.shape[0] != arr.shape[1]:
        raise DimensionError(name, "square", arr.shape)
    return arr


def as_vector(v, name: str = "vector") -> np.ndarray:
    arr = np.array(v, dtype=complex).reshape(-1)
    if arr.size < 1:
        raise DimensionError(name, "(dim>=1,)", arr.shape)
    if not np.all(np.isfinite(arr)):
        raise NonFiniteError(name)
    return arr


def max_abs(M) -> float:
    """Norma do máximo entrada a entrada."""
    arr = np.asarray(M)
    if arr.size == 0:
        return 0.0
    return float(np.max(np.abs(arr)))


def dagger(M: np.ndarray) -> np.ndarray:
    return np.conj(np.asarray(M)).T


def commutator(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    return A @ B - B @ A


def hermiticity_residual(M) -> float:
    arr = np.asarray(M)
    return max_abs(arr - dagger(arr))


def is_self_adjoint(M, tol: float = STRUCTURAL_TOL) -> bool:
    return hermiticity_residual(M) <= tol


def require_self_adjoint(M, name: str = "matrix", tol: float = STRUCTURAL_TOL) -> np.ndarray:
    arr = as_square(M, name)
    residual = hermiticity_residual(arr)
    if residual > tol:
        raise NotSelfAdjointError(name, residual, tol)
    return arr


def symmetrize(M: np.ndarray) -> Tuple[np.ndarray, float]:
    """Parte autoadjunta (M + M†)/2 e o resíduo removido."""
    herm = 0.5 * (M + dagger(M))
    return herm, max_abs(M - herm)


# =============================================================================
# PRODUTOS
# =============================================================================

def schur_hadamard(X, Y) -> np.ndarray:
    """Produto entrada a entrada (X⊙Y)_ij = X_ij Y_ij."""
    x = as_matrix(X, "X")
    y = as_matrix(Y, "Y")
    if x.shape != y.shape:
        raise DimensionError("schur_hadamard", x.shape, y.shape)
    return x * y


def tensor(X, Y) -> np.ndarray:
    """Produto de Kronecker com o par (i, e) no índice i·dimY + e."""
    return np.kron(as_matrix(X, "X"), as_matrix(Y, "Y"))


def tensor_all(factors: Sequence) -> np.ndarray:
    if not factors:
        raise DimensionError("tensor_all", "at least one factor", 0)
    result = as_matrix(factors[0], "factor[0]")
    for k, factor in enumerate(factors[1:], start=1):
        result = np.kron(result, as_matrix(factor, f"factor[{k}]"))
    return result


def partial_trace(M, dims: Tuple[int, int], keep: Factor = Factor.FIRST) -> np.ndarray:
    """Traço parcial sobre o fator descartado de um espaço dims[0] × dims[1]."""
    arr = as_square(M, "M")
    d_a, d_b = int(dims[0]), int(dims[1])
    if d_a < 1 or d_b < 1 or arr.shape[0] != d_a * d_b:
        raise DimensionError("partial_trace", (d_a * d_b, d_a * d_b), arr.shape)

    blocks = arr.reshape(d_a, d_b, d_a, d_b)
    if Factor(keep) == Factor.FIRST:
        return np.einsum("ijkj->ik", blocks)
    return np.einsum("ijil->jl", blocks)


# =============================================================================
# UNITARIEDADE
# =============================================================================

def unitarity_residual(M) -> float:
    arr = np.asarray(M)
    return max_abs(dagger(arr) @ arr - np.eye(arr.shape[1]))


def is_unitary(M, tol: float = STRUCTURAL_TOL) -> bool:
    """True sse ‖M†M − I‖_max ≤ tol."""
    arr = np.asarray(M)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        return False
    return unitarity_residual(arr) <= tol


def require_unitary(M, name: str = "matrix", tol: float = STRUCTURAL_TOL) -> np.ndarray:
    arr = as_square(M, name)
    residual = unitarity_residual(arr)
    if residual > tol:
        raise NotUnitaryError(name, residual, tol)
    return arr


def complete_isometry(
    V,
    reject: float = GRAM_SCHMIDT_REJECT,
    tol: float = STRUCTURAL_TOL,
) -> np.ndarray:
    """
    Completa uma isometria m×n (colunas ortonormais) até uma unitária m×m.

    As n primeiras colunas são as de V; as demais vêm da varredura da base
    canônica em ordem de índice, projetando fora o espaço já gerado
    (Gram-Schmidt modificado) e mantendo candidatos com resíduo > reject.
    """
    v = as_matrix(V, "V")
    m, n = v.shape
    if n > m:
        raise PreconditionError("complete_isometry", f"more columns ({n}) than rows ({m})")
    residual = unitarity_residual(v)
    if residual > tol:
        raise PreconditionError(
            "complete_isometry", f"input columns are not orthonormal (residual {residual:.3e})"
        )

    columns: List[np.ndarray] = [v[:, k].copy() for k in range(n)]
    for k in range(m):
        if len(columns) == m:
            break
        candidate = np.zeros(m, dtype=complex)
        candidate[k] = 1.0
        for q in columns:
            candidate = candidate - q * np.vdot(q, candidate)
        norm = np.linalg.norm(candidate)
        if norm > reject:
            columns.append(candidate / norm)

    if len(columns) != m:
        raise ValidationError(f"Gram-Schmidt completion produced {len(columns)} of {m} columns")
    return np.column_stack(columns)


# =============================================================================
# PVM
# =============================================================================

@dataclass(frozen=True, eq=False)
class PVM:
    """Família completa de projetores ortogonais mutuamente exclusivos"""
    dim: int
    projectors: Tuple[np.ndarray, ...]

    def __post_init__(self):
        validate_pvm(self.projectors, self.dim)

    def __len__(self) -> int:
        return len(self.projectors)

    def __repr__(self) -> str:
        return f"PVM(dim={self.dim}, outcomes={len(self.projectors)})"


def pvm_residual(projectors: Sequence[np.ndarray], dim: int) -> float:
    """Maior violação entre idempotência, autoadjunção, exclusividade e completude."""
    worst = 0.0
    total = np.zeros((dim, dim), dtype=complex)
    for a, P in enumerate(projectors):
        worst = max(worst, hermiticity_residual(P), max_abs(P @ P - P))
        for Q in projectors[a + 1:]:
            worst = max(worst, max_abs(P @ Q))
        total += P
    return max(worst, max_abs(total - np.eye(dim)))


def validate_pvm(projectors: Sequence, dim: int, tol: float = STRUCTURAL_TOL) -> None:
    if not projectors:
        raise ValidationError("PVM needs at least one projector")
    for k, P in enumerate(projectors):
        if np.shape(P) != (dim, dim):
            raise DimensionError(f"PVM projector {k}", (dim, dim), np.shape(P))
    residual = pvm_residual(projectors, dim)
    if residual > tol:
        raise ValidationError(f"projectors do not form a PVM (residual {residual:.3e})")


def configuration_projector(n: int, i: int) -> np.ndarray:
    P = np.zeros((n, n), dtype=complex)
    P[i, i] = 1.0
    return P


def configuration_pvm(n: int) -> PVM:
    """Projetores de configuração P_i = e_i e_i†."""
    return PVM(dim=n, projectors=tuple(configuration_projector(n, i) for i in range(n)))


# =============================================================================
# AMOSTRAGEM ALEATÓRIA (testes e verificações semeadas)
# =============================================================================

def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Unitária distribuída pela medida de Haar."""
    if n == 1:
        return np.exp(1j * rng.uniform(0.0, 2 * np.pi)) * np.ones((1, 1), dtype=complex)
    return np.asarray(unitary_group.rvs(n, random_state=rng), dtype=complex)


def random_hermitian(n: int, rng: np.random.Generator, scale: float = 1.0) -> np.ndarray:
    G = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return scale * 0.5 * (G + dagger(G))


def random_unit_columns(n: int, rng: np.random.Generator, cols: Optional[int] = None) -> np.ndarray:
    """Matriz complexa com colunas de norma 1 (operador de evolução genérico)."""
    cols = n if cols is None else cols
    G = rng.normal(size=(n, cols)) + 1j * rng.normal(size=(n, cols))
    return G / np.linalg.norm(G, axis=0, keepdims=True)


def random_phases(shape: Tuple[int, int], rng: np.random.Generator) -> np.ndarray:
    return rng.uniform(-np.pi, np.pi, size=shape)
