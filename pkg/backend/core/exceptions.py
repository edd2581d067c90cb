"""
Hierarquia de exceções da biblioteca de correspondência estocástico-quântica.

Toda exceção guarda seus campos no construtor e expõe ``to_dict()`` para
que o relatório de verificação e a CLI possam serializá-la.
"""

from typing import Any, Dict, Optional, Tuple


class CorrespondenceError(Exception):
    """Exceção base do sistema"""

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        self.message = message
        self.details = details or {}
        super().__init__(message)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "error": self.__class__.__name__,
            "message": self.message,
            "details": self.details,
        }


# =============================================================================
# DIMENSÕES
# =============================================================================

class DimensionError(CorrespondenceError):
    """Formas incompatíveis entre operandos"""

    def __init__(self, operation: str, expected: Any, actual: Any):
        self.operation = operation
        self.expected = expected
        self.actual = actual
        super().__init__(
            f"{operation}: expected shape {expected}, got {actual}",
            {"operation": operation, "expected": str(expected), "actual": str(actual)},
        )


# =============================================================================
# VALIDAÇÃO DE OBJETOS
# =============================================================================

class ValidationError(CorrespondenceError):
    """Objeto viola um invariante estrutural"""
    pass


class NonFiniteError(ValidationError):
    """Entradas NaN ou infinitas"""

    def __init__(self, name: str):
        self.name = name
        super().__init__(f"{name} contains non-finite entries", {"name": name})


class StochasticityError(ValidationError):
    """Coluna de matriz de transição fora do simplex"""

    def __init__(self, column: int, column_sum: float, min_entry: float, tol: float):
        self.column = column
        self.column_sum = column_sum
        self.min_entry = min_entry
        self.tol = tol
        super().__init__(
            f"column {column} is not a probability column "
            f"(sum={column_sum:.17g}, min entry={min_entry:.17g}, tol={tol:g})",
            {"column": column, "column_sum": column_sum, "min_entry": min_entry, "tol": tol},
        )


class ProbabilityError(ValidationError):
    """Vetor de probabilidade inválido"""

    def __init__(self, reason: str, total: Optional[float] = None):
        self.reason = reason
        self.total = total
        super().__init__(f"invalid probability vector: {reason}", {"reason": reason, "total": total})


class NotUnitaryError(ValidationError):
    def __init__(self, name: str, residual: float, tol: float):
        self.name = name
        self.residual = residual
        self.tol = tol
        super().__init__(
            f"{name} is not unitary (residual {residual:.3e} > {tol:g})",
            {"name": name, "residual": residual, "tol": tol},
        )


class NotSelfAdjointError(ValidationError):
    def __init__(self, name: str, residual: float, tol: float):
        self.name = name
        self.residual = residual
        self.tol = tol
        super().__init__(
            f"{name} is not self-adjoint (residual {residual:.3e} > {tol:g})",
            {"name": name, "residual": residual, "tol": tol},
        )


class KrausIdentityError(ValidationError):
    """Soma K†K difere da identidade"""

    def __init__(self, residual: float, tol: float):
        self.residual = residual
        self.tol = tol
        super().__init__(
            f"Kraus identity violated (residual {residual:.3e} > {tol:g})",
            {"residual": residual, "tol": tol},
        )


class InvalidIndexError(ValidationError):
    def __init__(self, name: str, index: Any, valid: Tuple[int, int]):
        self.name = name
        self.index = index
        self.valid = valid
        super().__init__(
            f"{name}={index} out of range [{valid[0]}, {valid[1]})",
            {"name": name, "index": index, "valid": list(valid)},
        )


class NonInjectiveMapError(ValidationError):
    def __init__(self, name: str, mapping: Tuple[int, ...]):
        self.name = name
        self.mapping = mapping
        super().__init__(f"{name} is not injective: {list(mapping)}", {"name": name, "mapping": list(mapping)})


# =============================================================================
# PRÉ-CONDIÇÕES E ÁLGEBRA
# =============================================================================

class PreconditionError(CorrespondenceError):
    """Argumentos violam a pré-condição da operação"""

    def __init__(self, operation: str, reason: str):
        self.operation = operation
        self.reason = reason
        super().__init__(f"{operation}: {reason}", {"operation": operation, "reason": reason})


class SingularMatrixError(CorrespondenceError):
    """Matriz não inversível"""

    def __init__(self, name: str, condition_number: float):
        self.name = name
        self.condition_number = condition_number
        super().__init__(
            f"{name} is singular (condition number {condition_number:.3e})",
            {"name": name, "condition_number": condition_number},
        )


class DivisibilityUndecidableError(SingularMatrixError):
    """Γ(t′) singular: divisibilidade não pode ser decidida pelo candidato"""

    def __init__(self, condition_number: float):
        super().__init__("Gamma(t')", condition_number)
        self.message = (
            f"divisibility undecidable: Gamma(t') is singular "
            f"(condition number {condition_number:.3e})"
        )
        self.args = (self.message,)


class InternalInconsistencyError(CorrespondenceError):
    """Duas rotas de cálculo independentes discordam"""

    def __init__(self, check: str, residual: float, tol: float):
        self.check = check
        self.residual = residual
        self.tol = tol
        super().__init__(
            f"internal inconsistency in {check}: residual {residual:.3e} > {tol:g}",
            {"check": check, "residual": residual, "tol": tol},
        )


class EvaluationError(CorrespondenceError):
    """Família unitária não pode ser avaliada no tempo pedido"""

    def __init__(self, kind: str, t: float, domain: Tuple[float, float]):
        self.kind = kind
        self.t = t
        self.domain = domain
        super().__init__(
            f"cannot evaluate {kind} family at t={t!r}: outside [{domain[0]!r}, {domain[1]!r}]",
            {"kind": kind, "t": t, "domain": list(domain)},
        )


# =============================================================================
# CENÁRIOS
# =============================================================================

class ScenarioError(CorrespondenceError):
    """Erro de leitura ou esquema de cenário"""

    def __init__(self, location: str, reason: str):
        self.location = location
        self.reason = reason
        super().__init__(f"{location}: {reason}", {"location": location, "reason": reason})


class UnknownQueryError(ScenarioError):
    def __init__(self, location: str, quantity: str):
        self.quantity = quantity
        super().__init__(location, f"unknown query quantity '{quantity}'")
