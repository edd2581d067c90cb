"""Dinâmica unistocástica: famílias unitárias, geradores e equações."""

from .family_model import (
    FamilyKind,
    Hamiltonian,
    UnitaryFamily,
    ConstantHamiltonianFamily,
    PiecewiseHamiltonianFamily,
    RotationFamily,
    ExponentialFamily,
    SampledGridFamily,
    ProductFamily,
    RelativeFamily,
    identity_family,
    unitary_generator,
)
from .generators import (
    evaluate,
    derivative,
    family_derivative,
    hamiltonian_from_family,
    hamiltonian_provider,
    exact_provider,
    gauge_transform_hamiltonian,
    gauge_transformed_hamiltonian,
)
from .integrators import IntegrationResult, integrate_schrodinger, integrate_von_neumann
from .equations import ehrenfest_check, heisenberg_eom_check, heisenberg_operator
from .symmetry import SymmetryKind, classify_symmetry, noether_check

__all__ = [
    "FamilyKind",
    "Hamiltonian",
    "UnitaryFamily",
    "ConstantHamiltonianFamily",
    "PiecewiseHamiltonianFamily",
    "RotationFamily",
    "ExponentialFamily",
    "SampledGridFamily",
    "ProductFamily",
    "RelativeFamily",
    "identity_family",
    "unitary_generator",
    "evaluate",
    "derivative",
    "family_derivative",
    "hamiltonian_from_family",
    "hamiltonian_provider",
    "exact_provider",
    "gauge_transform_hamiltonian",
    "gauge_transformed_hamiltonian",
    "IntegrationResult",
    "integrate_schrodinger",
    "integrate_von_neumann",
    "ehrenfest_check",
    "heisenberg_eom_check",
    "heisenberg_operator",
    "SymmetryKind",
    "classify_symmetry",
    "noether_check",
]
