"""Dicionário estocástico-quântico."""

from .correspondence_model import EvolutionOperator, KrausSet, DensityMatrix, StateVector, PhaseMatrix
from .dictionary import (
    evolution_from_stochastic,
    stochastic_from_evolution,
    dictionary_routes,
    kraus_from_evolution,
    kraus_decomposition,
    born_rule,
)
from .states import density_matrix, state_vector, configuration_probabilities, expectation_qm, to_heisenberg
from .gauge import GaugeFrame, build_frame, gauge_schur_hadamard, gauge_unitary

__all__ = [
    "EvolutionOperator",
    "KrausSet",
    "DensityMatrix",
    "StateVector",
    "PhaseMatrix",
    "evolution_from_stochastic",
    "stochastic_from_evolution",
    "dictionary_routes",
    "kraus_from_evolution",
    "kraus_decomposition",
    "born_rule",
    "density_matrix",
    "state_vector",
    "configuration_probabilities",
    "expectation_qm",
    "to_heisenberg",
    "GaugeFrame",
    "build_frame",
    "gauge_schur_hadamard",
    "gauge_unitary",
]
