"""Sistemas compostos, eventos de divisão, decoerência e emaranhamento."""

from .composite_model import CompositeSystem, CorrelationMap, DecoherenceResult, EntanglementResult
from .division import (
    DivisionFamily,
    build_division_scenario,
    correlation_unitary,
    environment_swap,
    joint_probabilities,
    markov_chain_emergence,
    subject_marginal_dynamics,
)
from .decoherence import decoherence_compare
from .entanglement import canonical_marginals, entanglement_factorization_test

__all__ = [
    "CompositeSystem",
    "CorrelationMap",
    "DecoherenceResult",
    "EntanglementResult",
    "DivisionFamily",
    "build_division_scenario",
    "correlation_unitary",
    "environment_swap",
    "joint_probabilities",
    "markov_chain_emergence",
    "subject_marginal_dynamics",
    "decoherence_compare",
    "canonical_marginals",
    "entanglement_factorization_test",
]
