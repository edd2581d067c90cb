"""Sistemas estocásticos generalizados."""

from .stochastic_model import (
    StochasticMatrix,
    ProbabilityVector,
    RandomVariable,
    is_column_stochastic,
)
from .layer import (
    propagate,
    expectation,
    compose,
    matrix_power,
    permutation_matrix,
    sinusoidal_matrix,
    exponential_matrix,
)
from .divisibility import check_divisible_at, stochastic_inverse_is_permutation, is_permutation
from .sampling import make_rng, sample_marginal, sample_column

__all__ = [
    "StochasticMatrix",
    "ProbabilityVector",
    "RandomVariable",
    "is_column_stochastic",
    "propagate",
    "expectation",
    "compose",
    "matrix_power",
    "permutation_matrix",
    "sinusoidal_matrix",
    "exponential_matrix",
    "check_divisible_at",
    "stochastic_inverse_is_permutation",
    "is_permutation",
    "make_rng",
    "sample_marginal",
    "sample_column",
]
