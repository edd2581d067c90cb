"""
Amostragem Monte Carlo das marginais com gerador contador Philox de 64 bits.
"""

import numpy as np

from core.exceptions import InvalidIndexError, PreconditionError
from infrastructure.logging import get_logger
from stochastic.stochastic_model import StochasticMatrix

logger = get_logger(__name__)

SEED_RANGE = (0, 2 ** 64)


def make_rng(seed: int) -> np.random.Generator:
    """Gerador reprodutível bit a bit para uma semente explícita."""
    if seed is None or not (SEED_RANGE[0] <= int(seed) < SEED_RANGE[1]):
        raise InvalidIndexError("seed", seed, SEED_RANGE)
    return np.random.Generator(np.random.Philox(int(seed)))


def sample_column(probabilities: np.ndarray, draws: int, rng: np.random.Generator) -> np.ndarray:
    """Histograma de ``draws`` amostras i.i.d. de uma coluna de probabilidades."""
    if draws < 1:
        raise PreconditionError("sample_column", f"draws must be >= 1, got {draws}")
    column = np.clip(np.asarray(probabilities, dtype=float), 0.0, None)
    column = column / column.sum()
    samples = rng.choice(column.shape[0], size=draws, p=column)
    return np.bincount(samples, minlength=column.shape[0])


def sample_marginal(gamma: StochasticMatrix, j0: int, draws: int, seed: int) -> np.ndarray:
    """Contagens por configuração de amostras da coluna j0 de Γ."""
    if not 0 <= j0 < gamma.n:
        raise InvalidIndexError("j0", j0, (0, gamma.n))
    counts = sample_column(gamma.column(j0), draws, make_rng(seed))
    logger.debug("Marginal sampled", extra={"j0": j0, "draws": draws, "seed": seed})
    return counts
