from dataclasses import dataclass

from decimal import Decimal

import math

import numpy as np

from puflock.exceptions import ConfigurationError

from .exceptions import PercentageError

@dataclass(frozen=True)
class WeightSelection:
    layer_id: int
    indices: np.ndarray

def selection_count(weight_count: int, pct: float) -> int:
    """
    floor(pct / 100 * weight_count), computed in decimal so 20 % of 100 352 is 20 070.
    """

    if not 0.0 <= pct <= 100.0:
        raise PercentageError(f"Percentage must lie in [0, 100], got <{pct}>.")

    return math.floor(Decimal(repr(float(pct))) * weight_count / 100)

def permutation_prefix(weight_count: int, count: int, rng_seed: int) -> np.ndarray:
    """
    First <count> positions of a seeded partial Fisher-Yates shuffle of
    range(weight_count), in draw order.
    """

    rng = np.random.default_rng(rng_seed)

    pool = np.arange(weight_count, dtype=np.int64)

    if count == 0:
        return pool[:0]

    picks = rng.integers(np.arange(count), weight_count)

    for position, pick in enumerate(picks):
        pool[position], pool[pick] = pool[pick], pool[position]

    return pool[:count].copy()

def choose_weights(weight_count: int, pct: float, rng_seed: int) -> np.ndarray:
    if weight_count < 1:
        raise ConfigurationError(f"<weight_count> must be positive, got <{weight_count}>.")

    count = selection_count(weight_count, pct)

    return np.sort(permutation_prefix(weight_count, count, rng_seed))

def select_weights(weight_count: int, layer_id: int, pct: float, rng_seed: int) -> WeightSelection:
    return WeightSelection(layer_id, choose_weights(weight_count, pct, rng_seed))
