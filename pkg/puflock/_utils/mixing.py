from typing import Union

import numpy as np

from puflock.exceptions import ConfigurationError

MASK64 = (1 << 64) - 1

GOLDEN_GAMMA = 0x9E3779B97F4A7C15

_MUL_1 = 0xBF58476D1CE4E5B9

_MUL_2 = 0x94D049BB133111EB

def mix64(value: int) -> int:
    """
    The splitmix64 finalizer over a single 64-bit integer.
    """

    z = value & MASK64
    z = ((z ^ (z >> 30)) * _MUL_1) & MASK64
    z = ((z ^ (z >> 27)) * _MUL_2) & MASK64

    return z ^ (z >> 31)

def mix64_array(values: Union[np.ndarray, int]) -> np.ndarray:
    """
    Vectorised splitmix64 finalizer; uint64 arithmetic wraps modulo 2**64.
    """

    z = np.array(values, dtype=np.uint64, copy=True, ndmin=1)

    with np.errstate(over="ignore"):
        z = (z ^ (z >> np.uint64(30))) * np.uint64(_MUL_1)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(_MUL_2)

    return z ^ (z >> np.uint64(31))

def sub_challenge_seeds(seeds: Union[np.ndarray, int], m: int) -> np.ndarray:
    """
    mix64(seed + i * golden gamma) for i in [0, m), one row per seed.
    """

    base = np.array(seeds, dtype=np.uint64, ndmin=1).reshape(-1, 1)

    with np.errstate(over="ignore"):
        raw = base + np.arange(m, dtype=np.uint64) * np.uint64(GOLDEN_GAMMA)

    return mix64_array(raw.reshape(-1)).reshape(base.shape[0], m)

def check_uint64(value: int, name: str) -> int:
    if not isinstance(value, (int, np.integer)) or isinstance(value, bool) \
            or not 0 <= int(value) <= MASK64:
        raise ConfigurationError(f"<{name}> must be an unsigned 64-bit integer, got <{value}>.")

    return int(value)
