from typing import Optional, Union, Sequence

from abc import ABC, abstractmethod

from dataclasses import dataclass

import numpy as np

from puflock._utils.mixing import check_uint64

KEY_BITS = 32

_Seeds = Union[np.ndarray, Sequence[int]]

@dataclass(frozen=True)
class Challenge:
    """
    Compact challenge identifier; expands to m sub-challenges on evaluation.
    """

    seed: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "seed", check_uint64(self.seed, "seed"))

def as_seed_array(challenge_seeds: _Seeds) -> np.ndarray:
    return np.asarray(challenge_seeds, dtype=np.uint64).reshape(-1)

class PufBackend(ABC):
    """
    Anything that answers challenges with machine-specific response bits.
    Implementations must be safe for concurrent read-only use.
    """

    @abstractmethod
    def responses(self, challenge_seeds: _Seeds, m: int, *,
                  rng: Optional[np.random.Generator] = None) -> np.ndarray:
        """
        Returns an (N, m) uint8 matrix, one m-bit response per challenge seed.
        """

    def response(self, challenge: Challenge, m: int, *,
                 rng: Optional[np.random.Generator] = None) -> np.ndarray:
        return self.responses([ challenge.seed ], m, rng=rng)[0]

    def keys(self, challenge_seeds: _Seeds, m: int = KEY_BITS, *,
             rng: Optional[np.random.Generator] = None) -> np.ndarray:
        """
        Packs each m-bit response into an unsigned integer, response bit i
        becoming key bit i (least significant first).
        """

        bits = self.responses(challenge_seeds, m, rng=rng).astype(np.uint64)

        shifts = np.arange(m, dtype=np.uint64)

        return np.bitwise_or.reduce(bits << shifts, axis=1) \
            if bits.shape[0] else np.zeros(0, dtype=np.uint64)
