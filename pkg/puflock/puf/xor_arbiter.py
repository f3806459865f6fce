from typing import Optional

import numpy as np

from puflock._utils.mixing import check_uint64, sub_challenge_seeds

from puflock.exceptions import ConfigurationError, DimensionError

from puflock.types import PufConfig

from .backend import PufBackend, _Seeds, as_seed_array

# Rows of parity features evaluated at once; bounds peak memory on large helpers.
_CHUNK_ROWS = 1 << 14

def parity_features(challenge_bits: np.ndarray) -> np.ndarray:
    """
    Additive delay model transform: phi_j is the product of (1 - 2 c_l) for
    l >= j, with a trailing constant 1 for the arbiter bias.
    """

    signs = 1 - 2 * challenge_bits.astype(np.int8)

    suffix = np.flip(np.cumprod(np.flip(signs, axis=1), axis=1, dtype=np.int8), axis=1)

    ones = np.ones((signs.shape[0], 1), dtype=np.int8)

    return np.concatenate((suffix, ones), axis=1).astype(np.float64)

def challenge_bits_from_seeds(seeds: np.ndarray, n_stages: int) -> np.ndarray:
    shifts = np.arange(n_stages, dtype=np.uint64)

    return ((seeds[:, None] >> shifts) & np.uint64(1)).astype(np.uint8)

class XorArbiterPuf(PufBackend):
    """
    k arbiter chains of n stages whose output bits are XORed. Chain weights are
    standard-normal draws from the machine seed, so equal seeds and configs give
    identical machines.
    """

    def __init__(self, machine_seed: int, config: PufConfig = PufConfig(), *,
                 noise_seed: Optional[int] = None) -> None:
        self.__machine_seed = check_uint64(machine_seed, "machine_seed")

        # None draws measurement noise from OS entropy on every evaluation
        self.__noise_seed = None if noise_seed is None else check_uint64(noise_seed, "noise_seed")

        self.__config = config

        weights = np.random.default_rng(self.__machine_seed) \
            .standard_normal((config.k_chains, config.n_stages + 1))

        weights.setflags(write=False)

        self.__chain_weights = weights

    @property
    def machine_seed(self) -> int:
        return self.__machine_seed

    @property
    def config(self) -> PufConfig:
        return self.__config

    @property
    def chain_weights(self) -> np.ndarray:
        return self.__chain_weights

    def __repr__(self) -> str:
        return f"XorArbiterPuf(machine_seed={self.__machine_seed}, config={self.__config})"

    def eval_bits(self, challenge_bits: np.ndarray, *,
                  rng: Optional[np.random.Generator] = None) -> np.ndarray:
        challenge_bits = np.asarray(challenge_bits)

        if challenge_bits.ndim != 2 or challenge_bits.shape[1] != self.__config.n_stages:
            raise DimensionError(f"Challenges must have <{self.__config.n_stages}> bits, " \
                f"got an array of shape <{challenge_bits.shape}>.")

        delays = np.einsum("rj,kj->rk", parity_features(challenge_bits), self.__chain_weights)

        if self.__config.noise_sigma > 0.0:
            if rng is None:
                rng = np.random.default_rng(self.__noise_seed)

            delays = delays + rng.normal(0.0, self.__config.noise_sigma, size=delays.shape)

        # sign(0) = +1, so only strictly negative chains count towards the XOR
        return (np.count_nonzero(delays < 0.0, axis=1) % 2).astype(np.uint8)

    def eval_bit(self, challenge_bits: np.ndarray, *,
                 rng: Optional[np.random.Generator] = None) -> int:
        bits = np.asarray(challenge_bits)

        if bits.ndim != 1:
            raise DimensionError(f"A single challenge must be a bit vector, got shape <{bits.shape}>.")

        return int(self.eval_bits(bits[None, :], rng=rng)[0])

    def responses(self, challenge_seeds: _Seeds, m: int, *,
                  rng: Optional[np.random.Generator] = None) -> np.ndarray:
        if m < 1:
            raise ConfigurationError(f"Response length <m> must be positive, got <{m}>.")

        if rng is None and self.__config.noise_sigma > 0.0:
            rng = np.random.default_rng(self.__noise_seed)

        seeds = as_seed_array(challenge_seeds)

        output = np.empty((seeds.shape[0], m), dtype=np.uint8)

        step = max(1, _CHUNK_ROWS // m)

        for start in range(0, seeds.shape[0], step):
            chunk = seeds[start:start + step]

            sub_seeds = sub_challenge_seeds(chunk, m).reshape(-1)

            bits = self.eval_bits(challenge_bits_from_seeds(sub_seeds, self.__config.n_stages), rng=rng)

            output[start:start + chunk.shape[0]] = bits.reshape(chunk.shape[0], m)

        return output

def puf_new(machine_seed: int, config: PufConfig = PufConfig(), *,
            noise_seed: Optional[int] = None) -> XorArbiterPuf:
    return XorArbiterPuf(machine_seed, config, noise_seed=noise_seed)
