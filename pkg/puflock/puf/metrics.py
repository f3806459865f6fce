from dataclasses import replace

import numpy as np

from puflock._utils.mixing import mix64

from puflock.exceptions import ConfigurationError

from puflock.types import PufConfig

from .backend import KEY_BITS

from .xor_arbiter import XorArbiterPuf

def random_challenge_seeds(num_challenges: int, rng_seed: int) -> np.ndarray:
    if num_challenges < 1:
        raise ConfigurationError(f"<num_challenges> must be positive, got <{num_challenges}>.")

    return np.random.default_rng(rng_seed) \
        .integers(0, 1 << 64, size=num_challenges, dtype=np.uint64)

def uniqueness(seed_a: int, seed_b: int, config: PufConfig,
               num_challenges: int, rng_seed: int) -> float:
    """
    Mean fractional Hamming distance between the 32-bit responses of two machines.
    """

    seeds = random_challenge_seeds(num_challenges, rng_seed)

    first = XorArbiterPuf(seed_a, config).responses(seeds, KEY_BITS)
    second = XorArbiterPuf(seed_b, config).responses(seeds, KEY_BITS)

    return float(np.mean(first != second))

def uniqueness_over_pairs(num_pairs: int, config: PufConfig,
                          num_challenges: int, rng_seed: int) -> float:
    if num_pairs < 1:
        raise ConfigurationError(f"<num_pairs> must be positive, got <{num_pairs}>.")

    machines = np.random.default_rng(mix64(rng_seed)) \
        .integers(0, 1 << 64, size=(num_pairs, 2), dtype=np.uint64)

    return float(np.mean([
        uniqueness(int(seed_a), int(seed_b), config, num_challenges, rng_seed)
            for seed_a, seed_b in machines
    ]))

def balance(puf: XorArbiterPuf, num_challenges: int, rng_seed: int) -> float:
    """
    Fraction of 1-bits over the 32-bit responses to random challenges.
    """

    seeds = random_challenge_seeds(num_challenges, rng_seed)

    return float(np.mean(puf.responses(seeds, KEY_BITS)))

def reliability(puf: XorArbiterPuf, num_challenges: int, repeats: int, rng_seed: int) -> float:
    """
    Fraction of response bits, over <repeats> noisy evaluations, that agree with
    the noiseless response of the same machine.
    """

    if repeats < 1:
        raise ConfigurationError(f"<repeats> must be positive, got <{repeats}>.")

    seeds = random_challenge_seeds(num_challenges, rng_seed)

    reference = XorArbiterPuf(puf.machine_seed, replace(puf.config, noise_sigma=0.0)) \
        .responses(seeds, KEY_BITS)

    noise = np.random.default_rng(mix64(rng_seed + 1))

    agreement = [ np.mean(puf.responses(seeds, KEY_BITS, rng=noise) == reference) \
        for _ in range(repeats) ]

    return float(np.mean(agreement))
