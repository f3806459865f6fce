from typing import List, NewType, Sequence, Tuple

from logging import Logger

import numpy as np

from puflock._utils.mixing import mix64

from puflock.model import Model

from puflock.puf import PufBackend, KEY_BITS

from .exceptions import HelperMismatchError

from .helper_file import HelperData

from .selection import WeightSelection, select_weights

_DEFAULT_LOGGER = Logger("puflock.binding", level=0)

CipherBits = NewType("CipherBits", int)

_MASK32 = 0xFFFFFFFF

def encrypt_weight(weight_bits: int, key_bits: int) -> CipherBits:
    """
    One-time-pad step on a single 32-bit pattern; applying it twice with the
    same key restores the input.
    """

    return CipherBits((weight_bits ^ key_bits) & _MASK32)

def draw_challenge_seeds(count: int, rng_seed: int) -> np.ndarray:
    """
    <count> distinct 64-bit challenge seeds, so no key is used twice within one helper.
    """

    rng = np.random.default_rng(rng_seed)

    seeds = rng.integers(0, 1 << 64, size=count, dtype=np.uint64)

    seen = set()

    for position, seed in enumerate(seeds.tolist()):
        while seed in seen:
            seed = int(rng.integers(0, 1 << 64, dtype=np.uint64))

        seen.add(seed)

        seeds[position] = seed

    return seeds

def _xor_layer(model: Model, helper: HelperData, puf: PufBackend) -> Model:
    layer = model.layer(helper.layer_id)

    if len(helper) and int(helper.flat_indices[-1]) >= layer.weight_count:
        raise HelperMismatchError(f"Helper addresses weight <{int(helper.flat_indices[-1])}> " \
            f"but layer <{helper.layer_id}> has only <{layer.weight_count}> weights.")

    if len(helper) == 0:
        return model

    keys = puf.keys(helper.challenge_seeds, KEY_BITS).astype(np.uint32)

    bits = layer.weight_bits().copy()

    bits[helper.flat_indices.astype(np.int64)] ^= keys

    return model.replace_layer(helper.layer_id, layer.with_weight_bits(bits))

def encrypt_weights(model: Model, layer_id: int, indices: Sequence[int], puf: PufBackend,
                    rng_seed: int, *, logger: Logger = _DEFAULT_LOGGER) -> Tuple[Model, HelperData]:
    """
    Encrypts the given weights of one layer under fresh challenges.
    """

    model.layer(layer_id)

    ordered = np.unique(np.asarray(indices, dtype=np.int64))

    if ordered.shape[0] != len(indices):
        raise HelperMismatchError("Each weight may only be encrypted once per helper.")

    helper = HelperData(layer_id, ordered, draw_challenge_seeds(ordered.shape[0], rng_seed))

    encrypted = _xor_layer(model, helper, puf)

    logger.info("encrypted %d weights of layer %d", len(helper), layer_id)

    return encrypted, helper

def encrypt_model(model: Model, layer_id: int, pct: float, puf: PufBackend,
                  rng_seed: int, *, logger: Logger = _DEFAULT_LOGGER) -> Tuple[Model, HelperData]:
    """
    Selects floor(pct % of the layer's weights) with <rng_seed> and encrypts
    them; challenges come from mix64(rng_seed).
    """

    selection: WeightSelection = select_weights(model.layer(layer_id).weight_count, layer_id, pct, rng_seed)

    return encrypt_weights(model, selection.layer_id, selection.indices, puf, mix64(rng_seed), logger=logger)

def encrypt_layers(model: Model, layer_ids: Sequence[int], pct: float, puf: PufBackend,
                   rng_seed: int, *, logger: Logger = _DEFAULT_LOGGER) -> Tuple[Model, List[HelperData]]:
    """
    Protects several layers, one helper per layer; layer i is seeded with mix64(rng_seed + i).
    """

    if len(set(layer_ids)) != len(layer_ids):
        raise HelperMismatchError(f"Layers may only be encrypted once per call, got <{list(layer_ids)}>.")

    helpers: List[HelperData] = [ ]

    for layer_id in layer_ids:
        model, helper = encrypt_model(model, layer_id, pct, puf, mix64(rng_seed + layer_id), logger=logger)

        helpers.append(helper)

    return model, helpers

def decrypt_model(model: Model, helper: HelperData, puf: PufBackend, *,
                  logger: Logger = _DEFAULT_LOGGER) -> Model:
    """
    XORs every listed weight with the PUF's response to its challenge. Restores
    the plaintext only on the machine the model was encrypted for. Nothing is
    written to disk.
    """

    decrypted = _xor_layer(model, helper, puf)

    logger.info("decrypted %d weights of layer %d in memory", len(helper), helper.layer_id)

    return decrypted

def rebind(encrypted: Model, helper: HelperData, old_puf: PufBackend, new_puf: PufBackend,
           rng_seed: int, *, logger: Logger = _DEFAULT_LOGGER) -> Tuple[Model, HelperData]:
    """
    Moves a model to replacement hardware: decrypt under the old PUF, then
    encrypt the same weights under fresh challenges for the new one.
    """

    plaintext = decrypt_model(encrypted, helper, old_puf, logger=logger)

    return encrypt_weights(plaintext, helper.layer_id, helper.flat_indices, new_puf, rng_seed, logger=logger)

def redeploy(original: Model, helper: HelperData, new_puf: PufBackend,
             rng_seed: int, *, logger: Logger = _DEFAULT_LOGGER) -> Tuple[Model, HelperData]:
    """
    Re-encrypts the vendor's plaintext model for new hardware over the same
    weights, for when the old machine can no longer decrypt.
    """

    return encrypt_weights(original, helper.layer_id, helper.flat_indices, new_puf, rng_seed, logger=logger)
