import numpy as np

import pytest

from puflock.binding import \
    HelperData, draw_challenge_seeds, encrypt_weight, \
    encrypt_weights, encrypt_model, encrypt_layers, \
    decrypt_model, rebind, redeploy

from puflock.binding.exceptions import HelperMismatchError

from puflock.model import Model

from puflock.model.exceptions import LayerIndexError

from puflock.puf import CrpTablePuf, XorArbiterPuf

from .conftest import random_model

def test_vernam_step() -> None:
    assert encrypt_weight(0x3F800000, 0x00000000) == 0x3F800000

    assert encrypt_weight(0x3F800000, 0xFFFFFFFF) == 0xC07FFFFF

    assert encrypt_weight(encrypt_weight(0x12345678, 0xDEADBEEF), 0xDEADBEEF) == 0x12345678

def test_zero_percent_changes_nothing(small_model: Model, target_puf: XorArbiterPuf) -> None:
    encrypted, helper = encrypt_model(small_model, 0, 0, target_puf, 1)

    assert encrypted.bit_equal(small_model) and len(helper) == 0

    assert decrypt_model(encrypted, helper, target_puf).bit_equal(small_model)

def test_target_machine_restores_the_exact_model(target_puf: XorArbiterPuf) -> None:
    rng = np.random.default_rng(10)

    for case in range(200):
        model = random_model(rng, (int(rng.integers(1, 8)), int(rng.integers(1, 8)), int(rng.integers(2, 5))))

        layer_id, pct = int(rng.integers(0, 2)), float(rng.uniform(0, 100))

        encrypted, helper = encrypt_model(model, layer_id, pct, target_puf, case)

        assert helper.layer_id == layer_id and helper.has_unique_challenges()

        assert decrypt_model(encrypted, helper, target_puf).bit_equal(model)

def test_only_selected_weights_change(small_model: Model, target_puf: XorArbiterPuf) -> None:
    encrypted, helper = encrypt_model(small_model, 1, 50, target_puf, 4)

    before, after = small_model.layer(1).weight_bits(), encrypted.layer(1).weight_bits()

    changed = np.flatnonzero(before != after)

    assert set(changed.tolist()) <= set(helper.flat_indices.tolist())

    assert encrypted.layer(0) is small_model.layer(0)

    assert np.array_equal(encrypted.layer(1).bias, small_model.layer(1).bias)

def test_clone_machine_scrambles_about_half_the_bits(target_puf: XorArbiterPuf) -> None:
    model = random_model(np.random.default_rng(0), (32, 64, 4))

    encrypted, helper = encrypt_model(model, 0, 50, target_puf, 2)

    cloned = decrypt_model(encrypted, helper, XorArbiterPuf(43))

    original = model.layer(0).weight_bits()[helper.flat_indices]
    recovered = cloned.layer(0).weight_bits()[helper.flat_indices]

    flipped = np.unpackbits((original ^ recovered).view(np.uint8)).mean()

    assert 0.45 <= flipped <= 0.55

def test_empty_helper_is_a_no_op(small_model: Model, target_puf: XorArbiterPuf) -> None:
    helper = HelperData(0, np.zeros(0), np.zeros(0))

    assert decrypt_model(small_model, helper, target_puf).bit_equal(small_model)

def test_mismatched_helpers_are_rejected(small_model: Model, target_puf: XorArbiterPuf) -> None:
    with pytest.raises(HelperMismatchError):
        decrypt_model(small_model, HelperData(1, [ 18 ], [ 1 ]), target_puf)

    with pytest.raises(LayerIndexError):
        decrypt_model(small_model, HelperData(5, [ 0 ], [ 1 ]), target_puf)

    with pytest.raises(LayerIndexError):
        encrypt_model(small_model, 2, 10, target_puf, 0)

    with pytest.raises(HelperMismatchError):
        encrypt_weights(small_model, 0, [ 1, 1 ], target_puf, 0)

def test_challenge_seeds_are_distinct_and_seeded() -> None:
    seeds = draw_challenge_seeds(5000, 7)

    assert np.unique(seeds).shape == (5000,)

    assert np.array_equal(seeds, draw_challenge_seeds(5000, 7))

    assert np.array_equal(draw_challenge_seeds(100, 7), seeds[:100])

def test_rebind_moves_the_model_to_new_hardware(small_model: Model, target_puf: XorArbiterPuf) -> None:
    new_puf = XorArbiterPuf(99)

    encrypted, helper = encrypt_model(small_model, 0, 60, target_puf, 3)

    rebound, new_helper = rebind(encrypted, helper, target_puf, new_puf, 8)

    assert np.array_equal(new_helper.flat_indices, helper.flat_indices)

    assert decrypt_model(rebound, new_helper, new_puf).bit_equal(small_model)

    assert not decrypt_model(rebound, new_helper, target_puf).bit_equal(small_model)

def test_rebind_to_the_same_machine_refreshes_challenges(small_model: Model, target_puf: XorArbiterPuf) -> None:
    encrypted, helper = encrypt_model(small_model, 0, 60, target_puf, 3)

    rebound, new_helper = rebind(encrypted, helper, target_puf, target_puf, 8)

    assert not np.array_equal(new_helper.challenge_seeds, helper.challenge_seeds)

    assert decrypt_model(rebound, new_helper, target_puf).bit_equal(small_model)

def test_redeploy_from_the_vendor_copy(small_model: Model, target_puf: XorArbiterPuf) -> None:
    _, helper = encrypt_model(small_model, 1, 30, target_puf, 5)

    new_puf = XorArbiterPuf(7)

    redeployed, new_helper = redeploy(small_model, helper, new_puf, 6)

    assert np.array_equal(new_helper.flat_indices, helper.flat_indices)

    assert decrypt_model(redeployed, new_helper, new_puf).bit_equal(small_model)

def test_several_layers_and_recorded_responses(small_model: Model, target_puf: XorArbiterPuf) -> None:
    encrypted, helpers = encrypt_layers(small_model, [ 0, 1 ], 50, target_puf, 11)

    assert [ helper.layer_id for helper in helpers ] == [ 0, 1 ]

    table = CrpTablePuf.record(target_puf, np.concatenate([ helper.challenge_seeds for helper in helpers ]))

    # Encrypting against the recorded table gives the same ciphertext.
    replayed, _ = encrypt_layers(small_model, [ 0, 1 ], 50, table, 11)

    assert replayed.bit_equal(encrypted)

    for helper in reversed(helpers):
        encrypted = decrypt_model(encrypted, helper, target_puf)

    assert encrypted.bit_equal(small_model)

    with pytest.raises(HelperMismatchError):
        encrypt_layers(small_model, [ 0, 0 ], 50, target_puf, 11)
