from typing import Tuple

import numpy as np

import pytest

from puflock.model import \
    Activation, DenseLayer, Dataset, \
    Model, gen_synthetic, stratified_split, \
    train

from puflock.puf import XorArbiterPuf

from puflock.types import TrainConfig

def random_model(rng: np.random.Generator, dims: Tuple[int, ...]) -> Model:
    last = len(dims) - 2

    return Model(tuple(
        DenseLayer(rng.standard_normal((fan_out, fan_in)), rng.standard_normal(fan_out),
            Activation.NONE if index == last else Activation.RELU)
        for index, (fan_in, fan_out) in enumerate(zip(dims, dims[1:]))
    ))

@pytest.fixture(name="blobs", scope="session")
def fixture_blobs() -> Tuple[Dataset, Dataset]:
    return stratified_split(gen_synthetic(0, classes=10, dim=16, per_class=200), 0.5, 1)

@pytest.fixture(name="trained", scope="session")
def fixture_trained(blobs: Tuple[Dataset, Dataset]) -> Model:
    training, _ = blobs

    return train(training, TrainConfig(hidden_dims=(64,), epochs=20, batch_size=32,
        learning_rate=0.05, rng_seed=0))

@pytest.fixture(name="small_model")
def fixture_small_model() -> Model:
    return random_model(np.random.default_rng(3), (4, 6, 3))

@pytest.fixture(name="target_puf", scope="session")
def fixture_target_puf() -> XorArbiterPuf:
    return XorArbiterPuf(42)
