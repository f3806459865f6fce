from typing import Tuple, Sequence, Union

from dataclasses import dataclass

from enum import IntEnum

import numpy as np

from puflock.exceptions import ConfigurationError, DimensionError

from .datasets import Dataset

from .exceptions import LayerIndexError, EmptyDatasetError

class Activation(IntEnum):
    NONE = 0
    RELU = 1

def _frozen_float32(values: np.ndarray, ndim: int, name: str) -> np.ndarray:
    array = np.array(values, dtype=np.float32, copy=True, order="C")

    if array.ndim != ndim:
        raise DimensionError(f"<{name}> must have <{ndim}> dimensions, got shape <{array.shape}>.")

    array.setflags(write=False)

    return array

@dataclass(frozen=True)
class DenseLayer:
    """
    Affine map with optional ReLU; weights are stored (out_dim, in_dim) row-major.
    Any 32-bit pattern is a legal weight.
    """

    weights: np.ndarray
    bias: np.ndarray
    activation: Activation = Activation.NONE

    def __post_init__(self) -> None:
        object.__setattr__(self, "weights", _frozen_float32(self.weights, 2, "weights"))
        object.__setattr__(self, "bias", _frozen_float32(self.bias, 1, "bias"))
        object.__setattr__(self, "activation", Activation(self.activation))

        out_dim, in_dim = self.weights.shape

        if in_dim < 1 or out_dim < 1:
            raise DimensionError(f"Layer dimensions must be positive, got <{in_dim}x{out_dim}>.")

        if self.bias.shape != (out_dim,):
            raise DimensionError(f"Bias must have <{out_dim}> entries, got <{self.bias.shape[0]}>.")

    @property
    def in_dim(self) -> int:
        return int(self.weights.shape[1])

    @property
    def out_dim(self) -> int:
        return int(self.weights.shape[0])

    @property
    def weight_count(self) -> int:
        return self.in_dim * self.out_dim

    def weight_bits(self) -> np.ndarray:
        """
        Flat uint32 view of the weight patterns, row-major.
        """

        return self.weights.reshape(-1).view(np.uint32)

    def with_weight_bits(self, bits: np.ndarray) -> "DenseLayer":
        patterns = np.asarray(bits, dtype=np.uint32)

        if patterns.shape != (self.weight_count,):
            raise DimensionError(f"Expected <{self.weight_count}> weight patterns, got <{patterns.shape}>.")

        weights = patterns.view(np.float32).reshape(self.out_dim, self.in_dim)

        return DenseLayer(weights, self.bias, self.activation)

    def apply(self, inputs: np.ndarray) -> np.ndarray:
        outputs = inputs @ self.weights.T + self.bias

        if self.activation == Activation.RELU:
            # np.maximum propagates NaN
            outputs = np.maximum(outputs, np.float32(0.0))

        return outputs

@dataclass(frozen=True)
class Model:
    layers: Tuple[DenseLayer, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "layers", tuple(self.layers))

        if len(self.layers) == 0:
            raise ConfigurationError("A model needs at least one layer.")

        for index, (current, following) in enumerate(zip(self.layers, self.layers[1:])):
            if current.out_dim != following.in_dim:
                raise DimensionError(f"Layer <{index}> emits <{current.out_dim}> values " \
                    f"but layer <{index + 1}> expects <{following.in_dim}>.")

    @property
    def input_dim(self) -> int:
        return self.layers[0].in_dim

    @property
    def num_classes(self) -> int:
        return self.layers[-1].out_dim

    def layer(self, layer_id: int) -> DenseLayer:
        if not 0 <= layer_id < len(self.layers):
            raise LayerIndexError(f"Layer <{layer_id}> does not exist, " \
                f"the model has <{len(self.layers)}> layers.")

        return self.layers[layer_id]

    def replace_layer(self, layer_id: int, layer: DenseLayer) -> "Model":
        self.layer(layer_id)

        return Model(self.layers[:layer_id] + (layer,) + self.layers[layer_id + 1:])

    def bit_equal(self, other: "Model") -> bool:
        """
        Byte-level equality; NaN payloads compare by pattern.
        """

        if len(self.layers) != len(other.layers):
            return False

        return all(
            mine.activation == theirs.activation \
                and mine.weights.shape == theirs.weights.shape \
                and mine.weights.tobytes() == theirs.weights.tobytes() \
                and mine.bias.tobytes() == theirs.bias.tobytes()
            for mine, theirs in zip(self.layers, other.layers)
        )

def forward_batch(model: Model, inputs: np.ndarray) -> np.ndarray:
    batch = np.asarray(inputs, dtype=np.float32)

    if batch.ndim != 2 or batch.shape[1] != model.input_dim:
        raise DimensionError(f"Model expects inputs of width <{model.input_dim}>, " \
            f"got shape <{batch.shape}>.")

    with np.errstate(all="ignore"):
        for layer in model.layers:
            batch = layer.apply(batch)

    return batch

def forward(model: Model, inputs: Union[np.ndarray, Sequence[float]]) -> np.ndarray:
    vector = np.asarray(inputs, dtype=np.float32)

    if vector.ndim != 1:
        raise DimensionError(f"A single input must be a vector, got shape <{vector.shape}>.")

    return forward_batch(model, vector[None, :])[0]

def argmax_logits(logits: np.ndarray) -> np.ndarray:
    """
    Row-wise argmax where NaN ranks below every real (−Inf included), ties go
    to the lowest index and all-NaN rows give class 0.
    """

    scores = np.atleast_2d(logits)

    valid = ~np.isnan(scores)

    with np.errstate(invalid="ignore"):
        best = np.max(np.where(valid, scores, -np.inf), axis=1, keepdims=True)

    winners = valid & (scores == best)

    return np.argmax(winners, axis=1)

def predict(model: Model, inputs: Union[np.ndarray, Sequence[float]]) -> int:
    return int(argmax_logits(forward(model, inputs))[0])

def predict_batch(model: Model, inputs: np.ndarray) -> np.ndarray:
    return argmax_logits(forward_batch(model, inputs))

def count_correct(model: Model, data: Dataset) -> int:
    if data.dim != model.input_dim:
        raise DimensionError(f"Dataset has <{data.dim}> features, " \
            f"model expects <{model.input_dim}>.")

    return int(np.count_nonzero(predict_batch(model, data.features) == data.labels))

def evaluate(model: Model, data: Dataset) -> float:
    """
    Fraction of samples whose prediction equals the label.
    """

    if len(data) == 0:
        raise EmptyDatasetError("Cannot evaluate on an empty dataset.")

    return count_correct(model, data) / len(data)
