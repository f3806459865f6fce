from typing import List, Tuple

from logging import Logger

import numpy as np

from puflock.exceptions import DimensionError

from puflock.types import TrainConfig

from .datasets import Dataset

from .network import Activation, DenseLayer, Model

_DEFAULT_LOGGER = Logger("puflock.model.training", level=0)

# (weights (out, in), bias (out,)) per layer, in binary64
Parameters = List[Tuple[np.ndarray, np.ndarray]]

def init_parameters(dims: List[int], rng: np.random.Generator) -> Parameters:
    """
    Glorot-uniform weights, zero biases, drawn layer by layer.
    """

    parameters: Parameters = [ ]

    for fan_in, fan_out in zip(dims, dims[1:]):
        limit = np.sqrt(6.0 / (fan_in + fan_out))

        weights = rng.uniform(-limit, limit, size=(fan_out, fan_in))

        parameters.append((weights, np.zeros(fan_out)))

    return parameters

def _forward(parameters: Parameters, inputs: np.ndarray) -> Tuple[List[np.ndarray], List[np.ndarray]]:
    activations, pre_activations = [ inputs ], [ ]

    for index, (weights, bias) in enumerate(parameters):
        z = activations[-1] @ weights.T + bias

        pre_activations.append(z)

        if index < len(parameters) - 1:
            activations.append(np.maximum(z, 0.0))

    return activations, pre_activations

def loss_and_gradients(parameters: Parameters, inputs: np.ndarray,
                       labels: np.ndarray) -> Tuple[float, Parameters]:
    """
    Mean softmax cross-entropy over the batch and its gradient for every parameter.
    """

    activations, pre_activations = _forward(parameters, inputs)

    logits = pre_activations[-1]

    shifted = logits - logits.max(axis=1, keepdims=True)

    log_probs = shifted - np.log(np.exp(shifted).sum(axis=1, keepdims=True))

    rows = np.arange(labels.shape[0])

    loss = float(-log_probs[rows, labels].mean())

    delta = np.exp(log_probs)
    delta[rows, labels] -= 1.0
    delta /= labels.shape[0]

    gradients: Parameters = [ ]

    for index in range(len(parameters) - 1, -1, -1):
        gradients.append((delta.T @ activations[index], delta.sum(axis=0)))

        if index > 0:
            delta = (delta @ parameters[index][0]) * (pre_activations[index - 1] > 0.0)

    gradients.reverse()

    return loss, gradients

def to_model(parameters: Parameters) -> Model:
    last = len(parameters) - 1

    return Model(tuple(
        DenseLayer(weights.astype(np.float32), bias.astype(np.float32),
            Activation.NONE if index == last else Activation.RELU)
        for index, (weights, bias) in enumerate(parameters)
    ))

def train(data: Dataset, config: TrainConfig, *, logger: Logger = _DEFAULT_LOGGER) -> Model:
    """
    Mini-batch SGD on a ReLU MLP. Deterministic given the dataset and config.
    """

    if data.num_classes < 2:
        raise DimensionError(f"Training needs at least two classes, got <{data.num_classes}>.")

    rng = np.random.default_rng(config.rng_seed)

    dims = [ data.dim, *config.hidden_dims, data.num_classes ]

    parameters = init_parameters(dims, rng)

    inputs = data.features.astype(np.float64)

    for epoch in range(config.epochs):
        order = rng.permutation(len(data))

        losses = [ ]

        for start in range(0, len(data), config.batch_size):
            batch = order[start:start + config.batch_size]

            loss, gradients = loss_and_gradients(parameters, inputs[batch], data.labels[batch])

            parameters = [
                (weights - config.learning_rate * grad_weights, bias - config.learning_rate * grad_bias)
                    for (weights, bias), (grad_weights, grad_bias) in zip(parameters, gradients)
            ]

            losses.append(loss)

        logger.debug("epoch %d/%d mean loss %.6f", epoch + 1, config.epochs, float(np.mean(losses)))

    return to_model(parameters)
