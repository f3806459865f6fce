from typing import Union

from os import PathLike

import struct

import numpy as np

from puflock.exceptions import \
    ParseError, StorageError, MagicMismatchError, \
    VersionMismatchError, TruncatedFileError

from .network import Activation, DenseLayer, Model

MAGIC = b"NNBM"

VERSION = 1

KIND_DENSE = 0

_HEADER = struct.Struct("<4sHH")

_LAYER = struct.Struct("<BBII")

def encode_model(model: Model) -> bytes:
    chunks = [ _HEADER.pack(MAGIC, VERSION, len(model.layers)) ]

    for layer in model.layers:
        chunks.append(_LAYER.pack(KIND_DENSE, int(layer.activation), layer.in_dim, layer.out_dim))
        chunks.append(layer.weights.astype("<f4", copy=False).tobytes())
        chunks.append(layer.bias.astype("<f4", copy=False).tobytes())

    return b"".join(chunks)

def decode_model(data: bytes) -> Model:
    if len(data) < _HEADER.size:
        raise TruncatedFileError(f"Model file ends at byte <{len(data)}> inside its header.", \
            offset=len(data))

    magic, version, layer_count = _HEADER.unpack_from(data)

    if magic != MAGIC:
        raise MagicMismatchError(f"Magic number mismatch: expected <{MAGIC!r}>, got <{magic!r}>.", offset=0)

    if version != VERSION:
        raise VersionMismatchError(f"Unsupported model file version <{version}>, " \
            f"expected <{VERSION}>.", offset=4)

    offset, layers = _HEADER.size, [ ]

    for index in range(layer_count):
        if len(data) < offset + _LAYER.size:
            raise TruncatedFileError(f"Model file truncated in the header of layer <{index}> " \
                f"at byte <{len(data)}>.", offset=len(data))

        kind, activation, in_dim, out_dim = _LAYER.unpack_from(data, offset)

        if kind != KIND_DENSE:
            raise ParseError(f"Layer <{index}> has unknown kind <{kind}>.", offset=offset)

        if activation not in { member.value for member in Activation }:
            raise ParseError(f"Layer <{index}> has unknown activation <{activation}>.", offset=offset + 1)

        offset += _LAYER.size

        size = 4 * (in_dim * out_dim + out_dim)

        if len(data) < offset + size:
            raise TruncatedFileError(f"Model file truncated in the parameters of layer <{index}>: " \
                f"needs <{size}> bytes from offset <{offset}>, file ends at <{len(data)}>.", offset=len(data))

        weights = np.frombuffer(data, dtype="<f4", count=in_dim * out_dim, offset=offset)

        bias = np.frombuffer(data, dtype="<f4", count=out_dim, offset=offset + 4 * in_dim * out_dim)

        layers.append(DenseLayer(weights.reshape(out_dim, in_dim), bias, Activation(activation)))

        offset += size

    if offset != len(data):
        raise ParseError(f"Model file has <{len(data) - offset}> trailing bytes.", offset=offset)

    return Model(tuple(layers))

def save_model(model: Model, path: Union[str, "PathLike[str]"]) -> None:
    try:
        with open(path, "wb") as file:
            file.write(encode_model(model))
    except OSError as error:
        raise StorageError(f"Cannot write model to <{path}>: {error}") from error

def load_model(path: Union[str, "PathLike[str]"]) -> Model:
    try:
        with open(path, "rb") as file:
            data = file.read()
    except OSError as error:
        raise StorageError(f"Cannot read model from <{path}>: {error}") from error

    return decode_model(data)
