from typing import List, Tuple, Union

from os import PathLike

from dataclasses import dataclass

import struct

import numpy as np

from puflock.exceptions import \
    ConfigurationError, StorageError, MagicMismatchError, \
    VersionMismatchError, TruncatedFileError, ParseError

from .exceptions import HelperOrderError

MAGIC = b"NNHD"

VERSION = 1

_HEADER = struct.Struct("<4sHHII")

_ENTRY = np.dtype([ ("flat_index", "<u4"), ("challenge_seed", "<u8") ])

HEADER_SIZE = _HEADER.size

ENTRY_SIZE = _ENTRY.itemsize

@dataclass(frozen=True)
class HelperData:
    """
    Public bookkeeping for one encrypted layer: which weights were encrypted and
    under which challenge. Holds no response bits.
    """

    layer_id: int
    flat_indices: np.ndarray
    challenge_seeds: np.ndarray

    def __post_init__(self) -> None:
        indices = np.array(self.flat_indices, dtype=np.uint32, copy=True).reshape(-1)
        seeds = np.array(self.challenge_seeds, dtype=np.uint64, copy=True).reshape(-1)

        if not 0 <= self.layer_id <= 0xFFFF:
            raise ConfigurationError(f"<layer_id> must fit in 16 bits, got <{self.layer_id}>.")

        if indices.shape != seeds.shape:
            raise ConfigurationError(f"<{indices.shape[0]}> indices but <{seeds.shape[0]}> challenges.")

        if np.any(np.diff(indices.astype(np.int64)) <= 0):
            raise HelperOrderError("Helper indices must be unique and strictly ascending.")

        indices.setflags(write=False)
        seeds.setflags(write=False)

        object.__setattr__(self, "flat_indices", indices)
        object.__setattr__(self, "challenge_seeds", seeds)

    def __len__(self) -> int:
        return int(self.flat_indices.shape[0])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HelperData):
            return NotImplemented

        return self.layer_id == other.layer_id \
            and np.array_equal(self.flat_indices, other.flat_indices) \
            and np.array_equal(self.challenge_seeds, other.challenge_seeds)

    __hash__ = None  # type: ignore[assignment]

    @property
    def entries(self) -> List[Tuple[int, int]]:
        return [ (int(index), int(seed)) for index, seed in zip(self.flat_indices, self.challenge_seeds) ]

    def has_unique_challenges(self) -> bool:
        return np.unique(self.challenge_seeds).shape[0] == len(self)

def encode_helper(helper: HelperData) -> bytes:
    records = np.empty(len(helper), dtype=_ENTRY)

    records["flat_index"] = helper.flat_indices
    records["challenge_seed"] = helper.challenge_seeds

    return _HEADER.pack(MAGIC, VERSION, helper.layer_id, len(helper), 0) + records.tobytes()

def decode_helper(data: bytes) -> HelperData:
    if len(data) < HEADER_SIZE:
        raise TruncatedFileError(f"Helper file ends at byte <{len(data)}> inside " \
            f"its <{HEADER_SIZE}>-byte header.", offset=len(data))

    magic, version, layer_id, count, reserved = _HEADER.unpack_from(data)

    if magic != MAGIC:
        raise MagicMismatchError(f"Magic number mismatch: expected <{MAGIC!r}>, got <{magic!r}>.", offset=0)

    if version != VERSION:
        raise VersionMismatchError(f"Unsupported helper file version <{version}>, " \
            f"expected <{VERSION}>.", offset=4)

    if reserved != 0:
        raise ParseError(f"Reserved header field must be zero, got <{reserved}>.", offset=12)

    expected = HEADER_SIZE + count * ENTRY_SIZE

    if len(data) < expected:
        raise TruncatedFileError(f"Helper file is truncated: <{count}> entries need " \
            f"<{expected}> bytes, got <{len(data)}>.", offset=len(data))

    if len(data) > expected:
        raise ParseError(f"Helper file has <{len(data) - expected}> trailing bytes.", offset=expected)

    records = np.frombuffer(data, dtype=_ENTRY, count=count, offset=HEADER_SIZE)

    steps = np.diff(records["flat_index"].astype(np.int64))

    if np.any(steps <= 0):
        position = int(np.argmax(steps <= 0)) + 1

        raise HelperOrderError(f"Entry <{position}> breaks the ascending index order.", \
            offset=HEADER_SIZE + position * ENTRY_SIZE)

    return HelperData(layer_id, records["flat_index"], records["challenge_seed"])

def save_helper(helper: HelperData, path: Union[str, "PathLike[str]"]) -> None:
    try:
        with open(path, "wb") as file:
            file.write(encode_helper(helper))
    except OSError as error:
        raise StorageError(f"Cannot write helper data to <{path}>: {error}") from error

def load_helper(path: Union[str, "PathLike[str]"]) -> HelperData:
    try:
        with open(path, "rb") as file:
            data = file.read()
    except OSError as error:
        raise StorageError(f"Cannot read helper data from <{path}>: {error}") from error

    return decode_helper(data)
