from typing import Optional, Union

from os import PathLike

import struct

import numpy as np

from puflock.exceptions import \
    StorageError, MagicMismatchError, VersionMismatchError, \
    TruncatedFileError

from .backend import PufBackend, KEY_BITS, _Seeds, as_seed_array

from .exceptions import UnknownChallengeError, ResponseWidthError

MAGIC = b"NNCR"

VERSION = 1

_HEADER = struct.Struct("<4sHHII")

_RECORD = np.dtype([ ("challenge_seed", "<u8"), ("response", "<u4") ])

class CrpTablePuf(PufBackend):
    """
    Replays a recorded table of 32-bit responses. Stands in for the target
    machine when encryption runs elsewhere against a database of its CRPs.
    """

    def __init__(self, challenge_seeds: _Seeds, responses: np.ndarray) -> None:
        seeds = as_seed_array(challenge_seeds)

        values = np.asarray(responses, dtype=np.uint32).reshape(-1)

        if seeds.shape != values.shape:
            raise ResponseWidthError(f"Got <{seeds.shape[0]}> challenges " \
                f"but <{values.shape[0]}> responses.")

        order = np.argsort(seeds, kind="stable")

        self.__seeds, self.__responses = seeds[order], values[order]

        self.__seeds.setflags(write=False)
        self.__responses.setflags(write=False)

    @classmethod
    def record(cls, puf: PufBackend, challenge_seeds: _Seeds) -> "CrpTablePuf":
        seeds = np.unique(as_seed_array(challenge_seeds))

        return cls(seeds, puf.keys(seeds, KEY_BITS).astype(np.uint32))

    def __len__(self) -> int:
        return int(self.__seeds.shape[0])

    @property
    def challenge_seeds(self) -> np.ndarray:
        return self.__seeds

    def keys(self, challenge_seeds: _Seeds, m: int = KEY_BITS, *,
             rng: Optional[np.random.Generator] = None) -> np.ndarray:
        if not 1 <= m <= KEY_BITS:
            raise ResponseWidthError(f"Recorded responses are <{KEY_BITS}> bits wide, " \
                f"cannot answer <{m}>-bit requests.")

        seeds = as_seed_array(challenge_seeds)

        positions = np.searchsorted(self.__seeds, seeds)

        clipped = np.minimum(positions, max(len(self) - 1, 0))

        found = (positions < len(self)) & (self.__seeds[clipped] == seeds) \
            if len(self) else np.zeros(seeds.shape, dtype=bool)

        if not np.all(found):
            missing = int(seeds[np.argmin(found)])

            raise UnknownChallengeError(f"No recorded response for challenge <{missing}>.")

        mask = np.uint64((1 << m) - 1)

        return self.__responses[clipped].astype(np.uint64) & mask

    def responses(self, challenge_seeds: _Seeds, m: int, *,
                  rng: Optional[np.random.Generator] = None) -> np.ndarray:
        keys = self.keys(challenge_seeds, m)

        shifts = np.arange(m, dtype=np.uint64)

        return ((keys[:, None] >> shifts) & np.uint64(1)).astype(np.uint8)

def save_crp_table(table: CrpTablePuf, path: Union[str, "PathLike[str]"]) -> None:
    records = np.empty(len(table), dtype=_RECORD)

    records["challenge_seed"] = table.challenge_seeds
    records["response"] = table.keys(table.challenge_seeds).astype(np.uint32)

    try:
        with open(path, "wb") as file:
            file.write(_HEADER.pack(MAGIC, VERSION, 0, len(table), 0))
            file.write(records.tobytes())
    except OSError as error:
        raise StorageError(f"Cannot write CRP table to <{path}>: {error}") from error

def load_crp_table(path: Union[str, "PathLike[str]"]) -> CrpTablePuf:
    try:
        with open(path, "rb") as file:
            data = file.read()
    except OSError as error:
        raise StorageError(f"Cannot read CRP table from <{path}>: {error}") from error

    if len(data) < _HEADER.size:
        raise TruncatedFileError(f"CRP table is truncated: <{len(data)}> bytes, " \
            f"the header alone needs <{_HEADER.size}>.", offset=len(data))

    magic, version, _, count, _ = _HEADER.unpack_from(data)

    if magic != MAGIC:
        raise MagicMismatchError(f"Magic number mismatch: expected <{MAGIC!r}>, got <{magic!r}>.", offset=0)

    if version != VERSION:
        raise VersionMismatchError(f"Unsupported CRP table version <{version}>.", offset=4)

    expected = _HEADER.size + count * _RECORD.itemsize

    if len(data) != expected:
        raise TruncatedFileError(f"CRP table holds <{len(data)}> bytes, expected <{expected}> " \
            f"for <{count}> records.", offset=min(len(data), expected))

    records = np.frombuffer(data, dtype=_RECORD, offset=_HEADER.size, count=count)

    return CrpTablePuf(records["challenge_seed"].copy(), records["response"].copy())
