from typing import Optional, Union

from os import PathLike

import gzip, struct

import numpy as np

from puflock.exceptions import StorageError, MagicMismatchError, TruncatedFileError

from .datasets import Dataset

from .exceptions import CountMismatchError

# Big-endian IDX headers:
#   images  0x00000803 | count u32 | rows u32 | cols u32 | count*rows*cols u8
#   labels  0x00000801 | count u32 | count u8
IMAGES_MAGIC = 0x00000803

LABELS_MAGIC = 0x00000801

def _read(path: Union[str, "PathLike[str]"]) -> bytes:
    try:
        with open(path, "rb") as file:
            data = file.read()
    except OSError as error:
        raise StorageError(f"Cannot read IDX file <{path}>: {error}") from error

    if data[:2] == b"\x1f\x8b":
        try:
            return gzip.decompress(data)
        except (OSError, EOFError) as error:
            raise TruncatedFileError(f"Corrupt gzip stream in <{path}>: {error}", offset=0) from error

    return data

def _header(data: bytes, fields: int, magic: int, path: Union[str, "PathLike[str]"]):
    size = 4 * fields

    if len(data) < size:
        raise TruncatedFileError(f"<{path}> ends at byte <{len(data)}> inside " \
            f"its <{size}>-byte header.", offset=len(data))

    values = struct.unpack_from(f">{fields}I", data)

    if values[0] != magic:
        raise MagicMismatchError(f"Magic number mismatch in <{path}>: expected " \
            f"<0x{magic:08X}>, got <0x{values[0]:08X}>.", offset=0)

    return values[1:], size

def _payload(data: bytes, offset: int, length: int, path: Union[str, "PathLike[str]"]) -> np.ndarray:
    if len(data) < offset + length:
        raise TruncatedFileError(f"<{path}> is truncated: payload needs bytes " \
            f"<{offset}..{offset + length}>, file ends at <{len(data)}>.", offset=len(data))

    return np.frombuffer(data, dtype=np.uint8, count=length, offset=offset)

def load_idx(images_path: Union[str, "PathLike[str]"],
             labels_path: Union[str, "PathLike[str]"],
             num_classes: Optional[int] = None) -> Dataset:
    """
    Reads an IDX image/label pair, scaling pixels to [0, 1] and flattening each
    image row-major. Gzipped files are accepted.
    """

    images = _read(images_path)

    (count, rows, cols), offset = _header(images, 4, IMAGES_MAGIC, images_path)

    pixels = _payload(images, offset, count * rows * cols, images_path)

    labels = _read(labels_path)

    (label_count,), label_offset = _header(labels, 2, LABELS_MAGIC, labels_path)

    if label_count != count:
        raise CountMismatchError(f"<{images_path}> holds <{count}> images but " \
            f"<{labels_path}> holds <{label_count}> labels.", offset=4)

    targets = _payload(labels, label_offset, label_count, labels_path)

    features = pixels.reshape(count, rows * cols).astype(np.float32) / np.float32(255.0)

    classes = num_classes or (int(targets.max()) + 1 if count else 1)

    return Dataset(features, targets.astype(np.int64), max(classes, 2))
