from typing import Optional, Tuple, Union

from os import PathLike

from dataclasses import dataclass

import numpy as np

from puflock.exceptions import ConfigurationError, DimensionError, ParseError, StorageError

from .exceptions import EmptyDatasetError

@dataclass(frozen=True)
class Dataset:
    features: np.ndarray
    labels: np.ndarray
    num_classes: int

    def __post_init__(self) -> None:
        features = np.array(self.features, dtype=np.float32, copy=True, order="C")
        labels = np.array(self.labels, dtype=np.int64, copy=True)

        if features.ndim != 2 or labels.ndim != 1:
            raise DimensionError(f"Expected (N, d) features and (N,) labels, " \
                f"got <{features.shape}> and <{labels.shape}>.")

        if features.shape[0] != labels.shape[0]:
            raise DimensionError(f"<{features.shape[0]}> feature rows but <{labels.shape[0]}> labels.")

        if features.shape[0] == 0:
            raise EmptyDatasetError("A dataset needs at least one sample.")

        if self.num_classes < 1 or labels.min() < 0 or labels.max() >= self.num_classes:
            raise ConfigurationError(f"Labels must lie in [0, {self.num_classes}).")

        features.setflags(write=False)
        labels.setflags(write=False)

        object.__setattr__(self, "features", features)
        object.__setattr__(self, "labels", labels)

    def __len__(self) -> int:
        return int(self.labels.shape[0])

    @property
    def dim(self) -> int:
        return int(self.features.shape[1])

    def class_counts(self) -> np.ndarray:
        return np.bincount(self.labels, minlength=self.num_classes)

    def is_balanced(self) -> bool:
        counts = self.class_counts()

        return bool(np.all(counts == counts[0]))

def gen_synthetic(rng_seed: int, classes: int, dim: int, per_class: int,
                  radius: float = 8.0, sigma: float = 1.0) -> Dataset:
    """
    Gaussian blobs: class means sit on the sphere of the given radius, samples
    are mean + N(0, sigma^2 I). Rows are grouped by class.
    """

    if classes < 2 or dim < 1 or per_class < 1 or not radius > 0.0 or not sigma > 0.0:
        raise ConfigurationError("gen_synthetic needs classes >= 2, dim >= 1, " \
            f"per_class >= 1 and positive radius/sigma, got <{classes}, {dim}, " \
            f"{per_class}, {radius}, {sigma}>.")

    rng = np.random.default_rng(rng_seed)

    directions = rng.standard_normal((classes, dim))

    norms = np.linalg.norm(directions, axis=1, keepdims=True)

    means = radius * directions / np.where(norms > 0.0, norms, 1.0)

    labels = np.repeat(np.arange(classes), per_class)

    features = means[labels] + rng.normal(0.0, sigma, size=(labels.shape[0], dim))

    return Dataset(features.astype(np.float32), labels, classes)

def stratified_split(data: Dataset, test_fraction: float, rng_seed: int) -> Tuple[Dataset, Dataset]:
    """
    Splits every class in the same proportion, so balanced inputs stay balanced.
    """

    if not 0.0 < test_fraction < 1.0:
        raise ConfigurationError(f"<test_fraction> must lie in (0, 1), got <{test_fraction}>.")

    rng = np.random.default_rng(rng_seed)

    train_rows, test_rows = [ ], [ ]

    for label in range(data.num_classes):
        rows = rng.permutation(np.flatnonzero(data.labels == label))

        cut = int(np.floor(test_fraction * rows.shape[0]))

        test_rows.append(rows[:cut])
        train_rows.append(rows[cut:])

    def _take(parts) -> Dataset:
        rows = np.sort(np.concatenate(parts))

        return Dataset(data.features[rows], data.labels[rows], data.num_classes)

    return _take(train_rows), _take(test_rows)

def save_dataset(data: Dataset, path: Union[str, "PathLike[str]"]) -> None:
    try:
        with open(path, "wb") as file:
            np.savez(file, features=data.features, labels=data.labels,
                num_classes=np.array(data.num_classes, dtype=np.int64))
    except OSError as error:
        raise StorageError(f"Cannot write dataset to <{path}>: {error}") from error

def load_dataset(path: Union[str, "PathLike[str]"], num_classes: Optional[int] = None) -> Dataset:
    try:
        with np.load(path, allow_pickle=False) as archive:
            features, labels = archive["features"], archive["labels"]

            stored = int(archive["num_classes"]) if "num_classes" in archive.files else None
    except OSError as error:
        raise StorageError(f"Cannot read dataset from <{path}>: {error}") from error
    except (KeyError, ValueError) as error:
        raise ParseError(f"<{path}> is not a dataset archive: {error}") from error

    classes = num_classes or stored or int(labels.max()) + 1

    return Dataset(features, labels, classes)
