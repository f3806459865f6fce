from typing import Tuple

from puflock.exceptions import ConfigurationError

from puflock.model import Dataset

def random_baseline(num_classes: int) -> float:
    """
    Expected accuracy of a random classifier on a balanced test set.
    """

    if num_classes < 2:
        raise ConfigurationError(f"A baseline needs at least two classes, got <{num_classes}>.")

    return 1.0 / num_classes

def dataset_baseline(data: Dataset) -> Tuple[float, bool]:
    """
    1 / C on balanced data, otherwise the majority-class frequency. The flag
    tells which one was used.
    """

    if data.is_balanced():
        return random_baseline(data.num_classes), True

    counts = data.class_counts()

    return float(counts.max()) / float(counts.sum()), False
