import numpy as np

import pytest

from puflock.binding import \
    choose_weights, permutation_prefix, select_weights, \
    selection_count

from puflock.binding.exceptions import PercentageError

def test_edge_percentages() -> None:
    assert choose_weights(50, 0, 1).tolist() == [ ]

    assert choose_weights(7, 100, 1).tolist() == list(range(7))

def test_twenty_percent_of_a_large_dense_layer() -> None:
    indices = choose_weights(100_352, 20, 5)

    assert indices.shape == (20_070,)

    assert np.unique(indices).shape == (20_070,) and indices.min() >= 0 and indices.max() < 100_352

@pytest.mark.parametrize("pct,count", [ (5, 51), (12.5, 128), (33.3, 340), (40, 409) ])
def test_counts_round_down(pct: float, count: int) -> None:
    assert selection_count(1024, pct) == count

def test_selection_is_seeded() -> None:
    assert np.array_equal(choose_weights(1000, 10, 3), choose_weights(1000, 10, 3))

    assert not np.array_equal(choose_weights(1000, 10, 3), choose_weights(1000, 10, 4))

def test_prefixes_nest() -> None:
    full = permutation_prefix(500, 200, 9)

    assert np.array_equal(permutation_prefix(500, 50, 9), full[:50])

def test_selection_names_its_layer() -> None:
    selection = select_weights(64, 2, 25, 0)

    assert selection.layer_id == 2 and selection.indices.shape == (16,)

@pytest.mark.parametrize("pct", [ -0.1, 100.5 ])
def test_out_of_range_percentages(pct: float) -> None:
    with pytest.raises(PercentageError):
        choose_weights(10, pct, 0)
