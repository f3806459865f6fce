from typing import List, Tuple

import numpy as np

import pytest

from puflock.evalharness import \
    HarnessEventEmitter, degradation_sweep, clone_eval, \
    report_csv, trial_seed, trial_selections

from puflock.evalharness.exceptions import UnknownEventError, CloneSeedError

from puflock.model import Dataset, Model, count_correct

from puflock.puf import XorArbiterPuf

from puflock.types import SweepConfig

from puflock._utils.mixing import mix64

def test_trial_seeds_are_mixed() -> None:
    assert trial_seed(0, 3) == mix64(3)

    assert trial_seed(1, 0) != trial_seed(1, 1)

def test_nested_selections_are_prefix_subsets() -> None:
    selections = trial_selections(1024, [ 0.0, 5.0, 20.0, 40.0 ], 77, "nested")

    assert [ len(indices) for indices in selections ] == [ 0, 51, 204, 409 ]

    for smaller, larger in zip(selections, selections[1:]):
        assert set(smaller.tolist()) <= set(larger.tolist())

def test_independent_selections_are_redrawn() -> None:
    selections = trial_selections(1024, [ 20.0, 20.0 ], 77, "independent")

    assert len(selections[0]) == len(selections[1]) == 204

    assert not np.array_equal(selections[0], selections[1])

def test_zero_percent_keeps_the_original_accuracy(trained: Model, blobs: Tuple[Dataset, Dataset]) -> None:
    _, testing = blobs

    cfg = SweepConfig(percentages=(0.0, 10.0), trials=3, layer_id=0, master_seed=1, machine_seed=42)

    report = degradation_sweep(trained, testing, cfg, XorArbiterPuf(42))

    assert [ row.correct for row in report.rows if row.pct == 0.0 ] == [ count_correct(trained, testing) ] * 3

    zero = report.summaries()[0]

    assert zero.pct == 0.0 and zero.stddev == 0

    assert len(report.rows) == 6 and [ row.trial for row in report.rows ] == [ 0, 0, 1, 1, 2, 2 ]

def test_single_trial_has_no_spread(trained: Model, blobs: Tuple[Dataset, Dataset]) -> None:
    _, testing = blobs

    cfg = SweepConfig(percentages=(5.0, 30.0), trials=1, layer_id=1, machine_seed=42)

    report = degradation_sweep(trained, testing, cfg, XorArbiterPuf(42))

    assert all(summary.stddev == 0 for summary in report.summaries())

@pytest.mark.parametrize("mode", [ "nested", "independent" ])
def test_parallel_trials_match_sequential(tmp_path, mode, trained: Model, blobs: Tuple[Dataset, Dataset]) -> None:
    _, testing = blobs

    puf = XorArbiterPuf(42)

    sequential = SweepConfig(percentages=(0.0, 15.0, 30.0), trials=4, machine_seed=42, mode=mode)
    parallel = SweepConfig(percentages=(0.0, 15.0, 30.0), trials=4, machine_seed=42, mode=mode, workers=3)

    report_csv(degradation_sweep(trained, testing, sequential, puf), tmp_path / "a.csv")
    report_csv(degradation_sweep(trained, testing, parallel, puf), tmp_path / "b.csv")

    assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()

def test_progress_events(trained: Model, blobs: Tuple[Dataset, Dataset]) -> None:
    _, testing = blobs

    events, seen = HarnessEventEmitter(), [ ]

    @events.on("trial_started")
    def trial_started(experiment: str, trial: int) -> None:
        seen.append((experiment, "started", trial))

    @events.on("trial_completed")
    def trial_completed(experiment: str, trial: int, rows: List) -> None:
        seen.append((experiment, "completed", trial))

    @events.on("sweep_completed")
    def sweep_completed(report) -> None:
        seen.append(("sweep", "done", len(report.rows)))

    cfg = SweepConfig(percentages=(0.0,), trials=2, machine_seed=42, workers=2)

    degradation_sweep(trained, testing, cfg, XorArbiterPuf(42), events=events)

    assert seen == [ ("sweep", "started", 0), ("sweep", "started", 1),
                     ("sweep", "completed", 0), ("sweep", "completed", 1), ("sweep", "done", 2) ]

    assert events.has_listeners("trial_started") and not events.has_listeners("clone_completed")

    with pytest.raises(UnknownEventError):
        events.on("trial_finished")

    with pytest.raises(UnknownEventError):
        events.emit("trial_finished")

def test_clone_rows_at_zero_percent_all_match(trained: Model, blobs: Tuple[Dataset, Dataset]) -> None:
    _, testing = blobs

    report = clone_eval(trained, testing, 0, [ 0.0, 25.0 ], 42, [ 43 ], 0, trials=2)

    original = count_correct(trained, testing)

    assert all(row.correct == original for row in report.rows if row.pct == 0.0)

    assert all(row.correct == original for row in report.rows if row.condition == "target")

    assert [ row.condition for row in report.rows[:3] ] == [ "encrypted", "target", "clone-1" ]

def test_clone_seeds_are_checked(trained: Model, blobs: Tuple[Dataset, Dataset]) -> None:
    _, testing = blobs

    with pytest.raises(CloneSeedError):
        clone_eval(trained, testing, 0, [ 10.0 ], 42, [ 43, 42 ], 0)

    with pytest.raises(CloneSeedError):
        clone_eval(trained, testing, 0, [ 10.0 ], 42, [ ], 0)
