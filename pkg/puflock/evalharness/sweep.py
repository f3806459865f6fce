from typing import List, Optional, Sequence

from logging import Logger

from concurrent.futures import ThreadPoolExecutor

import numpy as np

from puflock._utils.mixing import mix64

from puflock.binding import encrypt_weights, permutation_prefix, selection_count, choose_weights

from puflock.model import Model, Dataset, count_correct

from puflock.puf import PufBackend

from puflock.types import SweepConfig, SweepRow, SelectionMode

from ._event_emitter import HarnessEventEmitter

from .baseline import dataset_baseline

from .report import SweepReport

_DEFAULT_LOGGER = Logger("puflock.evalharness", level=0)

def trial_seed(master_seed: int, trial: int) -> int:
    return mix64(master_seed + trial)

def trial_selections(weight_count: int, percentages: Sequence[float],
                     seed: int, mode: SelectionMode) -> List[np.ndarray]:
    """
    One sorted index set per percentage. Nested mode draws a single shuffle per
    trial at the largest percentage and truncates its prefix, so smaller sets
    are subsets of larger ones; independent mode redraws for every percentage.
    """

    if mode == "nested":
        counts = [ selection_count(weight_count, pct) for pct in percentages ]

        prefix = permutation_prefix(weight_count, max(counts, default=0), seed)

        return [ np.sort(prefix[:count]) for count in counts ]

    return [ choose_weights(weight_count, pct, mix64(seed + index + 1)) \
        for index, pct in enumerate(percentages) ]

# Separates the challenge stream of a trial from its selection stream.
_CHALLENGE_DOMAIN = 0xC4A11E46E0000000

def challenge_seed(seed: int, pct_index: int) -> int:
    return mix64(seed ^ (_CHALLENGE_DOMAIN + pct_index))

def _run_trial(model: Model, data: Dataset, cfg: SweepConfig,
               puf: PufBackend, trial: int) -> List[SweepRow]:
    seed = trial_seed(cfg.master_seed, trial)

    layer = model.layer(cfg.layer_id)

    selections = trial_selections(layer.weight_count, cfg.percentages, seed, cfg.mode)

    rows = [ ]

    for index, (pct, indices) in enumerate(zip(cfg.percentages, selections)):
        encrypted, _ = encrypt_weights(model, cfg.layer_id, indices, puf, challenge_seed(seed, index))

        rows.append(SweepRow(pct=pct, trial=trial, correct=count_correct(encrypted, data), total=len(data)))

    return rows

def degradation_sweep(model: Model, data: Dataset, cfg: SweepConfig, puf: PufBackend, *,
                      logger: Logger = _DEFAULT_LOGGER,
                      events: Optional[HarnessEventEmitter] = None) -> SweepReport:
    """
    Accuracy of the encrypted, never decrypted, model for every (percentage, trial).
    Trials may run on <cfg.workers> threads; rows always come back in
    (trial, percentage) order.
    """

    model.layer(cfg.layer_id)

    original = count_correct(model, data)

    baseline, balanced = dataset_baseline(data)

    if not balanced:
        logger.warning("dataset is unbalanced, using majority-class frequency %.4f as baseline", baseline)

    with ThreadPoolExecutor(max_workers=cfg.workers) as executor:
        futures = [ ]

        for trial in range(cfg.trials):
            if events is not None:
                events.emit("trial_started", "sweep", trial)

            futures.append(executor.submit(_run_trial, model, data, cfg, puf, trial))

        rows: List[SweepRow] = [ ]

        for trial, future in enumerate(futures):
            trial_rows = future.result()

            logger.debug("sweep trial %d/%d done", trial + 1, cfg.trials)

            if events is not None:
                events.emit("trial_completed", "sweep", trial, trial_rows)

            rows.extend(trial_rows)

    report = SweepReport(layer_id=cfg.layer_id, mode=cfg.mode, original_correct=original,
        total=len(data), random_baseline=baseline, baseline_balanced=balanced, rows=tuple(rows))

    if events is not None:
        events.emit("sweep_completed", report)

    return report
