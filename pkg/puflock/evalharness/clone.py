from typing import List, Optional, Sequence

from logging import Logger

from concurrent.futures import ThreadPoolExecutor

from puflock.binding import encrypt_weights, decrypt_model

from puflock.model import Model, Dataset, count_correct

from puflock.puf import XorArbiterPuf

from puflock.types import PufConfig, SweepConfig, CloneRow, SelectionMode

from ._event_emitter import HarnessEventEmitter

from .baseline import dataset_baseline

from .exceptions import CloneSeedError

from .report import CloneReport

from .sweep import trial_seed, trial_selections, challenge_seed, _DEFAULT_LOGGER

#pylint: disable-next=too-many-arguments,too-many-locals
def clone_eval(model: Model, data: Dataset, layer_id: int, pcts: Sequence[float],
               target_seed: int, clone_seeds: Sequence[int], master_seed: int, *,
               trials: int = 10,
               mode: SelectionMode = "nested",
               puf_config: PufConfig = PufConfig(),
               workers: int = 1,
               logger: Logger = _DEFAULT_LOGGER,
               events: Optional[HarnessEventEmitter] = None) -> CloneReport:
    """
    Encrypts under the target machine and measures accuracy left encrypted,
    decrypted on the target, and decrypted on every clone machine.
    """

    if len(clone_seeds) == 0:
        raise CloneSeedError("At least one clone machine seed is required.")

    if target_seed in clone_seeds:
        raise CloneSeedError(f"Clone seeds must differ from the target seed <{target_seed}>.")

    # Validates percentages, trials, mode and workers in one place.
    cfg = SweepConfig(percentages=tuple(pcts), trials=trials, layer_id=layer_id,
        master_seed=master_seed, machine_seed=target_seed, mode=mode, workers=workers)

    layer = model.layer(layer_id)

    target = XorArbiterPuf(target_seed, puf_config)

    clones = [ XorArbiterPuf(seed, puf_config) for seed in clone_seeds ]

    def _run_trial(trial: int) -> List[CloneRow]:
        seed = trial_seed(cfg.master_seed, trial)

        selections = trial_selections(layer.weight_count, cfg.percentages, seed, cfg.mode)

        rows = [ ]

        for index, (pct, indices) in enumerate(zip(cfg.percentages, selections)):
            encrypted, helper = encrypt_weights(model, layer_id, indices, target, challenge_seed(seed, index))

            machines = [ ("target", target) ] + \
                [ (f"clone-{number + 1}", clone) for number, clone in enumerate(clones) ]

            rows.append(CloneRow(pct, "encrypted", trial, count_correct(encrypted, data), len(data)))

            for condition, puf in machines:
                decrypted = decrypt_model(encrypted, helper, puf)

                rows.append(CloneRow(pct, condition, trial, count_correct(decrypted, data), len(data)))

        return rows

    original = count_correct(model, data)

    baseline, balanced = dataset_baseline(data)

    if not balanced:
        logger.warning("dataset is unbalanced, using majority-class frequency %.4f as baseline", baseline)

    with ThreadPoolExecutor(max_workers=cfg.workers) as executor:
        futures = [ ]

        for trial in range(cfg.trials):
            if events is not None:
                events.emit("trial_started", "clone", trial)

            futures.append(executor.submit(_run_trial, trial))

        rows: List[CloneRow] = [ ]

        for trial, future in enumerate(futures):
            trial_rows = future.result()

            logger.debug("clone trial %d/%d done", trial + 1, cfg.trials)

            if events is not None:
                events.emit("trial_completed", "clone", trial, trial_rows)

            rows.extend(trial_rows)

    report = CloneReport(layer_id=layer_id, mode=cfg.mode, target_seed=target_seed,
        clone_seeds=tuple(clone_seeds), original_correct=original, total=len(data),
        random_baseline=baseline, baseline_balanced=balanced, rows=tuple(rows))

    if events is not None:
        events.emit("clone_completed", report)

    return report
