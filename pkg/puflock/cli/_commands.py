from typing import \
    Any, Callable, Dict, \
    List, Optional

from logging import Logger

import argparse

import numpy as np

from puflock._utils.mixing import MASK64, mix64

from puflock.exceptions import UsageError

from puflock.binding import \
    HelperData, draw_challenge_seeds, encrypt_layers, \
    decrypt_model, rebind, save_helper, \
    load_helper

from puflock.evalharness import \
    HarnessEventEmitter, degradation_sweep, clone_eval, \
    report_csv, report_json, SweepReport, \
    CloneReport

from puflock.model import \
    Dataset, Model, evaluate, \
    gen_synthetic, stratified_split, save_dataset, \
    load_dataset, load_idx, train, \
    save_model, load_model

from puflock.puf import \
    CrpTablePuf, PufBackend, save_crp_table, \
    load_crp_table, uniqueness_over_pairs, balance, \
    reliability

from puflock.types import TrainConfig, SweepConfig

from ._config import CliConfig

Result = Dict[str, Any]

def _load_data(args: argparse.Namespace) -> Optional[Dataset]:
    if args.data and (args.images or args.labels):
        raise UsageError("Pass either --data or --images/--labels, not both.")

    if args.data:
        return load_dataset(args.data)

    if args.images or args.labels:
        if not (args.images and args.labels):
            raise UsageError("--images and --labels must be given together.")

        return load_idx(args.images, args.labels)

    if args.data_required:
        raise UsageError(f"<{args.command}> needs a dataset: pass --data or --images/--labels.")

    return None

def _decrypt_all(model: Model, helpers: List[HelperData], puf: PufBackend, logger: Logger) -> Model:
    for helper in helpers:
        model = decrypt_model(model, helper, puf, logger=logger)

    return model

def _experiment_events(logger: Logger) -> HarnessEventEmitter:
    events = HarnessEventEmitter()

    @events.on("trial_completed")
    def trial_completed(experiment: str, trial: int, rows: List[Any]) -> None:
        logger.info("%s trial %d finished (%d rows)", experiment, trial, len(rows))

    @events.on("sweep_completed")
    def sweep_completed(report: SweepReport) -> None:
        logger.info("sweep finished with %d rows", len(report.rows))

    @events.on("clone_completed")
    def clone_completed(report: CloneReport) -> None:
        logger.info("clone evaluation finished with %d rows", len(report.rows))

    return events

def gen_data(args: argparse.Namespace, config: CliConfig, logger: Logger) -> Result:
    data = gen_synthetic(args.seed, args.classes, args.dim, args.per_class, args.radius, args.sigma)

    result: Result = { "samples": len(data), "classes": data.num_classes, "dim": data.dim }

    if args.test_out:
        data, held_out = stratified_split(data, args.test_fraction, mix64(args.seed))

        save_dataset(held_out, args.test_out)

        result.update(samples=len(data), test_samples=len(held_out))

    save_dataset(data, args.out)

    logger.info("wrote %d samples to %s", len(data), args.out)

    return result

def train_model(args: argparse.Namespace, config: CliConfig, logger: Logger) -> Result:
    data = _load_data(args)

    assert data is not None

    train_config = TrainConfig(hidden_dims=tuple(args.hidden or (64,)), epochs=args.epochs,
        batch_size=args.batch_size, learning_rate=args.lr, rng_seed=args.seed)

    model = train(data, train_config, logger=logger)

    save_model(model, args.out)

    return { "accuracy": evaluate(model, data), "layers": len(model.layers) }

def encrypt(args: argparse.Namespace, config: CliConfig, logger: Logger) -> Result:
    if len(args.helper) != len(args.layer):
        raise UsageError(f"Got <{len(args.layer)}> --layer but <{len(args.helper)}> --helper paths.")

    puf: PufBackend = load_crp_table(args.crp_table) if args.crp_table else config.puf()

    model, data = load_model(args.model), _load_data(args)

    encrypted, helpers = encrypt_layers(model, args.layer, args.pct, puf, args.seed, logger=logger)

    save_model(encrypted, args.out)

    for helper, path in zip(helpers, args.helper):
        save_helper(helper, path)

    result: Result = { "encrypted_weights": [ len(helper) for helper in helpers ] }

    if data is not None:
        result.update(accuracy_before=evaluate(model, data), accuracy_after=evaluate(encrypted, data))

    return result

def decrypt(args: argparse.Namespace, config: CliConfig, logger: Logger) -> Result:
    puf, data = config.puf(), _load_data(args)

    assert data is not None

    model = _decrypt_all(load_model(args.model), [ load_helper(path) for path in args.helper ], puf, logger)

    if getattr(args, "emit_plaintext", None):
        logger.warning("writing DECRYPTED weights to %s; this file is not bound to any machine",
            args.emit_plaintext)

        save_model(model, args.emit_plaintext)

    return { "accuracy": evaluate(model, data) }

def rebind_model(args: argparse.Namespace, config: CliConfig, logger: Logger) -> Result:
    old_puf, new_puf = config.puf(), config.puf(args.new_machine_seed)

    helper = load_helper(args.helper)

    model, new_helper = rebind(load_model(args.model), helper, old_puf, new_puf, args.seed, logger=logger)

    save_model(model, args.out)

    save_helper(new_helper, args.helper_out)

    return { "rebound_weights": len(new_helper), "layer": new_helper.layer_id }

def record_crps(args: argparse.Namespace, config: CliConfig, logger: Logger) -> Result:
    # Mirrors the challenge stream of encrypt_layers: layer L draws from mix64(mix64(seed + L)).
    seeds = np.concatenate([ draw_challenge_seeds(args.count, mix64(mix64(args.seed + layer))) \
        for layer in args.layer ])

    table = CrpTablePuf.record(config.puf(), seeds)

    save_crp_table(table, args.out)

    logger.info("recorded %d challenge/response pairs", len(table))

    return { "recorded": len(table) }

def _write_reports(args: argparse.Namespace, report: Any) -> None:
    if args.csv:
        report_csv(report, args.csv)

    if args.json_out:
        report_json(report, args.json_out)

def sweep(args: argparse.Namespace, config: CliConfig, logger: Logger) -> Result:
    model, data = load_model(args.model), _load_data(args)

    assert data is not None

    cfg = SweepConfig(percentages=args.percentages, trials=args.trials, layer_id=args.layer,
        master_seed=args.master_seed, machine_seed=config.require_machine_seed(),
        mode=args.mode, workers=args.workers)

    report = degradation_sweep(model, data, cfg, config.puf(cfg.machine_seed),
        logger=logger, events=_experiment_events(logger))

    _write_reports(args, report)

    return {
        "original_accuracy": float(report.original_accuracy),
        "random_baseline": report.random_baseline,
        "means": { summary.pct: float(summary.mean) for summary in report.summaries() }
    }

def clone(args: argparse.Namespace, config: CliConfig, logger: Logger) -> Result:
    model, data = load_model(args.model), _load_data(args)

    assert data is not None

    target = config.require_machine_seed()

    clone_seeds = args.clone_seed or [ (target + 1) & MASK64, (target + 2) & MASK64 ]

    report = clone_eval(model, data, args.layer, args.percentages, target, clone_seeds,
        args.master_seed, trials=args.trials, mode=args.mode, puf_config=config.puf_config,
        workers=args.workers, logger=logger, events=_experiment_events(logger))

    _write_reports(args, report)

    means: Dict[str, Dict[float, float]] = { }

    for condition, summary in report.summaries():
        means.setdefault(condition, { })[summary.pct] = float(summary.mean)

    return { "original_accuracy": float(report.original_accuracy), "means": means }

def puf_stats(args: argparse.Namespace, config: CliConfig, logger: Logger) -> Result:
    puf = config.puf()

    return {
        "uniqueness": uniqueness_over_pairs(args.pairs, config.puf_config, args.challenges, args.seed),
        "balance": balance(puf, args.challenges, args.seed),
        "reliability": reliability(puf, args.challenges, args.repeats, args.seed)
    }

COMMANDS: Dict[str, Callable[[argparse.Namespace, CliConfig, Logger], Result]] = {
    "gen-data": gen_data,
    "train": train_model,
    "encrypt": encrypt,
    "decrypt": decrypt,
    "run": decrypt,
    "rebind": rebind_model,
    "record-crps": record_crps,
    "sweep": sweep,
    "clone-eval": clone,
    "puf-stats": puf_stats
}
