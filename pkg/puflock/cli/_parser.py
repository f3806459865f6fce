import argparse

from puflock._version import __version__

from puflock.types import DEFAULT_PERCENTAGES

from ._config import parse_uint64, parse_percentages, MACHINE_SEED_ENV

def _add_data_arguments(parser: argparse.ArgumentParser, *, required: bool) -> None:
    group = parser.add_argument_group("dataset (an .npz archive or an IDX image/label pair)")

    group.add_argument("--data", help="dataset archive written by gen-data")
    group.add_argument("--images", help="IDX image file (optionally gzipped)")
    group.add_argument("--labels", help="IDX label file (optionally gzipped)")

    parser.set_defaults(data_required=required)

def _add_machine_seed(parser: argparse.ArgumentParser, help_text: str) -> None:
    parser.add_argument("--machine-seed", type=parse_uint64,
        help=f"{help_text} (falls back to ${MACHINE_SEED_ENV})")

def _add_experiment_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--model", required=True)
    _add_data_arguments(parser, required=True)
    parser.add_argument("--layer", type=int, default=0)
    parser.add_argument("--percentages", type=parse_percentages, default=DEFAULT_PERCENTAGES,
        help="comma-separated list (default: 0,5,...,40)")
    parser.add_argument("--trials", type=int, default=10)
    parser.add_argument("--master-seed", type=parse_uint64, default=0)
    parser.add_argument("--mode", choices=("nested", "independent"), default="nested")
    parser.add_argument("--workers", type=int, default=1)
    parser.add_argument("--csv", help="write the CSV report here")
    parser.add_argument("--json-out", help="write the JSON report here")

#pylint: disable-next=too-many-statements
def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="puflock",
        description="Bind neural-network weights to a machine through PUF-derived one-time keys.")

    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--stages", type=int, default=64, help="arbiter chain length")
    parser.add_argument("--chains", type=int, default=4, help="number of XORed chains")
    parser.add_argument("--noise", type=float, default=0.0, help="Gaussian noise sigma on the delay sum")
    parser.add_argument("--noise-seed", type=parse_uint64, help="seed the simulated measurement noise")
    parser.add_argument("--json", action="store_true", help="print machine-readable JSON")
    parser.add_argument("--log-level", default="WARNING",
        choices=("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"))
    parser.add_argument("--log-file", help="also append plain log lines to this file")

    commands = parser.add_subparsers(dest="command", required=True, metavar="command")

    gen_data = commands.add_parser("gen-data", help="generate a synthetic blob dataset")
    gen_data.add_argument("--seed", type=parse_uint64, default=0)
    gen_data.add_argument("--classes", type=int, default=10)
    gen_data.add_argument("--dim", type=int, default=16)
    gen_data.add_argument("--per-class", type=int, default=100)
    gen_data.add_argument("--radius", type=float, default=8.0)
    gen_data.add_argument("--sigma", type=float, default=1.0)
    gen_data.add_argument("--out", required=True)
    gen_data.add_argument("--test-out", help="also write a stratified held-out split here")
    gen_data.add_argument("--test-fraction", type=float, default=0.5)

    train = commands.add_parser("train", help="train a dense ReLU MLP")
    _add_data_arguments(train, required=True)
    train.add_argument("--hidden", type=int, action="append", help="hidden width, repeatable (default: 64)")
    train.add_argument("--epochs", type=int, default=20)
    train.add_argument("--batch-size", type=int, default=32)
    train.add_argument("--lr", type=float, default=0.05)
    train.add_argument("--seed", type=parse_uint64, default=0)
    train.add_argument("--out", required=True)

    encrypt = commands.add_parser("encrypt", help="encrypt weights for one machine")
    encrypt.add_argument("--model", required=True)
    encrypt.add_argument("--layer", type=int, action="append", required=True, help="repeatable")
    encrypt.add_argument("--pct", type=float, required=True)
    encrypt.add_argument("--seed", type=parse_uint64, default=0)
    _add_machine_seed(encrypt, "target machine")
    encrypt.add_argument("--crp-table", help="answer challenges from a recorded CRP table instead")
    encrypt.add_argument("--out", required=True)
    encrypt.add_argument("--helper", action="append", required=True, help="one per --layer, in order")
    _add_data_arguments(encrypt, required=False)

    for name, help_text in (("decrypt", "decrypt in memory and report accuracy"),
                            ("run", "run the protected model on this machine")):
        command = commands.add_parser(name, help=help_text)
        command.add_argument("--model", required=True)
        command.add_argument("--helper", action="append", required=True, help="repeatable")
        _add_machine_seed(command, "this machine")
        _add_data_arguments(command, required=True)

        if name == "decrypt":
            command.add_argument("--emit-plaintext", metavar="PATH",
                help="write the decrypted model to disk (unprotected!)")

    rebind = commands.add_parser("rebind", help="move an encrypted model to replacement hardware")
    rebind.add_argument("--model", required=True)
    rebind.add_argument("--helper", required=True)
    _add_machine_seed(rebind, "old machine")
    rebind.add_argument("--new-machine-seed", type=parse_uint64, required=True)
    rebind.add_argument("--seed", type=parse_uint64, default=1)
    rebind.add_argument("--out", required=True)
    rebind.add_argument("--helper-out", required=True)

    record = commands.add_parser("record-crps", help="record the responses encrypt --seed will need")
    _add_machine_seed(record, "target machine")
    record.add_argument("--seed", type=parse_uint64, default=0, help="the --seed later given to encrypt")
    record.add_argument("--layer", type=int, action="append", required=True, help="repeatable")
    record.add_argument("--count", type=int, required=True, help="challenges per layer")
    record.add_argument("--out", required=True)

    sweep = commands.add_parser("sweep", help="accuracy of encrypted models over percentages")
    _add_experiment_arguments(sweep)
    _add_machine_seed(sweep, "encrypting machine")

    clone = commands.add_parser("clone-eval", help="decrypt on the target and on clone machines")
    _add_experiment_arguments(clone)
    _add_machine_seed(clone, "target machine")
    clone.add_argument("--clone-seed", type=parse_uint64, action="append",
        help="clone machine, repeatable (default: target+1, target+2)")

    stats = commands.add_parser("puf-stats", help="uniqueness, balance and reliability of the simulated PUF")
    _add_machine_seed(stats, "machine to measure")
    stats.add_argument("--pairs", type=int, default=100)
    stats.add_argument("--challenges", type=int, default=1000)
    stats.add_argument("--repeats", type=int, default=10)
    stats.add_argument("--seed", type=parse_uint64, default=0)

    return parser
