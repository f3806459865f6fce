from typing import Mapping, Optional

from dataclasses import dataclass

import argparse, os

from puflock._utils.mixing import MASK64

from puflock.exceptions import MissingMachineSeedError

from puflock.puf import XorArbiterPuf

from puflock.types import PufConfig

MACHINE_SEED_ENV = "PUFLOCK_MACHINE_SEED"

def parse_uint64(text: str) -> int:
    """
    argparse type for seeds: decimal or 0x-prefixed hex, 0 <= value < 2**64.
    """

    try:
        value = int(text, 0)
    except ValueError as error:
        raise argparse.ArgumentTypeError(f"<{text}> is not an integer") from error

    if not 0 <= value <= MASK64:
        raise argparse.ArgumentTypeError(f"<{text}> does not fit in 64 unsigned bits")

    return value

def parse_percentages(text: str) -> tuple:
    try:
        return tuple(float(part) for part in text.split(",") if part.strip())
    except ValueError as error:
        raise argparse.ArgumentTypeError(f"<{text}> is not a comma-separated list of numbers") from error

@dataclass(frozen=True)
class CliConfig:
    machine_seed: Optional[int]
    puf_config: PufConfig
    noise_seed: Optional[int]
    json: bool

    @classmethod
    def from_arguments(cls, args: argparse.Namespace,
                       environ: Mapping[str, str] = os.environ) -> "CliConfig":
        machine_seed = getattr(args, "machine_seed", None)

        if machine_seed is None and environ.get(MACHINE_SEED_ENV):
            try:
                machine_seed = parse_uint64(environ[MACHINE_SEED_ENV])
            except argparse.ArgumentTypeError as error:
                raise MissingMachineSeedError(f"{MACHINE_SEED_ENV} is invalid: {error}") from error

        return cls(machine_seed=machine_seed,
            puf_config=PufConfig(n_stages=args.stages, k_chains=args.chains, noise_sigma=args.noise),
            noise_seed=args.noise_seed, json=args.json)

    def require_machine_seed(self) -> int:
        # A fallback seed would unlock every model for every machine.
        if self.machine_seed is None:
            raise MissingMachineSeedError("This command needs the machine identity: pass " \
                f"--machine-seed or set {MACHINE_SEED_ENV}.")

        return self.machine_seed

    def puf(self, machine_seed: Optional[int] = None) -> XorArbiterPuf:
        seed = self.require_machine_seed() if machine_seed is None else machine_seed

        return XorArbiterPuf(seed, self.puf_config, noise_seed=self.noise_seed)
