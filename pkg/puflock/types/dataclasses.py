from typing import Tuple, Literal

from dataclasses import dataclass, field

from decimal import Decimal

from fractions import Fraction

from puflock.exceptions import ConfigurationError

from .labeler import _Type

#region Dataclass definitions for configuration

MAX_STAGES = 64

@dataclass(frozen=True)
class PufConfig(_Type):
    n_stages: int = 64
    k_chains: int = 4
    noise_sigma: float = 0.0

    def __post_init__(self) -> None:
        if not 1 <= self.n_stages <= MAX_STAGES:
            raise ConfigurationError("<n_stages> must lie in " \
                f"[1, {MAX_STAGES}], got <{self.n_stages}>.")

        if self.k_chains < 1:
            raise ConfigurationError(f"<k_chains> must be positive, got <{self.k_chains}>.")

        if not self.noise_sigma >= 0.0:
            raise ConfigurationError(f"<noise_sigma> must be non-negative, got <{self.noise_sigma}>.")

@dataclass(frozen=True)
class TrainConfig(_Type):
    hidden_dims: Tuple[int, ...] = (64,)
    epochs: int = 20
    batch_size: int = 32
    learning_rate: float = 0.1
    rng_seed: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "hidden_dims", tuple(self.hidden_dims))

        if any(dim < 1 for dim in self.hidden_dims):
            raise ConfigurationError(f"<hidden_dims> must all be positive, got <{self.hidden_dims}>.")

        if self.epochs < 0:
            raise ConfigurationError(f"<epochs> must be non-negative, got <{self.epochs}>.")

        if self.batch_size < 1:
            raise ConfigurationError(f"<batch_size> must be positive, got <{self.batch_size}>.")

        if not self.learning_rate > 0.0:
            raise ConfigurationError(f"<learning_rate> must be positive, got <{self.learning_rate}>.")

DEFAULT_PERCENTAGES: Tuple[float, ...] = \
    tuple(float(pct) for pct in range(0, 45, 5))

SelectionMode = Literal["nested", "independent"]

@dataclass(frozen=True)
class SweepConfig(_Type):
    percentages: Tuple[float, ...] = DEFAULT_PERCENTAGES
    trials: int = 10
    layer_id: int = 0
    master_seed: int = 0
    machine_seed: int = 0
    mode: SelectionMode = "nested"
    workers: int = 1

    def __post_init__(self) -> None:
        object.__setattr__(self, "percentages", \
            tuple(float(pct) for pct in self.percentages))

        for pct in self.percentages:
            if not 0.0 <= pct <= 100.0:
                raise ConfigurationError(f"Every percentage must lie in [0, 100], got <{pct}>.")

        if self.trials < 1:
            raise ConfigurationError(f"<trials> must be positive, got <{self.trials}>.")

        if self.mode not in ("nested", "independent"):
            raise ConfigurationError(f"<mode> must be nested or independent, got <{self.mode}>.")

        if self.workers < 1:
            raise ConfigurationError(f"<workers> must be positive, got <{self.workers}>.")

#endregion

#region Dataclass definitions for experiment reports

@dataclass(frozen=True)
class SweepRow(_Type):
    pct: float
    trial: int
    correct: int
    total: int

    @property
    def accuracy(self) -> Fraction:
        return Fraction(self.correct, self.total)

@dataclass(frozen=True)
class CloneRow(_Type):
    pct: float
    condition: str
    trial: int
    correct: int
    total: int

    @property
    def accuracy(self) -> Fraction:
        return Fraction(self.correct, self.total)

@dataclass(frozen=True)
class Summary(_Type):
    pct: float
    mean: Fraction
    stddev: Decimal
    samples: int = field(default=0)

#endregion
