from typing import \
    Dict, List, Tuple, \
    Union, Any

from os import PathLike

from dataclasses import dataclass

from decimal import Decimal, localcontext

from fractions import Fraction

import csv, json

from puflock._utils.json_encoder import JSONEncoder, render_decimal
from puflock._utils.json_decoder import JSONDecoder

from puflock.exceptions import ParseError, StorageError

from puflock.types import SweepRow, CloneRow, Summary, serializers

REPORT_VERSION = 1

STDDEV_KIND = "population"

_Path = Union[str, "PathLike[str]"]

def summarize(pct: float, accuracies: List[Fraction]) -> Summary:
    """
    Exact rational mean and population standard deviation (divide by N).
    """

    count = len(accuracies)

    mean = sum(accuracies, Fraction(0)) / count

    variance = sum(((accuracy - mean) ** 2 for accuracy in accuracies), Fraction(0)) / count

    with localcontext() as context:
        context.prec = 28

        stddev = (Decimal(variance.numerator) / Decimal(variance.denominator)).sqrt()

    return Summary(pct=pct, mean=mean, stddev=stddev, samples=count)

@dataclass(frozen=True)
class SweepReport:
    layer_id: int
    mode: str
    original_correct: int
    total: int
    random_baseline: float
    baseline_balanced: bool
    rows: Tuple[SweepRow, ...]

    @property
    def original_accuracy(self) -> Fraction:
        return Fraction(self.original_correct, self.total)

    def percentages(self) -> List[float]:
        return list(dict.fromkeys(row.pct for row in self.rows))

    def summaries(self) -> List[Summary]:
        groups: Dict[float, List[Fraction]] = { }

        for row in self.rows:
            groups.setdefault(row.pct, [ ]).append(row.accuracy)

        return [ summarize(pct, accuracies) for pct, accuracies in groups.items() ]

    def mean(self, pct: float) -> Fraction:
        return next(summary.mean for summary in self.summaries() if summary.pct == pct)

@dataclass(frozen=True)
class CloneReport:
    layer_id: int
    mode: str
    target_seed: int
    clone_seeds: Tuple[int, ...]
    original_correct: int
    total: int
    random_baseline: float
    baseline_balanced: bool
    rows: Tuple[CloneRow, ...]

    @property
    def original_accuracy(self) -> Fraction:
        return Fraction(self.original_correct, self.total)

    @property
    def conditions(self) -> List[str]:
        return [ "encrypted", "target" ] + \
            [ f"clone-{index + 1}" for index in range(len(self.clone_seeds)) ]

    def summaries(self) -> List[Tuple[str, Summary]]:
        groups: Dict[Tuple[float, str], List[Fraction]] = { }

        for row in self.rows:
            groups.setdefault((row.pct, row.condition), [ ]).append(row.accuracy)

        return [ (condition, summarize(pct, accuracies)) \
            for (pct, condition), accuracies in groups.items() ]

    def mean(self, condition: str, pct: float) -> Fraction:
        return next(summary.mean for name, summary in self.summaries() \
            if name == condition and summary.pct == pct)

def _render_pct(pct: float) -> str:
    return format(Decimal(repr(float(pct))), "f")

def _open_for_writing(path: _Path):
    try:
        return open(path, "w", encoding="utf-8", newline="")
    except OSError as error:
        raise StorageError(f"Cannot write report to <{path}>: {error}") from error

def report_csv(report: Union[SweepReport, CloneReport], path: _Path) -> None:
    """
    Data rows in (pct, trial) order followed by one summary row per percentage
    whose trial column reads "mean" and whose stddev column is the population
    standard deviation.
    """

    with _open_for_writing(path) as file:
        writer = csv.writer(file, lineterminator="\n")

        if isinstance(report, SweepReport):
            writer.writerow([ "pct", "trial", "accuracy", "stddev" ])

            for row in report.rows:
                writer.writerow([ _render_pct(row.pct), row.trial, render_decimal(row.accuracy), "" ])

            for summary in report.summaries():
                writer.writerow([ _render_pct(summary.pct), "mean",
                    render_decimal(summary.mean), render_decimal(summary.stddev) ])
        else:
            writer.writerow([ "pct", "condition", "trial", "accuracy", "stddev" ])

            for clone_row in report.rows:
                writer.writerow([ _render_pct(clone_row.pct), clone_row.condition, clone_row.trial,
                    render_decimal(clone_row.accuracy), "" ])

            for condition, summary in report.summaries():
                writer.writerow([ _render_pct(summary.pct), condition, "mean",
                    render_decimal(summary.mean), render_decimal(summary.stddev) ])

def _document(report: Union[SweepReport, CloneReport]) -> Dict[str, Any]:
    document: Dict[str, Any] = {
        "kind": "sweep" if isinstance(report, SweepReport) else "clone",
        "version": REPORT_VERSION,
        "stddev": STDDEV_KIND,
        "layer_id": report.layer_id,
        "mode": report.mode,
        "original_correct": report.original_correct,
        "total": report.total,
        "original_accuracy": report.original_accuracy,
        "random_baseline": report.random_baseline,
        "baseline_balanced": report.baseline_balanced
    }

    if isinstance(report, SweepReport):
        document["rows"] = [ serializers.SweepRow.unparse(row) for row in report.rows ]
    else:
        document["target_seed"] = report.target_seed
        document["clone_seeds"] = list(report.clone_seeds)
        document["rows"] = [ serializers.CloneRow.unparse(row) for row in report.rows ]

    document["summary"] = [
        { "pct": summary.pct, "mean": summary.mean, "stddev": summary.stddev } \
            for summary in (report.summaries() if isinstance(report, SweepReport) \
                else (summary for _, summary in report.summaries()))
    ]

    return document

def report_json(report: Union[SweepReport, CloneReport], path: _Path) -> None:
    with _open_for_writing(path) as file:
        file.write(json.dumps(_document(report), cls=JSONEncoder, indent=2) + "\n")

def parse_report(document: Dict[str, Any]) -> Union[SweepReport, CloneReport]:
    try:
        kind, version = document["kind"], document["version"]

        if version != REPORT_VERSION:
            raise ParseError(f"Unsupported report version <{version}>.")

        common = {
            "layer_id": int(document["layer_id"]),
            "mode": str(document["mode"]),
            "original_correct": int(document["original_correct"]),
            "total": int(document["total"]),
            "random_baseline": float(document["random_baseline"]),
            "baseline_balanced": bool(document["baseline_balanced"])
        }

        if kind == "sweep":
            return SweepReport(**common, rows=tuple(
                serializers.SweepRow.parse(*row) for row in document["rows"]))

        if kind == "clone":
            return CloneReport(**common,
                target_seed=int(document["target_seed"]),
                clone_seeds=tuple(int(seed) for seed in document["clone_seeds"]),
                rows=tuple(serializers.CloneRow.parse(*row) for row in document["rows"]))
    except (KeyError, TypeError, ValueError) as error:
        raise ParseError(f"Malformed report document: {error}") from error

    raise ParseError(f"Unknown report kind <{kind}>.")

def load_report_json(path: _Path) -> Union[SweepReport, CloneReport]:
    try:
        with open(path, "r", encoding="utf-8") as file:
            document = json.load(file, cls=JSONDecoder)
    except OSError as error:
        raise StorageError(f"Cannot read report from <{path}>: {error}") from error
    except json.JSONDecodeError as error:
        raise ParseError(f"<{path}> is not valid JSON: {error}", offset=error.pos) from error

    return parse_report(document)
