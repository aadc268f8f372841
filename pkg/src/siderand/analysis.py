"""Frequency distributions and the MFV min-entropy model.

The entropy bound is deliberately conservative.  If the most frequent value
(MFV) of a timing series occupies fraction ``p`` of the samples, then every
value occurs with probability at most ``p``, so the source guarantees at
least ``1/p`` states of equal probability:

    states          = 1 / mfv_fraction
    bits_per_sample = log2(states)
    total_bits      = bits_per_sample * sample_count

All computation uses exact integer counts; percentages exist only in
rendered output.  Rounding an MFV to a few decimals and recomputing, as a
spreadsheet would, visibly drifts the bit totals.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Sequence

from .collector import TimerKind, TimingSeries, timer_label
from .errors import DegenerateDistribution, EmptySeries

__all__ = [
    "FrequencyTable",
    "EntropyEstimate",
    "RunReport",
    "frequency_distribution",
    "min_entropy_estimate",
    "bits_from_mfv",
    "meets_entropy_floor",
    "build_report",
    "render_report",
    "report_json_line",
    "calibrate_samples",
    "DEFAULT_FLOOR_BITS",
    "CALIBRATION_SAFETY_MARGIN",
]

#: Entropy a seed must reach to be considered cryptographically usable.
DEFAULT_FLOOR_BITS = 256.0

#: Calibration doubles the floor to absorb run-to-run MFV drift.
CALIBRATION_SAFETY_MARGIN = 2.0


@dataclass(frozen=True)
class FrequencyTable:
    """Exact occurrence counts of each distinct duration, keyed ascending."""

    counts: dict[int, int]
    total: int

    def __post_init__(self) -> None:
        if not self.counts:
            raise ValueError("a frequency table needs at least one entry")
        if any(c < 1 for c in self.counts.values()):
            raise ValueError("every count must be >= 1")
        if sum(self.counts.values()) != self.total:
            raise ValueError("counts do not sum to total")
        # canonical iteration order: ascending duration
        object.__setattr__(self, "counts", dict(sorted(self.counts.items())))


@dataclass(frozen=True)
class EntropyEstimate:
    """Conservative min-entropy estimate of one timing series."""

    mfv_fraction: float
    states: float
    bits_per_sample: float
    total_bits: float
    sample_count: int
    unique_values: int


@dataclass(frozen=True)
class RunReport:
    """One benchmark-table row: a run's identity plus its entropy verdict."""

    cpu_label: str
    timer: TimerKind | None
    mfv_percent: float
    total_bits: float
    avg_run_seconds: float | None
    unique_values: int
    meets_floor: bool
    notes: tuple[str, ...] = field(default=())


def frequency_distribution(series: Sequence[int]) -> FrequencyTable:
    """Tabulate how often each distinct duration appears.

    Accepts a TimingSeries or any sequence of integer nanosecond durations.
    Counts are exact; the table iterates in ascending duration order.
    """
    durations = list(series)
    if not durations:
        raise EmptySeries("cannot tabulate an empty series")
    counts: dict[int, int] = {}
    for d in durations:
        counts[d] = counts.get(d, 0) + 1
    return FrequencyTable(counts=counts, total=len(durations))


def bits_from_mfv(mfv_fraction: float) -> float:
    """Per-sample min-entropy implied by an MFV fraction: log2(1/mfv)."""
    if not 0.0 < mfv_fraction <= 1.0:
        raise ValueError(f"mfv_fraction must be in (0, 1], got {mfv_fraction}")
    return math.log2(1.0 / mfv_fraction)


def min_entropy_estimate(table: FrequencyTable) -> EntropyEstimate:
    """Estimate min-entropy from exact counts.

    ``states`` is computed as ``total / max_count``, the reciprocal of the
    MFV fraction taken directly over the integers, so no intermediate
    rounding leaks into the bit totals.  Ties for the most frequent value do
    not change the estimate; only the largest probability matters.
    """
    max_count = max(table.counts.values())
    mfv_fraction = max_count / table.total
    states = table.total / max_count
    bits_per_sample = math.log2(states)
    total_bits = bits_per_sample * table.total
    return EntropyEstimate(
        mfv_fraction=mfv_fraction,
        states=states,
        bits_per_sample=bits_per_sample,
        total_bits=total_bits,
        sample_count=table.total,
        unique_values=len(table.counts),
    )


def meets_entropy_floor(estimate: EntropyEstimate, floor_bits: float = DEFAULT_FLOOR_BITS) -> bool:
    """True iff the estimated total entropy reaches the floor (inclusive)."""
    if floor_bits < 0:
        raise ValueError(f"floor_bits must be >= 0, got {floor_bits}")
    return estimate.total_bits >= floor_bits


def build_report(
    series: TimingSeries | Sequence[int],
    estimate: EntropyEstimate,
    elapsed_seconds: float | None,
    cpu_label: str,
    floor_bits: float = DEFAULT_FLOOR_BITS,
) -> RunReport:
    """Assemble a report row from a series and its entropy estimate.

    ``elapsed_seconds`` is the wall time of the collection run, or None for
    series replayed from a file.  mfv_percent is stored at full precision;
    rounding happens only in rendering.
    """
    if estimate.sample_count != len(series):
        raise ValueError("estimate was not derived from this series")
    timer = None
    notes: tuple[str, ...] = ()
    if isinstance(series, TimingSeries):
        notes = series.notes
        if series.config is not None:
            timer = series.config.timer
    return RunReport(
        cpu_label=cpu_label,
        timer=timer,
        mfv_percent=estimate.mfv_fraction * 100.0,
        total_bits=estimate.total_bits,
        avg_run_seconds=elapsed_seconds,
        unique_values=estimate.unique_values,
        meets_floor=meets_entropy_floor(estimate, floor_bits),
        notes=notes,
    )


def render_report(report: RunReport) -> str:
    """Plain-text single-row benchmark table.

    MFV prints at 5 decimal places and entropy at 2, the precision the
    reference measurements are reported at.
    """
    headers = ("CPU", "Timer", "MFV", "Entropy (bits)", "Avg Time (s)", "Unique", "Floor")
    row = (
        report.cpu_label,
        timer_label(report.timer),
        f"{report.mfv_percent:.5f}%",
        f"{report.total_bits:,.2f}",
        "-" if report.avg_run_seconds is None else f"{report.avg_run_seconds:.2f}",
        str(report.unique_values),
        "met" if report.meets_floor else "NOT MET",
    )
    widths = [max(len(h), len(v)) for h, v in zip(headers, row)]
    lines = [
        "  ".join(h.ljust(w) for h, w in zip(headers, widths)).rstrip(),
        "  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip(),
    ]
    for note in report.notes:
        lines.append(f"note: {note}")
    return "\n".join(lines)


def report_json_line(report: RunReport) -> str:
    """Machine-readable one-line record of a report."""
    return json.dumps(
        {
            "label": report.cpu_label,
            "timer": None if report.timer is None else report.timer.value,
            "mfv_percent": report.mfv_percent,
            "entropy_bits": report.total_bits,
            "avg_seconds": report.avg_run_seconds,
            "unique_values": report.unique_values,
            "meets_floor": report.meets_floor,
        },
        separators=(", ", ": "),
    )


def calibrate_samples(
    observed_mfv_fraction: float,
    floor_bits: float = DEFAULT_FLOOR_BITS,
    safety_margin: float = CALIBRATION_SAFETY_MARGIN,
) -> int:
    """Smallest sample count that still clears the entropy floor.

    Returns the least n with ``n * log2(1/mfv) >= floor_bits * safety_margin``.
    The margin doubles the floor by default so that run-to-run MFV drift on
    the same machine does not eat the guarantee.  A floor of 0 still returns
    1: a series needs at least one sample.
    """
    if observed_mfv_fraction >= 1.0:
        raise DegenerateDistribution(
            "every sample has the same value; no entropy to tune against"
        )
    if observed_mfv_fraction <= 0.0:
        raise ValueError(f"mfv_fraction must be positive, got {observed_mfv_fraction}")
    if floor_bits < 0:
        raise ValueError(f"floor_bits must be >= 0, got {floor_bits}")
    per_sample = bits_from_mfv(observed_mfv_fraction)
    target = floor_bits * safety_margin
    n = max(1, math.ceil(target / per_sample))
    # guard the ceil against float edges: n must be the smallest qualifying value
    while n > 1 and (n - 1) * per_sample >= target:
        n -= 1
    while n * per_sample < target:
        n += 1
    return n
