"""Timing-variance entropy collector.

The raw entropy source is the run-to-run variability of a trivial, fixed CPU
workload: a tight loop that adds two constant integers ``scale`` times.  Each
loop execution is timed with a high-resolution process-CPU clock, and the
ordered sequence of runtimes is the collected entropy.  No two executions of
the same loop take exactly the same time when measured finely enough; the
jitter comes from physical, per-specimen CPU behavior (cache placement,
dynamic frequency scaling, transistor-level variation), not from an algorithm.

Two clocks are supported:

* nanosecond process-CPU time (``CLOCK_PROCESS_CPUTIME_ID``), and
* a microsecond process clock in the style of C ``clock()``, whose readings
  are quantized to whole microseconds and stored as nanoseconds (x1000).

Platforms whose clocks are coarser than the per-timer floor are rejected
outright rather than allowed to produce low-variance series.
"""

from __future__ import annotations

import enum
import itertools
import os
import threading
import time
import warnings
from dataclasses import dataclass, field
from typing import Callable, Iterator

from .errors import ClockUnavailable, CoarseTimer, PriorityDenied

__all__ = [
    "TimerKind",
    "CollectorConfig",
    "TimingSeries",
    "detect_timer_resolution",
    "collect",
]

RESOLUTION_PROBES = 10_000


class TimerKind(enum.Enum):
    """Measurement clock selection."""

    PROCESS_CPU_NANOSECONDS = "ns"
    WALL_MICROSECONDS = "us"


#: Coarsest acceptable measured resolution per timer, in nanoseconds.
RESOLUTION_CAP_NS = {
    TimerKind.PROCESS_CPU_NANOSECONDS: 1_000,
    TimerKind.WALL_MICROSECONDS: 1_000_000,
}


@dataclass(frozen=True)
class CollectorConfig:
    """Parameters of one collection run.

    The defaults reproduce the reference workload: 256 measurements of a
    5,000,000-iteration addition loop over two fixed operands.
    """

    samples: int = 256
    scale: int = 5_000_000
    timer: TimerKind = TimerKind.PROCESS_CPU_NANOSECONDS
    boost_priority: bool = False
    operand_a: int = 2585566630
    operand_b: int = 576722363

    def __post_init__(self) -> None:
        if self.samples < 1:
            raise ValueError(f"samples must be >= 1, got {self.samples}")
        if self.scale < 1:
            raise ValueError(f"scale must be >= 1, got {self.scale}")
        if self.operand_a < 0 or self.operand_b < 0:
            raise ValueError("workload operands must be unsigned integers")
        if not isinstance(self.timer, TimerKind):
            raise TypeError(f"timer must be a TimerKind, got {self.timer!r}")


@dataclass(frozen=True)
class TimingSeries:
    """Ordered per-iteration workload runtimes, in nanoseconds.

    Collection order is preserved end to end and must never be sorted: the
    sequence order is part of the entropy.  ``config`` and
    ``timer_resolution_ns`` are ``None`` for series replayed from a file
    rather than collected live.  ``notes`` records protocol deviations
    (denied priority boost, concurrent collections) for reporting.

    A series behaves as an immutable sequence of integer durations.
    """

    samples: tuple[int, ...]
    config: CollectorConfig | None = None
    timer_resolution_ns: int | None = None
    notes: tuple[str, ...] = field(default=())

    def __post_init__(self) -> None:
        object.__setattr__(self, "samples", tuple(self.samples))
        object.__setattr__(self, "notes", tuple(self.notes))
        for d in self.samples:
            if not isinstance(d, int) or d < 0:
                raise ValueError(f"durations must be non-negative integers, got {d!r}")
        if self.config is not None and len(self.samples) != self.config.samples:
            raise ValueError(
                f"series length {len(self.samples)} != config.samples {self.config.samples}"
            )

    def __len__(self) -> int:
        return len(self.samples)

    def __iter__(self) -> Iterator[int]:
        return iter(self.samples)

    def __getitem__(self, index):
        return self.samples[index]


# --- clock readers ----------------------------------------------------------
# Every reader returns an integer nanosecond value; the microsecond reader
# quantizes to whole microseconds at capture so durations land on 1000 ns
# steps, exactly as a clock() based measurement would.


def _read_process_cpu_ns() -> int:
    return time.clock_gettime_ns(time.CLOCK_PROCESS_CPUTIME_ID)


def _read_process_cpu_us_as_ns() -> int:
    return (time.process_time_ns() // 1_000) * 1_000


_READERS: dict[TimerKind, Callable[[], int]] = {
    TimerKind.PROCESS_CPU_NANOSECONDS: _read_process_cpu_ns,
    TimerKind.WALL_MICROSECONDS: _read_process_cpu_us_as_ns,
}


def _reader_for(timer: TimerKind) -> Callable[[], int]:
    reader = _READERS[timer]
    try:
        reader()
    except (AttributeError, OSError) as exc:
        raise ClockUnavailable(f"clock for {timer.value!r} timer is unavailable: {exc}") from exc
    return reader


def detect_timer_resolution(timer: TimerKind, probes: int = RESOLUTION_PROBES) -> int:
    """Measure the granularity of a timer, in nanoseconds.

    Takes ``probes`` consecutive readings and returns the smallest nonzero
    difference observed.  The procedure is deterministic; the result is a
    property of the running platform.

    Raises ClockUnavailable if the platform lacks the clock, and CoarseTimer
    if every probe returned the same value (resolution unmeasurable at this
    probe scale).
    """
    read = _reader_for(timer)
    best: int | None = None
    prev = read()
    for _ in range(probes):
        cur = read()
        delta = cur - prev
        if delta > 0 and (best is None or delta < best):
            best = delta
        prev = cur
    if best is None:
        raise CoarseTimer(
            f"{timer.value!r} timer returned identical readings across {probes} probes"
        )
    return best


# --- workload ---------------------------------------------------------------

_sink = 0


def _drain(value: int) -> None:
    # Opaque sink: the workload result stays observable, so no execution
    # layer may treat the loop as dead code.
    global _sink
    _sink = (_sink ^ value) & 0xFFFFFFFFFFFFFFFF


def _run_workload(scale: int, a: int, b: int) -> int:
    total = 0
    for _ in range(scale):
        total = a + b
    return total


# --- priority and concurrency bookkeeping -----------------------------------


def _raise_priority() -> tuple[Callable[[], None] | None, str | None]:
    """Try to move the process to maximum scheduling priority (niceness -20).

    Returns (restore_callable, note).  Denial is a warning, not an error:
    unprivileged collection is still meaningful, it just deviates from the
    measurement protocol and must be recorded.
    """
    try:
        previous = os.getpriority(os.PRIO_PROCESS, 0)
        os.setpriority(os.PRIO_PROCESS, 0, -20)
    except (AttributeError, OSError) as exc:
        warnings.warn(f"priority boost denied: {exc}", PriorityDenied, stacklevel=3)
        return None, "priority boost requested but denied"

    def restore() -> None:
        try:
            os.setpriority(os.PRIO_PROCESS, 0, previous)
        except OSError:
            pass

    return restore, None


_collect_lock = threading.Lock()
_collect_ids = itertools.count(1)
_active_collects: set[int] = set()
_overlapped_collects: set[int] = set()


def _enter_collect() -> int:
    with _collect_lock:
        token = next(_collect_ids)
        if _active_collects:
            _overlapped_collects.update(_active_collects)
            _overlapped_collects.add(token)
        _active_collects.add(token)
        return token


def _exit_collect(token: int) -> bool:
    with _collect_lock:
        _active_collects.discard(token)
        overlapped = token in _overlapped_collects
        _overlapped_collects.discard(token)
        return overlapped


# --- collection -------------------------------------------------------------


def collect(config: CollectorConfig | None = None) -> TimingSeries:
    """Run the timed workload loop and return the ordered series of runtimes.

    Each of ``config.samples`` measurements times ``config.scale`` iterations
    of the fixed addition ``operand_a + operand_b`` with the selected clock.
    The measurement loop runs on the calling thread from start to finish;
    callers must not schedule heavy work on it concurrently.

    Raises ClockUnavailable or CoarseTimer when the platform cannot provide
    the required timer resolution (at most 1 us for the nanosecond timer,
    1 ms for the microsecond timer).  A denied priority boost only warns
    (PriorityDenied) and is recorded in the series notes.
    """
    if config is None:
        config = CollectorConfig()

    read = _reader_for(config.timer)
    resolution = detect_timer_resolution(config.timer)
    cap = RESOLUTION_CAP_NS[config.timer]
    if resolution > cap:
        raise CoarseTimer(
            f"measured {timer_label(config.timer)} resolution {resolution} ns exceeds "
            f"the {cap} ns floor; this platform cannot feed the collector"
        )

    notes: list[str] = []
    restore = None
    if config.boost_priority:
        restore, denied_note = _raise_priority()
        if denied_note:
            notes.append(denied_note)

    token = _enter_collect()
    durations: list[int] = []
    scale, a, b = config.scale, config.operand_a, config.operand_b
    try:
        for _ in range(config.samples):
            t_start = read()
            total = _run_workload(scale, a, b)
            t_end = read()
            _drain(total)
            durations.append(t_end - t_start)
    finally:
        overlapped = _exit_collect(token)
        if restore is not None:
            restore()

    if overlapped:
        notes.append("concurrent collection in this process (protocol deviation)")

    return TimingSeries(
        samples=tuple(durations),
        config=config,
        timer_resolution_ns=resolution,
        notes=tuple(notes),
    )


def timer_label(timer: TimerKind | None) -> str:
    """Human-readable timer name, as used in reports."""
    if timer is None:
        return "unknown"
    return {
        TimerKind.PROCESS_CPU_NANOSECONDS: "nanosecond",
        TimerKind.WALL_MICROSECONDS: "microsecond",
    }[timer]
