"""Shared fixtures: clock doubles for driving the collector deterministically.

The production timers are process-CPU clocks.  Sandboxed or virtualized
kernels quantize those to scheduler ticks (tens of milliseconds), which the
collector rightly refuses, so most collector tests route the timers to wall
clocks instead: same measurement path, genuine jitter, fine resolution.
Tests that need the real clocks check the measured resolution first and
skip when the host cannot provide them.
"""

from __future__ import annotations

import time

import pytest

from siderand import TimerKind, detect_timer_resolution
from siderand import collector
from siderand.errors import SideRandError


def wall_ns_reader() -> int:
    return time.perf_counter_ns()


def wall_us_reader() -> int:
    return (time.perf_counter_ns() // 1_000) * 1_000


@pytest.fixture
def fine_clock(monkeypatch):
    """Route both collector timers to jittery wall clocks."""
    monkeypatch.setitem(collector._READERS, TimerKind.PROCESS_CPU_NANOSECONDS, wall_ns_reader)
    monkeypatch.setitem(collector._READERS, TimerKind.WALL_MICROSECONDS, wall_us_reader)


class ScriptedClock:
    """Clock double replaying a fixed sequence of absolute readings."""

    def __init__(self, readings):
        self._iter = iter(readings)

    def __call__(self) -> int:
        return next(self._iter)


def measured_ns_resolution() -> int | None:
    """Resolution of the real nanosecond process-CPU clock, or None."""
    try:
        return detect_timer_resolution(TimerKind.PROCESS_CPU_NANOSECONDS)
    except SideRandError:
        return None
