"""siderand: secure random seeds from CPU timing variance.

The pipeline has four independent, individually auditable stages:

1. collect  - time a trivial fixed workload many times at high resolution;
              the ordered runtimes are the raw entropy
2. analyze  - bound the collected min-entropy from the most frequent value
              of the exact timing distribution
3. condition - compress the series into a 256-bit seed with SHA-256
4. generate - expand the seed into an unlimited deterministic stream
              (AES-256-CTR with fast key erasure)

Composition lives in the command line tool (``siderand``); the library keeps
the stages separate.
"""

from .analysis import (
    CALIBRATION_SAFETY_MARGIN,
    DEFAULT_FLOOR_BITS,
    EntropyEstimate,
    FrequencyTable,
    RunReport,
    bits_from_mfv,
    build_report,
    calibrate_samples,
    frequency_distribution,
    meets_entropy_floor,
    min_entropy_estimate,
    render_report,
    report_json_line,
)
from .collector import (
    CollectorConfig,
    TimerKind,
    TimingSeries,
    collect,
    detect_timer_resolution,
)
from .conditioning import SERIES_TAG, Seed256, condition, serialize_series
from .errors import (
    ClockUnavailable,
    CoarseTimer,
    DegenerateDistribution,
    EmptySeries,
    PriorityDenied,
    SideRandError,
)
from .generator import REKEY_INTERVAL_BYTES, StreamState, new_stream

__version__ = "0.1.0"

__all__ = [
    "CALIBRATION_SAFETY_MARGIN",
    "DEFAULT_FLOOR_BITS",
    "REKEY_INTERVAL_BYTES",
    "SERIES_TAG",
    "ClockUnavailable",
    "CoarseTimer",
    "CollectorConfig",
    "DegenerateDistribution",
    "EmptySeries",
    "EntropyEstimate",
    "FrequencyTable",
    "PriorityDenied",
    "RunReport",
    "Seed256",
    "SideRandError",
    "StreamState",
    "TimerKind",
    "TimingSeries",
    "bits_from_mfv",
    "build_report",
    "calibrate_samples",
    "collect",
    "condition",
    "detect_timer_resolution",
    "frequency_distribution",
    "meets_entropy_floor",
    "min_entropy_estimate",
    "new_stream",
    "render_report",
    "report_json_line",
    "serialize_series",
    "__version__",
]
