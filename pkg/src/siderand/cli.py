"""Command-line front end: collect -> analyze -> seed -> random.

Subcommands
    collect    write a timing series as CSV (one integer nanosecond per line)
    analyze    entropy report for a CSV series; exit 0 iff the floor is met
    seed       collect (or replay) a series and print a conditioned seed
    random     emit raw random bytes from a fresh or given seed
    calibrate  recommend the smallest sample count for a floor

Exit codes: 0 success, 1 entropy floor unmet (or degenerate input),
2 unusable clock, 64 usage error, 65 unreadable input data.

CSV files carry one decimal integer per line, no header.  The writer emits
LF line endings; the reader also accepts CRLF.  Reports go to stdout,
diagnostics to stderr.  Setting SIDERAND_BOOST_PRIORITY=1 in the environment
requests a priority boost, same as --boost-priority.
"""

from __future__ import annotations

import argparse
import io
import os
import sys
import time
from typing import Sequence, TextIO

from .analysis import (
    DEFAULT_FLOOR_BITS,
    build_report,
    calibrate_samples,
    frequency_distribution,
    min_entropy_estimate,
    render_report,
    report_json_line,
)
from .collector import CollectorConfig, TimerKind, TimingSeries, collect, timer_label
from .conditioning import Seed256, condition
from .errors import ClockUnavailable, CoarseTimer, DegenerateDistribution, SideRandError
from .generator import new_stream

__all__ = ["main", "entrypoint", "read_timing_csv", "write_timing_csv", "CsvFormatError"]

EX_FLOOR = 1
EX_CLOCK = 2
EX_USAGE = 64
EX_DATAERR = 65

BOOST_ENV_VAR = "SIDERAND_BOOST_PRIORITY"


class CsvFormatError(SideRandError):
    """A timing CSV that cannot be parsed; the message names the line."""


def write_timing_csv(series: Sequence[int], stream: TextIO) -> None:
    """One decimal duration per line, LF-terminated, collection order."""
    stream.write("\n".join(str(int(d)) for d in series))
    stream.write("\n")


def read_timing_csv(stream: TextIO) -> list[int]:
    """Parse a timing CSV; accepts LF and CRLF line endings.

    Every line must be plain ASCII digits.  Raises CsvFormatError naming the
    first offending line, or for an empty file.
    """
    lines = stream.read().split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    durations: list[int] = []
    for number, line in enumerate(lines, start=1):
        if line.endswith("\r"):
            line = line[:-1]
        if not line or not (line.isascii() and line.isdigit()):
            raise CsvFormatError(f"line {number}: expected an unsigned integer, got {line!r}")
        durations.append(int(line))
    if not durations:
        raise CsvFormatError("empty file: no timing samples")
    return durations


# --- argument plumbing -------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    # usage errors exit 64, not argparse's default 2
    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(EX_USAGE, f"{self.prog}: error: {message}\n")


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {text}")
    return value


def _nonnegative_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {text}")
    return value


def _nonnegative_float(text: str) -> float:
    value = float(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {text}")
    return value


def _seed_hex(text: str) -> Seed256:
    try:
        raw = bytes.fromhex(text)
    except ValueError:
        raise argparse.ArgumentTypeError("seed must be hexadecimal") from None
    if len(raw) != 32:
        raise argparse.ArgumentTypeError("seed must be exactly 64 hex characters")
    return Seed256(raw)


def _boost_default() -> bool:
    return os.environ.get(BOOST_ENV_VAR, "").strip() in ("1", "true", "yes", "on")


def _collector_flags() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--samples", type=_positive_int, default=256,
                        help="timing measurements to take (default 256)")
    parent.add_argument("--scale", type=_positive_int, default=5_000_000,
                        help="workload iterations per measurement (default 5000000)")
    parent.add_argument("--timer", choices=("ns", "us"), default="ns",
                        help="measurement clock: nanosecond or microsecond (default ns)")
    parent.add_argument("--boost-priority", action="store_true", default=_boost_default(),
                        help="raise scheduling priority to the platform maximum first")
    return parent


def build_parser() -> _Parser:
    parser = _Parser(prog="siderand", description="CPU timing-variance entropy toolkit")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    collector = _collector_flags()

    p = sub.add_parser("collect", parents=[collector],
                       help="collect a timing series and write it as CSV")
    p.add_argument("--out", metavar="PATH", help="output file (default stdout)")
    p.set_defaults(func=cmd_collect)

    p = sub.add_parser("analyze", help="entropy report for a timing CSV")
    p.add_argument("--in", dest="infile", metavar="PATH", required=True, help="timing CSV to analyze")
    p.add_argument("--floor", type=_nonnegative_float, default=DEFAULT_FLOOR_BITS,
                   help="entropy floor in bits (default 256)")
    p.add_argument("--label", default="unlabeled", help="CPU label for the report")
    p.add_argument("--json", action="store_true", help="also print a machine-readable line")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("seed", parents=[collector],
                       help="collect, gate on the entropy floor, print a 256-bit seed as hex")
    p.add_argument("--floor", type=_nonnegative_float, default=DEFAULT_FLOOR_BITS,
                   help="entropy floor in bits (default 256)")
    p.add_argument("--force", action="store_true", help="emit the seed even if the floor is unmet")
    p.add_argument("--from-csv", dest="from_csv", metavar="PATH",
                   help="condition a previously collected CSV instead of collecting")
    p.set_defaults(func=cmd_seed)

    p = sub.add_parser("random", parents=[collector],
                       help="emit raw random bytes from a fresh or given seed")
    p.add_argument("--bytes", dest="nbytes", type=_nonnegative_int, required=True,
                   help="number of bytes to emit")
    p.add_argument("--seed-hex", dest="seed", type=_seed_hex,
                   help="use this 64-hex-character seed instead of collecting")
    p.set_defaults(func=cmd_random)

    p = sub.add_parser("calibrate", parents=[collector],
                       help="recommend the smallest sample count for an entropy floor")
    p.add_argument("--in", dest="infile", metavar="PATH",
                   help="measure the MFV from this CSV instead of collecting")
    p.add_argument("--floor", type=_nonnegative_float, default=DEFAULT_FLOOR_BITS,
                   help="entropy floor in bits (default 256)")
    p.set_defaults(func=cmd_calibrate)

    return parser


def _config_from(args: argparse.Namespace) -> CollectorConfig:
    return CollectorConfig(
        samples=args.samples,
        scale=args.scale,
        timer=TimerKind(args.timer),
        boost_priority=args.boost_priority,
    )


def _collect_timed(args: argparse.Namespace) -> tuple[TimingSeries, float]:
    start = time.perf_counter()
    series = collect(_config_from(args))
    return series, time.perf_counter() - start


def _read_csv_series(path: str) -> TimingSeries:
    with open(path, "r", encoding="ascii", newline="") as f:
        return TimingSeries(tuple(read_timing_csv(f)))


# --- subcommands -------------------------------------------------------------


def cmd_collect(args: argparse.Namespace) -> int:
    try:
        series, elapsed = _collect_timed(args)
    except (ClockUnavailable, CoarseTimer) as exc:
        print(f"siderand: {exc}", file=sys.stderr)
        return EX_CLOCK

    if args.out:
        with open(args.out, "w", encoding="ascii", newline="") as f:
            write_timing_csv(series, f)
    else:
        write_timing_csv(series, sys.stdout)

    estimate = min_entropy_estimate(frequency_distribution(series))
    print(
        f"collected {len(series)} samples in {elapsed:.2f} s "
        f"({timer_label(series.config.timer)} timer, resolution {series.timer_resolution_ns} ns); "
        f"min-entropy estimate {estimate.total_bits:.2f} bits "
        f"({estimate.unique_values} unique values)",
        file=sys.stderr,
    )
    for note in series.notes:
        print(f"note: {note}", file=sys.stderr)
    return 0


def cmd_analyze(args: argparse.Namespace) -> int:
    try:
        series = _read_csv_series(args.infile)
    except CsvFormatError as exc:
        print(f"siderand: {args.infile}: {exc}", file=sys.stderr)
        return EX_DATAERR

    estimate = min_entropy_estimate(frequency_distribution(series))
    report = build_report(series, estimate, None, args.label, floor_bits=args.floor)
    print(render_report(report))
    if args.json:
        print(report_json_line(report))
    return 0 if report.meets_floor else EX_FLOOR


def cmd_seed(args: argparse.Namespace) -> int:
    if args.from_csv:
        try:
            series = _read_csv_series(args.from_csv)
        except CsvFormatError as exc:
            print(f"siderand: {args.from_csv}: {exc}", file=sys.stderr)
            return EX_DATAERR
    else:
        try:
            series, _ = _collect_timed(args)
        except (ClockUnavailable, CoarseTimer) as exc:
            print(f"siderand: {exc}", file=sys.stderr)
            return EX_CLOCK

    estimate = min_entropy_estimate(frequency_distribution(series))
    if estimate.total_bits < args.floor and not args.force:
        print(
            f"siderand: refusing to emit a seed: estimated {estimate.total_bits:.2f} bits "
            f"of entropy is below the {args.floor:g}-bit floor (use --force to override)",
            file=sys.stderr,
        )
        return EX_FLOOR

    print(condition(series).hex())
    print(
        f"seed conditioned from {len(series)} samples, "
        f"estimated {estimate.total_bits:.2f} bits of entropy",
        file=sys.stderr,
    )
    return 0


def cmd_random(args: argparse.Namespace) -> int:
    if args.seed is not None:
        seed = args.seed
    else:
        try:
            series, _ = _collect_timed(args)
        except (ClockUnavailable, CoarseTimer) as exc:
            print(f"siderand: {exc}", file=sys.stderr)
            return EX_CLOCK
        estimate = min_entropy_estimate(frequency_distribution(series))
        print(
            f"seeded from a fresh collection: estimated {estimate.total_bits:.2f} bits of entropy",
            file=sys.stderr,
        )
        seed = condition(series)

    data = new_stream(seed).fill(args.nbytes)
    out = sys.stdout.buffer if hasattr(sys.stdout, "buffer") else sys.stdout
    out.write(data)
    out.flush()
    return 0


def cmd_calibrate(args: argparse.Namespace) -> int:
    if args.infile:
        try:
            series = _read_csv_series(args.infile)
        except CsvFormatError as exc:
            print(f"siderand: {args.infile}: {exc}", file=sys.stderr)
            return EX_DATAERR
    else:
        try:
            series, _ = _collect_timed(args)
        except (ClockUnavailable, CoarseTimer) as exc:
            print(f"siderand: {exc}", file=sys.stderr)
            return EX_CLOCK

    estimate = min_entropy_estimate(frequency_distribution(series))
    try:
        recommended = calibrate_samples(estimate.mfv_fraction, args.floor)
    except DegenerateDistribution as exc:
        print(f"siderand: {exc}", file=sys.stderr)
        return EX_FLOOR

    print(f"measured MFV: {estimate.mfv_fraction * 100.0:.5f}% over {estimate.sample_count} samples")
    print(f"recommended samples: {recommended}")
    return 0


def main(argv: Sequence[str] | None = None) -> int:
    """Parse arguments and run one subcommand; returns the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits for usage errors and --help
        code = exc.code
        return code if isinstance(code, int) else 0
    return args.func(args)


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
