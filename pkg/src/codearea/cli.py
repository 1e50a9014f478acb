"""Command-line entry point.

Exit codes: 0 on success, 1 when any input file fails to analyze,
2 on configuration or usage errors, 3 when ``--gate`` is passed and the
75% baseline threshold is not met.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from fractions import Fraction

from .analysis import analyze
from .config import REPORT_FORMATS, Config, load_config
from .errors import CodeAreaError
from .frontend import StatementKind
from .metrics import PerSegmentAverage, QualityAttributes, TotalSeconds
from .report import emit_report

EXIT_OK = 0
EXIT_FILE_ERROR = 1
EXIT_CONFIG_ERROR = 2
EXIT_GATE_FAILED = 3


def build_arg_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="codearea",
        description=(
            "Compute impact-weighted code metrics for C-like source files. "
            "Pass '-' to read a single file from standard input."
        ),
    )
    parser.add_argument("paths", nargs="*", help="source files to analyze")
    parser.add_argument("--config", metavar="PATH", help="configuration file")
    timing = parser.add_mutually_exclusive_group()
    timing.add_argument(
        "--exec-time", metavar="SECONDS", help="total execution time in seconds"
    )
    timing.add_argument(
        "--exec-time-avg",
        metavar="SECONDS",
        help="average execution time per segment, in seconds",
    )
    parser.add_argument(
        "--qr",
        metavar="S,E,U,O,P",
        help="five quality attribute scores (each 0, 1, or 2)",
    )
    parser.add_argument(
        "--format", choices=REPORT_FORMATS, help="report format (default: text)"
    )
    parser.add_argument(
        "--segments",
        metavar="SIDECAR",
        help="segmentation override file (single input only)",
    )
    parser.add_argument(
        "--weights-dump",
        action="store_true",
        help="print the effective weight table and exit",
    )
    parser.add_argument(
        "--gate",
        action="store_true",
        help="exit with status 3 when the 75%% baseline threshold is not met",
    )
    return parser


def _parse_qr_flag(value: str) -> QualityAttributes:
    parts = value.split(",")
    if len(parts) != 5:
        raise CodeAreaError(f"--qr expects five comma-separated scores, got {value!r}")
    try:
        scores = [int(p.strip()) for p in parts]
    except ValueError:
        raise CodeAreaError(f"--qr scores must be integers, got {value!r}") from None
    return QualityAttributes(*scores)


def _parse_seconds(value: str, flag: str) -> Fraction:
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError):
        raise CodeAreaError(f"{flag} expects a number, got {value!r}") from None


def _apply_flags(config: Config, args: argparse.Namespace) -> Config:
    if args.exec_time is not None:
        config = replace(
            config,
            exec_time=TotalSeconds(_parse_seconds(args.exec_time, "--exec-time")),
        )
    if args.exec_time_avg is not None:
        config = replace(
            config,
            exec_time=PerSegmentAverage(
                _parse_seconds(args.exec_time_avg, "--exec-time-avg")
            ),
        )
    if args.qr is not None:
        config = replace(config, qr=_parse_qr_flag(args.qr))
    if args.format is not None:
        config = replace(config, report_format=args.format)
    return config


def _dump_weights(config: Config) -> None:
    for kind in StatementKind:
        weight = config.weights.weight(kind)
        print(f"{kind.value} = {weight.numerator / weight.denominator}")
    state = "on" if config.weights.exception_multiplier_enabled else "off"
    print(f"exception_multiplier = {state}")


def main(argv: list[str] | None = None) -> int:
    parser = build_arg_parser()
    args = parser.parse_args(argv)
    try:
        config = load_config(args.config)
        config = _apply_flags(config, args)
        if args.segments is not None and len(args.paths) != 1:
            raise CodeAreaError("--segments requires exactly one input file")
    except CodeAreaError as exc:
        print(f"codearea: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG_ERROR

    if args.weights_dump:
        _dump_weights(config)
        return EXIT_OK

    try:
        report = analyze(args.paths, config, sidecar_path=args.segments)
    except CodeAreaError as exc:
        # Aggregate-level failures (e.g. per-segment timing with an empty
        # corpus) are configuration/input mismatches.
        print(f"codearea: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG_ERROR

    sys.stdout.buffer.write(emit_report(report, config.report_format))
    sys.stdout.buffer.flush()

    if report.failed_files:
        return EXIT_FILE_ERROR
    if args.gate and not report.meets_threshold:
        return EXIT_GATE_FAILED
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
