"""Configuration loading and validation.

The configuration file is an INI-style UTF-8 document with four flat
sections, all optional::

    [weights]
    comment = 0.5
    header_include = 0.7
    declaration = 0.1
    init_termination = 0.2
    simple_assignment = 0.3
    complex_assignment = 0.5
    expression = 0.8
    function_call = 0.8
    return = 0.8

    [qr]
    security = 1
    execution_time = 2
    user_friendliness = 0
    other_metrics = 1
    environment_selection = 2

    [rubric]
    segment_flow = 2
    oo_reuse = 1
    commenting = 1
    error_controls = 2
    security_customization = 1

    [analysis]
    default_iterations = 1
    flow_exit_limit = 2
    flow_penalty = 1.0
    exec_time = 88          ; or exec_time_avg = 2.5 (not both)
    exception_multiplier = on
    report_format = text    ; or json
    init_termination_calls = open, close, fopen, fclose, malloc, calloc, realloc, free

Unspecified keys take the defaults above; unknown sections or keys are
errors.
"""

from __future__ import annotations

import configparser
from dataclasses import dataclass, field, replace
from fractions import Fraction
from pathlib import Path

from .classifier import (
    DEFAULT_FLOW_EXIT_LIMIT,
    DEFAULT_FLOW_PENALTY,
    RUBRIC_QUESTIONS,
)
from .errors import (
    ConfigParseError,
    InvalidWeightError,
    UnknownKeyError,
)
from .frontend import DEFAULT_INIT_TERMINATION_CALLS, StatementKind
from .impact import WeightTable
from .metrics import (
    ExecutionTimeModel,
    PerSegmentAverage,
    QUALITY_ATTRIBUTE_NAMES,
    QualityAttributes,
    TotalSeconds,
)

REPORT_FORMATS = ("text", "json")

_WEIGHT_KEYS = {kind.value: kind for kind in StatementKind}
_ANALYSIS_KEYS = frozenset({
    "default_iterations",
    "flow_exit_limit",
    "flow_penalty",
    "exec_time",
    "exec_time_avg",
    "exception_multiplier",
    "report_format",
    "init_termination_calls",
})
_BOOL_VALUES = {
    "on": True, "true": True, "yes": True, "1": True,
    "off": False, "false": False, "no": False, "0": False,
}


@dataclass(frozen=True)
class Config:
    weights: WeightTable = field(default_factory=WeightTable)
    default_iterations: int = 1
    qr: QualityAttributes | None = None
    rubric: dict[str, int] = field(default_factory=dict)
    exec_time: ExecutionTimeModel | None = None
    flow_exit_limit: int = DEFAULT_FLOW_EXIT_LIMIT
    flow_penalty: Fraction = DEFAULT_FLOW_PENALTY
    report_format: str = "text"
    init_termination_calls: frozenset[str] = DEFAULT_INIT_TERMINATION_CALLS


def _fraction(value: str, context: str) -> Fraction:
    try:
        return Fraction(value.strip())
    except (ValueError, ZeroDivisionError):
        raise ConfigParseError(f"{context}: not a number: {value!r}") from None


def _int(value: str, context: str) -> int:
    try:
        return int(value.strip())
    except ValueError:
        raise ConfigParseError(f"{context}: not an integer: {value!r}") from None


def _parse_weights(items: dict[str, str]) -> dict[StatementKind, Fraction]:
    overrides: dict[StatementKind, Fraction] = {}
    for key, value in items.items():
        kind = _WEIGHT_KEYS.get(key)
        if kind is None:
            raise UnknownKeyError(f"unknown weight key: {key!r}")
        weight = _fraction(value, f"weights.{key}")
        if not (0 <= weight <= 1):
            raise InvalidWeightError(
                f"weight for {key} must be in [0, 1], got {value}"
            )
        overrides[kind] = weight
    return overrides


def _parse_qr(items: dict[str, str]) -> QualityAttributes:
    values = {}
    for key, value in items.items():
        if key not in QUALITY_ATTRIBUTE_NAMES:
            raise UnknownKeyError(f"unknown qr key: {key!r}")
        values[key] = _int(value, f"qr.{key}")
    return QualityAttributes(**values)


def _parse_rubric(items: dict[str, str]) -> dict[str, int]:
    answers = {}
    for key, value in items.items():
        if key not in RUBRIC_QUESTIONS:
            raise UnknownKeyError(f"unknown rubric key: {key!r}")
        score = _int(value, f"rubric.{key}")
        if score not in (0, 1, 2):
            raise ConfigParseError(f"rubric.{key} must be 0, 1, or 2, got {value}")
        answers[key] = score
    return answers


def load_config(path: str | Path | None = None) -> Config:
    """Load a configuration file, or the documented defaults when absent."""
    if path is None:
        return Config()
    parser = configparser.ConfigParser(
        interpolation=None, inline_comment_prefixes=(";", "#")
    )
    try:
        text = Path(path).read_text(encoding="utf-8")
        parser.read_string(text, source=str(path))
    except OSError as exc:
        raise ConfigParseError(f"cannot read config: {exc}") from None
    except configparser.Error as exc:
        lineno = getattr(exc, "lineno", None)
        where = f"{path}:{lineno}" if lineno else str(path)
        raise ConfigParseError(f"{where}: {exc.message}") from None

    for section in parser.sections():
        if section not in ("weights", "qr", "rubric", "analysis"):
            raise UnknownKeyError(f"unknown section: [{section}]")

    config = Config()
    if parser.has_section("weights"):
        overrides = _parse_weights(dict(parser.items("weights")))
        config = replace(config, weights=config.weights.replace(overrides))
    if parser.has_section("qr"):
        config = replace(config, qr=_parse_qr(dict(parser.items("qr"))))
    if parser.has_section("rubric"):
        config = replace(config, rubric=_parse_rubric(dict(parser.items("rubric"))))
    if parser.has_section("analysis"):
        config = _apply_analysis(config, dict(parser.items("analysis")))
    return config


def _apply_analysis(config: Config, items: dict[str, str]) -> Config:
    for key in items:
        if key not in _ANALYSIS_KEYS:
            raise UnknownKeyError(f"unknown analysis key: {key!r}")
    if "exec_time" in items and "exec_time_avg" in items:
        raise ConfigParseError("exec_time and exec_time_avg are mutually exclusive")

    if "default_iterations" in items:
        n = _int(items["default_iterations"], "analysis.default_iterations")
        if n < 0:
            raise ConfigParseError("default_iterations must be >= 0")
        config = replace(config, default_iterations=n)
    if "flow_exit_limit" in items:
        n = _int(items["flow_exit_limit"], "analysis.flow_exit_limit")
        if n < 0:
            raise ConfigParseError("flow_exit_limit must be >= 0")
        config = replace(config, flow_exit_limit=n)
    if "flow_penalty" in items:
        penalty = _fraction(items["flow_penalty"], "analysis.flow_penalty")
        if penalty < 0:
            raise ConfigParseError("flow_penalty must be >= 0")
        config = replace(config, flow_penalty=penalty)
    if "exec_time" in items:
        seconds = _fraction(items["exec_time"], "analysis.exec_time")
        config = replace(config, exec_time=TotalSeconds(seconds))
    if "exec_time_avg" in items:
        seconds = _fraction(items["exec_time_avg"], "analysis.exec_time_avg")
        config = replace(config, exec_time=PerSegmentAverage(seconds))
    if "exception_multiplier" in items:
        raw = items["exception_multiplier"].strip().lower()
        if raw not in _BOOL_VALUES:
            raise ConfigParseError(
                f"analysis.exception_multiplier must be on/off, got {raw!r}"
            )
        config = replace(
            config,
            weights=WeightTable(dict(config.weights.weights), _BOOL_VALUES[raw]),
        )
    if "report_format" in items:
        fmt = items["report_format"].strip().lower()
        if fmt not in REPORT_FORMATS:
            raise ConfigParseError(f"report_format must be text or json, got {fmt!r}")
        config = replace(config, report_format=fmt)
    if "init_termination_calls" in items:
        names = frozenset(
            name.strip()
            for name in items["init_termination_calls"].split(",")
            if name.strip()
        )
        config = replace(config, init_termination_calls=names)
    return config
