"""Aggregate metrics: code area, quality quotient, efficiency, baseline.

Code area is the sum of all segment impacts.  Efficiency divides it by
the supplied execution time and scales by the quality quotient, the sum
of five user-judged attributes scored 0/1/2 each.  The baseline
percentage compares the product ``code_area * quotient`` against a
notional 100,000-line program at quality rate 7.5, evaluated at the
program's own execution time so the time cancels; at least 75% counts
as meeting the threshold.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    AttributeOutOfRangeError,
    NonPositiveTimeError,
    ZeroSegmentsError,
)
from .segmenter import CodeSegment

BASELINE_LOC = 100_000
BASELINE_QUALITY = Fraction(15, 2)  # 7.5 on the 0-10 scale
THRESHOLD_PERCENT = Fraction(75)

QUALITY_ATTRIBUTE_NAMES = (
    "security",
    "execution_time",
    "user_friendliness",
    "other_metrics",
    "environment_selection",
)


@dataclass(frozen=True)
class QualityAttributes:
    """Five attribute scores, each 0 (absent), 1 (partial), or 2 (present)."""

    security: int = 1
    execution_time: int = 1
    user_friendliness: int = 1
    other_metrics: int = 1
    environment_selection: int = 1

    def __post_init__(self):
        for name in QUALITY_ATTRIBUTE_NAMES:
            value = getattr(self, name)
            if value not in (0, 1, 2):
                raise AttributeOutOfRangeError(
                    f"{name} must be 0, 1, or 2, got {value!r}"
                )

    def as_tuple(self) -> tuple[int, int, int, int, int]:
        return tuple(getattr(self, name) for name in QUALITY_ATTRIBUTE_NAMES)


@dataclass(frozen=True)
class TotalSeconds:
    seconds: Fraction

    def __post_init__(self):
        if self.seconds <= 0:
            raise NonPositiveTimeError(f"total time must be > 0, got {self.seconds}")


@dataclass(frozen=True)
class PerSegmentAverage:
    seconds: Fraction

    def __post_init__(self):
        if self.seconds <= 0:
            raise NonPositiveTimeError(
                f"per-segment time must be > 0, got {self.seconds}"
            )


ExecutionTimeModel = TotalSeconds | PerSegmentAverage


def code_area(segments: list[CodeSegment]) -> Fraction:
    """Sum of segment impacts (equivalently, count times mean impact)."""
    total = Fraction(0)
    for seg in segments:
        if seg.impact is None:
            raise ValueError(f"segment at lines {seg.span} has no impact yet")
        total += seg.impact
    return total


def quality_quotient(attrs: QualityAttributes) -> int:
    """Sum of the five attribute scores, an integer in [0, 10]."""
    return sum(attrs.as_tuple())


def execution_time(model: ExecutionTimeModel, segment_count: int) -> Fraction:
    """Total execution time in seconds for the given model."""
    if isinstance(model, TotalSeconds):
        return model.seconds
    if segment_count == 0:
        raise ZeroSegmentsError("per-segment time given but there are no segments")
    return segment_count * model.seconds


def efficiency(area: Fraction, time_s: Fraction, quotient: int) -> Fraction:
    """(code area / execution time) * quality quotient, exactly."""
    if time_s <= 0:
        raise NonPositiveTimeError(f"execution time must be > 0, got {time_s}")
    return area / time_s * quotient


def baseline_percentage(area: Fraction, quotient: int) -> Fraction:
    """Percentage of the 100,000-line / quality-7.5 baseline.

    The baseline is evaluated at the analyzed program's own execution
    time, so the ratio reduces to
    ``100 * (area * quotient) / (100000 * 7.5)``.
    """
    return 100 * (area * quotient) / (BASELINE_LOC * BASELINE_QUALITY)


@dataclass(frozen=True)
class EfficiencyResult:
    code_area: Fraction
    execution_time_s: Fraction | None
    qr: int
    efficiency: Fraction | None
    percentage_of_baseline: Fraction
    meets_threshold: bool


def efficiency_result(
    area: Fraction, quotient: int, time_s: Fraction | None
) -> EfficiencyResult:
    """Bundle the derived metrics; efficiency is omitted without a time."""
    percentage = baseline_percentage(area, quotient)
    return EfficiencyResult(
        code_area=area,
        execution_time_s=time_s,
        qr=quotient,
        efficiency=None if time_s is None else efficiency(area, time_s, quotient),
        percentage_of_baseline=percentage,
        meets_threshold=percentage >= THRESHOLD_PERCENT,
    )
