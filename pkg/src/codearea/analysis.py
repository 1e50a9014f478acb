"""Corpus analysis: per-file pipeline plus aggregate report assembly.

Each file runs through tokenize, parse, segment, and impact scoring
independently; a parse failure in one file is recorded on that file's
entry and never disturbs another file's numbers.  Aggregate metrics are
recomputed from the per-file results, so a report is always
self-consistent.

A sidecar named ``<source>.segments`` next to an input file replaces
that file's computed segmentation (see :mod:`codearea.segmenter`).
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import classifier, impact, metrics, segmenter
from .config import Config
from .errors import SegmentOverrideError, SourceError
from .frontend import CountProvenance, iter_loops, parse_tokens, tokenize
from .segmenter import CodeSegment, SegmentCounts

STDIN_PATH = "-"
STDIN_LABEL = "<stdin>"


@dataclass
class LoopInfo:
    line: int
    count: int
    provenance: str


@dataclass
class FileResult:
    path: str
    raw_loc: int = 0
    segments: list[CodeSegment] = field(default_factory=list)
    counts: SegmentCounts = SegmentCounts(0, 0, 0, 0, 0)
    impact: Fraction = Fraction(0)
    loops: list[LoopInfo] = field(default_factory=list)
    flow: classifier.FlowReport = classifier.FlowReport(0, 0, True)
    diagnostics: list[str] = field(default_factory=list)
    error: str | None = None
    error_line: int | None = None


@dataclass
class AnalysisReport:
    files: list[FileResult]
    raw_loc: int
    counts: SegmentCounts
    code_area: Fraction
    qr_attrs: metrics.QualityAttributes
    qr: int
    execution_time_s: Fraction | None
    efficiency: Fraction | None
    percentage_of_baseline: Fraction
    meets_threshold: bool
    rubric_score: Fraction
    level: classifier.QualityLevel
    flow: classifier.FlowReport
    diagnostics: list[str]

    @property
    def failed_files(self) -> list[FileResult]:
        return [f for f in self.files if f.error is not None]


def _count_lines(text: str) -> int:
    if not text:
        return 0
    return text.count("\n") + (0 if text.endswith("\n") else 1)


def analyze_source(
    text: str,
    path: str,
    config: Config,
    *,
    sidecar: str | None = None,
) -> FileResult:
    """Analyze one file's contents; parse errors land on the result."""
    result = FileResult(path=path, raw_loc=_count_lines(text))
    tokens = tokenize(text)
    for ch, line in tokens.unknown:
        result.diagnostics.append(
            f"{path}:{line}: unknown character {ch!r} tokenized as punctuation"
        )
    try:
        tree, parse_diags = parse_tokens(
            tokens,
            default_iterations=config.default_iterations,
            init_termination_calls=config.init_termination_calls,
        )
        if sidecar is not None:
            overrides = segmenter.parse_segment_overrides(sidecar)
            segments = segmenter.apply_segment_overrides(tree, overrides)
        else:
            segments = segmenter.segment(tree)
    except (SourceError, SegmentOverrideError) as exc:
        result.error = f"{type(exc).__name__}: {exc}"
        result.error_line = getattr(exc, "line", None)
        return result
    result.diagnostics.extend(f"{path}: {d}" for d in parse_diags)
    for seg in segments:
        impact.segment_impact(seg, config.weights)
    result.segments = segments
    result.counts = segmenter.segment_counts(segments)
    result.impact = metrics.code_area(segments)
    for loop in iter_loops(tree):
        result.loops.append(
            LoopInfo(
                line=loop.header_line,
                count=loop.count.value,
                provenance=loop.count.provenance.value,
            )
        )
        if loop.count.provenance is CountProvenance.CONFIG_DEFAULT:
            result.diagnostics.append(
                f"{path}:{loop.header_line}: loop bound not statically "
                f"resolvable; using default count {loop.count.value}"
            )
    result.flow = classifier.flow_orderliness(
        tree, exit_limit=config.flow_exit_limit
    )
    return result


def _read_input(path: str) -> tuple[str, str, str | None]:
    """Return (label, text, sidecar text or None) for one input path."""
    if path == STDIN_PATH:
        return STDIN_LABEL, sys.stdin.read(), None
    text = Path(path).read_text(encoding="utf-8")
    sidecar_path = Path(path + ".segments")
    sidecar = None
    if sidecar_path.is_file():
        sidecar = sidecar_path.read_text(encoding="utf-8")
    return path, text, sidecar


def _resolve_qr(config: Config, diagnostics: list[str]) -> metrics.QualityAttributes:
    if config.qr is not None:
        return config.qr
    diagnostics.append("quality attributes not configured; defaulting each to 1")
    return metrics.QualityAttributes()


def _resolve_rubric(config: Config, diagnostics: list[str]) -> classifier.LevelRubric:
    answers = dict(config.rubric)
    for question in classifier.RUBRIC_QUESTIONS:
        if question not in answers:
            diagnostics.append(f"rubric answer '{question}' missing; defaulting to 1")
            answers[question] = 1
    return classifier.LevelRubric(answers)


def analyze(
    paths: list[str],
    config: Config,
    *,
    sidecar_path: str | None = None,
) -> AnalysisReport:
    """Analyze *paths* in order and assemble the aggregate report.

    ``sidecar_path`` forces an explicit segmentation override file and is
    only meaningful for a single input; otherwise sidecars are discovered
    next to each source file.
    """
    files: list[FileResult] = []
    for path in paths:
        try:
            label, text, sidecar = _read_input(path)
        except (OSError, UnicodeDecodeError) as exc:
            files.append(FileResult(path=path, error=f"Io: {exc}"))
            continue
        if sidecar_path is not None:
            sidecar = Path(sidecar_path).read_text(encoding="utf-8")
        files.append(analyze_source(text, label, config, sidecar=sidecar))

    analyzed = [f for f in files if f.error is None]
    diagnostics: list[str] = []
    for f in files:
        diagnostics.extend(f.diagnostics)
        if f.error is not None:
            diagnostics.append(f"{f.path}: {f.error}")

    counts = SegmentCounts(
        sum(f.counts.simple for f in analyzed),
        sum(f.counts.condition for f in analyzed),
        sum(f.counts.loop for f in analyzed),
        sum(f.counts.exception for f in analyzed),
        sum(f.counts.total for f in analyzed),
    )
    area = sum((f.impact for f in analyzed), Fraction(0))

    qr_attrs = _resolve_qr(config, diagnostics)
    quotient = metrics.quality_quotient(qr_attrs)
    if config.exec_time is None:
        time_s = None
        diagnostics.append("execution time not provided; efficiency omitted")
    else:
        time_s = metrics.execution_time(config.exec_time, counts.total)
    derived = metrics.efficiency_result(area, quotient, time_s)

    flow = classifier.combine_flow(
        [f.flow for f in analyzed], exit_limit=config.flow_exit_limit
    )
    rubric = _resolve_rubric(config, diagnostics)
    score = classifier.rubric_score(rubric, flow, penalty=config.flow_penalty)
    level = classifier.classify_level(score)
    if classifier.in_range_gap(score):
        diagnostics.append(
            f"level score {float(score)} falls between published ranges; "
            f"assigned level {level.level} by closed intervals"
        )

    return AnalysisReport(
        files=files,
        raw_loc=sum(f.raw_loc for f in analyzed),
        counts=counts,
        code_area=area,
        qr_attrs=qr_attrs,
        qr=quotient,
        execution_time_s=derived.execution_time_s,
        efficiency=derived.efficiency,
        percentage_of_baseline=derived.percentage_of_baseline,
        meets_threshold=derived.meets_threshold,
        rubric_score=score,
        level=level,
        flow=flow,
        diagnostics=diagnostics,
    )
