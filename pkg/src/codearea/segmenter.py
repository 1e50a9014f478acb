"""Partition a block tree into code segments.

Segments are the unit over which impacts accumulate.  At each scope the
top-level nodes are covered by an ordered, non-overlapping partition:
condition blocks become CL segments, loop blocks LL, exception blocks
EL, and maximal runs of consecutive plain statements become SL segments.
Function bodies are segmented recursively; the function contributes its
body's segments in place.

Statement runs only merge while the statements stay in the same weight
group: comments, preprocessor lines, and everything else each form their
own runs, which keeps per-segment impacts reproducible.

A sidecar file ``<source>.segments`` can replace the computed partition.
Each non-blank, non-``#`` line holds ``startLine endLine KIND`` with KIND
one of SL/CL/LL/EL.  The override must still be a partition: spans may
not overlap, every segmentable node must fall entirely inside exactly
one span, and every span must cover at least one node.
"""

from __future__ import annotations

import enum
from collections import namedtuple
from dataclasses import dataclass
from fractions import Fraction

from .errors import SegmentOverrideError
from .frontend import (
    BlockNode,
    ConditionBlock,
    ExceptionBlock,
    FunctionDef,
    LoopBlock,
    Span,
    Statement,
    StatementKind,
)


class SegmentKind(enum.Enum):
    SL = "SL"  # simple lines
    CL = "CL"  # condition-based lines
    LL = "LL"  # loop-based lines
    EL = "EL"  # exception-handling lines


@dataclass
class CodeSegment:
    kind: SegmentKind
    nodes: list[BlockNode]
    span: Span
    impact: Fraction | None = None


SegmentCounts = namedtuple(
    "SegmentCounts", ["simple", "condition", "loop", "exception", "total"]
)


def _group(statement: Statement) -> str:
    if statement.kind is StatementKind.COMMENT:
        return "comment"
    if statement.kind is StatementKind.HEADER_INCLUDE:
        return "header"
    return "code"


def _span_of(nodes: list[BlockNode]) -> Span:
    return (min(n.span[0] for n in nodes), max(n.span[1] for n in nodes))


def segment(tree: list[BlockNode]) -> list[CodeSegment]:
    """Compute the default ordered segment partition of *tree*."""
    out: list[CodeSegment] = []
    run: list[Statement] = []

    def flush() -> None:
        if run:
            out.append(CodeSegment(SegmentKind.SL, list(run), _span_of(run)))
            run.clear()

    def walk(nodes: list[BlockNode]) -> None:
        for node in nodes:
            if isinstance(node, Statement):
                if run and _group(run[-1]) != _group(node):
                    flush()
                run.append(node)
            elif isinstance(node, FunctionDef):
                flush()
                walk(node.body)
                flush()
            elif isinstance(node, ConditionBlock):
                flush()
                out.append(CodeSegment(SegmentKind.CL, [node], node.span))
            elif isinstance(node, LoopBlock):
                flush()
                out.append(CodeSegment(SegmentKind.LL, [node], node.span))
            elif isinstance(node, ExceptionBlock):
                flush()
                out.append(CodeSegment(SegmentKind.EL, [node], node.span))

    walk(tree)
    flush()
    return out


def segment_counts(segments: list[CodeSegment]) -> SegmentCounts:
    """Count segments per kind; ``total`` is the overall segment count."""
    per = {kind: 0 for kind in SegmentKind}
    for seg in segments:
        per[seg.kind] += 1
    return SegmentCounts(
        per[SegmentKind.SL],
        per[SegmentKind.CL],
        per[SegmentKind.LL],
        per[SegmentKind.EL],
        len(segments),
    )


# ---------------------------------------------------------------------------
# Sidecar overrides
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SegmentOverride:
    start: int
    end: int
    kind: SegmentKind


def parse_segment_overrides(text: str) -> list[SegmentOverride]:
    """Parse a sidecar file into override triples."""
    overrides: list[SegmentOverride] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 3:
            raise SegmentOverrideError(
                f"sidecar line {lineno}: expected 'startLine endLine KIND', got {raw!r}"
            )
        try:
            start, end = int(parts[0]), int(parts[1])
        except ValueError:
            raise SegmentOverrideError(
                f"sidecar line {lineno}: line numbers must be integers"
            ) from None
        try:
            kind = SegmentKind(parts[2].upper())
        except ValueError:
            raise SegmentOverrideError(
                f"sidecar line {lineno}: unknown segment kind {parts[2]!r}"
            ) from None
        if start < 1 or end < start:
            raise SegmentOverrideError(
                f"sidecar line {lineno}: invalid span {start}..{end}"
            )
        overrides.append(SegmentOverride(start, end, kind))
    return overrides


def _segmentable_nodes(tree: list[BlockNode]) -> list[BlockNode]:
    units: list[BlockNode] = []
    for node in tree:
        if isinstance(node, FunctionDef):
            units.extend(_segmentable_nodes(node.body))
        else:
            units.append(node)
    return units


def apply_segment_overrides(
    tree: list[BlockNode], overrides: list[SegmentOverride]
) -> list[CodeSegment]:
    """Replace the computed partition with sidecar spans, after validation."""
    spans = sorted(overrides, key=lambda o: (o.start, o.end))
    for prev, cur in zip(spans, spans[1:]):
        if cur.start <= prev.end:
            raise SegmentOverrideError(
                f"sidecar spans {prev.start}..{prev.end} and "
                f"{cur.start}..{cur.end} overlap"
            )
    buckets: dict[SegmentOverride, list[BlockNode]] = {o: [] for o in spans}
    for unit in _segmentable_nodes(tree):
        owner = None
        for override in spans:
            if override.start <= unit.span[0] and unit.span[1] <= override.end:
                owner = override
                break
        if owner is None:
            raise SegmentOverrideError(
                f"lines {unit.span[0]}..{unit.span[1]} are not covered by "
                f"exactly one sidecar span"
            )
        buckets[owner].append(unit)
    segments = []
    for override in spans:
        nodes = buckets[override]
        if not nodes:
            raise SegmentOverrideError(
                f"sidecar span {override.start}..{override.end} covers no code"
            )
        segments.append(
            CodeSegment(override.kind, nodes, (override.start, override.end))
        )
    return segments
