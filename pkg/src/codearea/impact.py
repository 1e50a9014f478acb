"""Impact scores for statements, blocks, and segments.

Every statement kind carries a weight on the [0, 1] scale.  Block scores
compose by substitution: a loop multiplies the summed impact of its body
children by its iteration count, a condition block averages its branch
sums over the branch count, and an exception block multiplies its body
sum by the handler count.  Nested blocks contribute their own composed
score wherever a plain statement would have contributed its weight.

All arithmetic is exact (``fractions.Fraction``); rounding happens only
when a report is rendered.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .errors import InvalidWeightError
from .frontend import (
    BlockNode,
    ConditionBlock,
    ExceptionBlock,
    FunctionDef,
    LoopBlock,
    Statement,
    StatementKind,
)
from .segmenter import CodeSegment

ImpactScore = Fraction

DEFAULT_WEIGHTS: dict[StatementKind, Fraction] = {
    StatementKind.COMMENT: Fraction(1, 2),
    StatementKind.HEADER_INCLUDE: Fraction(7, 10),
    StatementKind.DECLARATION: Fraction(1, 10),
    StatementKind.INIT_TERMINATION: Fraction(1, 5),
    StatementKind.SIMPLE_ASSIGNMENT: Fraction(3, 10),
    StatementKind.COMPLEX_ASSIGNMENT: Fraction(1, 2),
    StatementKind.EXPRESSION: Fraction(4, 5),
    StatementKind.FUNCTION_CALL: Fraction(4, 5),
    StatementKind.RETURN: Fraction(4, 5),
}


@dataclass(frozen=True)
class WeightTable:
    """Weight per statement kind, total over all kinds, each in [0, 1]."""

    weights: Mapping[StatementKind, Fraction] = field(
        default_factory=lambda: dict(DEFAULT_WEIGHTS)
    )
    exception_multiplier_enabled: bool = True

    def __post_init__(self):
        for kind in StatementKind:
            if kind not in self.weights:
                raise InvalidWeightError(f"missing weight for {kind.value}")
            w = self.weights[kind]
            if not (0 <= w <= 1):
                raise InvalidWeightError(
                    f"weight for {kind.value} must be in [0, 1], got {w}"
                )

    def weight(self, kind: StatementKind) -> Fraction:
        return self.weights[kind]

    def replace(self, overrides: Mapping[StatementKind, Fraction]) -> "WeightTable":
        merged = dict(self.weights)
        merged.update(overrides)
        return WeightTable(merged, self.exception_multiplier_enabled)


def statement_impact(kind: StatementKind, weights: WeightTable) -> ImpactScore:
    """The table's weight for a statement kind."""
    return weights.weight(kind)


def simple_run_impact(run: list[Statement], weights: WeightTable) -> ImpactScore:
    """Sum of statement impacts over a run of plain statements."""
    return sum((statement_impact(s.kind, weights) for s in run), Fraction(0))


def loop_impact(node: LoopBlock, weights: WeightTable) -> ImpactScore:
    """Iteration count times the summed impact of the body children."""
    body = sum((block_impact(child, weights) for child in node.body), Fraction(0))
    return node.count.value * body


def condition_impact(node: ConditionBlock, weights: WeightTable) -> ImpactScore:
    """Branch sums averaged over the branch count (uniform success ratio)."""
    total = Fraction(0)
    for branch in node.branches:
        total += sum((block_impact(child, weights) for child in branch), Fraction(0))
    return Fraction(1, len(node.branches)) * total


def exception_impact(node: ExceptionBlock, weights: WeightTable) -> ImpactScore:
    """Body sum scaled by the handler count (unless the multiplier is off)."""
    body = sum((block_impact(child, weights) for child in node.body), Fraction(0))
    if weights.exception_multiplier_enabled:
        return body * node.handlers
    return body


def block_impact(node: BlockNode, weights: WeightTable) -> ImpactScore:
    """Dispatch on node type; functions contribute their body sum."""
    if isinstance(node, Statement):
        return statement_impact(node.kind, weights)
    if isinstance(node, LoopBlock):
        return loop_impact(node, weights)
    if isinstance(node, ConditionBlock):
        return condition_impact(node, weights)
    if isinstance(node, ExceptionBlock):
        return exception_impact(node, weights)
    if isinstance(node, FunctionDef):
        return sum((block_impact(child, weights) for child in node.body), Fraction(0))
    raise TypeError(f"not a block node: {node!r}")


def segment_impact(segment: CodeSegment, weights: WeightTable) -> ImpactScore:
    """Compute, store, and return a segment's impact."""
    total = sum((block_impact(node, weights) for node in segment.nodes), Fraction(0))
    segment.impact = total
    return total
