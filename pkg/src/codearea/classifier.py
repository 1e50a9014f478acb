"""Quality levels and control-flow orderliness.

The level classifier maps a 0-10 score onto four tiers.  The published
tier ranges leave gaps (8.0-8.5 and 6.0-6.5) and give the lowest tier no
range at all, so the intervals are closed upward to partition [0, 10]:
level 1 covers [8.5, 10], level 2 [6.5, 8.5), level 3 [4.5, 6.5), and
level 4 [0, 4.5).  Scores that land in a published gap are flagged.

The score itself comes from a five-question rubric answered 0/1/2 by the
operator, minus a fixed penalty when the control flow is not orderly.
Orderliness means no backward jumps (a ``goto`` to an earlier line) and
at most a configured number of unstructured exits (forward or unresolved
``goto`` targets, plus extra ``break``/``continue`` beyond one per loop).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import IncompleteRubricError, ScoreOutOfRangeError
from .frontend import (
    BlockNode,
    ConditionBlock,
    ExceptionBlock,
    FunctionDef,
    LoopBlock,
    Statement,
    TokenKind,
)

RUBRIC_QUESTIONS = (
    "segment_flow",          # segments executed in order, smooth call flow
    "oo_reuse",              # use of reuse/generalization facilities
    "commenting",            # segments commented in understandable language
    "error_controls",        # controlled failure handling, low error-proneness
    "security_customization",  # access restrictions and per-user customization
)

DEFAULT_FLOW_EXIT_LIMIT = 2
DEFAULT_FLOW_PENALTY = Fraction(1)


@dataclass(frozen=True)
class FlowReport:
    backward_jumps: int
    unstructured_exits: int
    orderly: bool


@dataclass(frozen=True)
class QualityLevel:
    level: int
    low: Fraction   # inclusive
    high: Fraction  # exclusive, except level 1 which includes 10


_LEVELS = (
    QualityLevel(1, Fraction(17, 2), Fraction(10)),
    QualityLevel(2, Fraction(13, 2), Fraction(17, 2)),
    QualityLevel(3, Fraction(9, 2), Fraction(13, 2)),
    QualityLevel(4, Fraction(0), Fraction(9, 2)),
)

# Score regions between the published tier ranges.
_GAPS = ((Fraction(8), Fraction(17, 2)), (Fraction(6), Fraction(13, 2)))


def classify_level(score: Fraction | int | float) -> QualityLevel:
    """Map a [0, 10] score to its quality level."""
    value = Fraction(score)
    if not (0 <= value <= 10):
        raise ScoreOutOfRangeError(f"score must be in [0, 10], got {score}")
    for level in _LEVELS:
        if value >= level.low:
            return level
    raise AssertionError("level ranges must cover [0, 10]")


def in_range_gap(score: Fraction | int | float) -> bool:
    """True when *score* falls strictly between two published ranges."""
    value = Fraction(score)
    return any(low < value < high for low, high in _GAPS)


@dataclass(frozen=True)
class LevelRubric:
    """Answers to the five rubric questions, each 0, 1, or 2."""

    answers: dict[str, int]

    def validate(self) -> None:
        missing = [q for q in RUBRIC_QUESTIONS if q not in self.answers]
        if missing:
            raise IncompleteRubricError(f"missing answers: {', '.join(missing)}")
        unknown = [q for q in self.answers if q not in RUBRIC_QUESTIONS]
        if unknown:
            raise IncompleteRubricError(f"unknown questions: {', '.join(unknown)}")
        bad = [q for q in RUBRIC_QUESTIONS if self.answers[q] not in (0, 1, 2)]
        if bad:
            raise IncompleteRubricError(f"answers must be 0, 1, or 2: {', '.join(bad)}")


def rubric_score(
    rubric: LevelRubric,
    flow: FlowReport,
    *,
    penalty: Fraction = DEFAULT_FLOW_PENALTY,
) -> Fraction:
    """Sum of rubric answers, minus the flow penalty, clamped to [0, 10]."""
    rubric.validate()
    score = Fraction(sum(rubric.answers[q] for q in RUBRIC_QUESTIONS))
    if not flow.orderly:
        score -= penalty
    return max(Fraction(0), min(Fraction(10), score))


# ---------------------------------------------------------------------------
# Flow analysis
# ---------------------------------------------------------------------------


def _statement_head(stmt: Statement) -> str:
    return stmt.tokens[0].text if stmt.tokens else ""


def _label_name(stmt: Statement) -> str | None:
    toks = stmt.tokens
    if (
        len(toks) >= 2
        and toks[0].kind is TokenKind.IDENTIFIER
        and toks[1].text == ":"
    ):
        return toks[0].text
    return None


def _walk_statements(nodes: list[BlockNode]):
    for node in nodes:
        if isinstance(node, Statement):
            yield node
        elif isinstance(node, ConditionBlock):
            for branch in node.branches:
                yield from _walk_statements(branch)
        elif isinstance(node, (LoopBlock, ExceptionBlock, FunctionDef)):
            yield from _walk_statements(node.body)


def flow_orderliness(
    tree: list[BlockNode],
    *,
    exit_limit: int = DEFAULT_FLOW_EXIT_LIMIT,
) -> FlowReport:
    """Count backward jumps and unstructured exits in a parsed file."""
    labels: dict[str, int] = {}
    for stmt in _walk_statements(tree):
        name = _label_name(stmt)
        if name is not None and name not in labels:
            labels[name] = stmt.span[0]

    backward = 0
    unstructured = 0
    loop_exits: dict[int, int] = {}

    def visit(nodes: list[BlockNode], absorbers: list[tuple[str, int]]) -> None:
        nonlocal backward, unstructured
        for node in nodes:
            if isinstance(node, Statement):
                head = _statement_head(node)
                if head == "goto":
                    target = None
                    if len(node.tokens) > 1 and node.tokens[1].kind is TokenKind.IDENTIFIER:
                        target = node.tokens[1].text
                    target_line = labels.get(target) if target else None
                    if target_line is not None and target_line < node.span[0]:
                        backward += 1
                    else:
                        unstructured += 1
                elif head == "break":
                    # The nearest loop or switch absorbs a break; only
                    # loop exits count.
                    if absorbers and absorbers[-1][0] == "loop":
                        loop_exits[absorbers[-1][1]] += 1
                elif head == "continue":
                    for kind, key in reversed(absorbers):
                        if kind == "loop":
                            loop_exits[key] += 1
                            break
            elif isinstance(node, LoopBlock):
                key = id(node)
                loop_exits.setdefault(key, 0)
                visit(node.body, absorbers + [("loop", key)])
            elif isinstance(node, ConditionBlock):
                extra = [("switch", 0)] if node.from_switch else []
                for branch in node.branches:
                    visit(branch, absorbers + extra)
            elif isinstance(node, ExceptionBlock):
                visit(node.body, absorbers)
            elif isinstance(node, FunctionDef):
                visit(node.body, [])

    visit(tree, [])
    for exits in loop_exits.values():
        if exits > 1:
            unstructured += exits - 1
    return FlowReport(
        backward_jumps=backward,
        unstructured_exits=unstructured,
        orderly=backward == 0 and unstructured <= exit_limit,
    )


def combine_flow(reports: list[FlowReport], *, exit_limit: int) -> FlowReport:
    """Aggregate per-file flow reports; orderliness is re-judged on totals."""
    backward = sum(r.backward_jumps for r in reports)
    unstructured = sum(r.unstructured_exits for r in reports)
    return FlowReport(
        backward_jumps=backward,
        unstructured_exits=unstructured,
        orderly=backward == 0 and unstructured <= exit_limit,
    )
