"""Impact-weighted source-code metrics for C-like languages.

The pipeline tokenizes a source file, builds a nested block tree,
partitions it into code segments (simple runs, condition blocks, loop
blocks, exception blocks), scores each segment by composing per-statement
impact weights through the nesting structure, and aggregates the scores
into a code area, an efficiency figure, a baseline percentage, and a
four-tier quality level.
"""

from .analysis import AnalysisReport, FileResult, analyze, analyze_source
from .classifier import (
    FlowReport,
    LevelRubric,
    QualityLevel,
    RUBRIC_QUESTIONS,
    classify_level,
    flow_orderliness,
    rubric_score,
)
from .config import Config, load_config
from .errors import (
    AttributeOutOfRangeError,
    CodeAreaError,
    ConfigError,
    ConfigParseError,
    IncompleteRubricError,
    InvalidWeightError,
    MalformedHeaderError,
    NegativeIterationsError,
    NonPositiveTimeError,
    ScoreOutOfRangeError,
    SegmentOverrideError,
    UnbalancedBracesError,
    UnknownKeyError,
    ZeroSegmentsError,
)
from .frontend import (
    BlockNode,
    ConditionBlock,
    CountProvenance,
    ExceptionBlock,
    FunctionDef,
    IterationCount,
    LoopBlock,
    Statement,
    StatementKind,
    Token,
    TokenKind,
    build_block_tree,
    classify_statement,
    reconstruct,
    resolve_loop_count,
    tokenize,
)
from .impact import (
    DEFAULT_WEIGHTS,
    WeightTable,
    block_impact,
    condition_impact,
    exception_impact,
    loop_impact,
    segment_impact,
    simple_run_impact,
    statement_impact,
)
from .metrics import (
    EfficiencyResult,
    PerSegmentAverage,
    QualityAttributes,
    TotalSeconds,
    baseline_percentage,
    code_area,
    efficiency,
    efficiency_result,
    execution_time,
    quality_quotient,
)
from .report import emit_report
from .segmenter import (
    CodeSegment,
    SegmentKind,
    apply_segment_overrides,
    parse_segment_overrides,
    segment,
    segment_counts,
)

__version__ = "0.1.0"
