from __future__ import annotations

from pathlib import Path

import pytest
from hypothesis import strategies as st

from codearea import WeightTable, build_block_tree, segment, segment_impact, tokenize

REPO_ROOT = Path(__file__).resolve().parent.parent
CORPUS = REPO_ROOT / "corpus"

CORPUS_FILES = [
    CORPUS / "comments_only.c",
    CORPUS / "headers_and_calls.c",
    CORPUS / "branching.c",
    CORPUS / "service_loop.c",
    CORPUS / "nested_repeat.c",
]


@pytest.fixture
def corpus_paths() -> list[str]:
    return [str(p) for p in CORPUS_FILES]


def parse_source(source: str):
    """Tokenize and parse a source string with default settings."""
    return build_block_tree(tokenize(source))


def segments_of(source: str, weights: WeightTable | None = None):
    """Full single-file pipeline: parse, segment, and score."""
    weights = weights or WeightTable()
    segs = segment(parse_source(source))
    for seg in segs:
        segment_impact(seg, weights)
    return segs


def total_impact(source: str, weights: WeightTable | None = None):
    return sum((seg.impact for seg in segments_of(source, weights)), start=0)


# ---------------------------------------------------------------------------
# Structured random sources for property tests
# ---------------------------------------------------------------------------

STATEMENT_BANK = [
    "flush_queue();",
    "n = n + 1;",
    "int total;",
    "limit = 8;",
    "value = probe(sensor) + probe(backup);",
    "// boundary note",
    "#include <stdio.h>",
    "total = drain(total);",
    "return total;",
]


@st.composite
def source_lines(draw, depth: int = 0):
    """Random, brace-balanced source snippets as a list of lines."""
    lines: list[str] = []
    for _ in range(draw(st.integers(0, 4))):
        choice = draw(st.integers(0, 5 if depth < 2 else 2))
        if choice <= 2:
            lines.append(draw(st.sampled_from(STATEMENT_BANK)))
        elif choice == 3:
            bound = draw(st.integers(0, 3))
            inner = draw(source_lines(depth + 1))
            lines += [f"for (i = 0; i < {bound}; i++)", "{"]
            lines += ["    " + ln for ln in inner]
            lines += ["}"]
        elif choice == 4:
            then = draw(source_lines(depth + 1))
            alt = draw(source_lines(depth + 1))
            lines += ["if (n > 0)", "{"]
            lines += ["    " + ln for ln in then]
            lines += ["}", "else", "{"]
            lines += ["    " + ln for ln in alt]
            lines += ["}"]
        else:
            inner = draw(source_lines(depth + 1))
            lines += ["try", "{"]
            lines += ["    " + ln for ln in inner]
            lines += ["}", "catch (err)", "{", "    soothe();", "}"]
    return lines


def as_source(lines: list[str]) -> str:
    return "\n".join(lines) + "\n" if lines else ""
