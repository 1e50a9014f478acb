from __future__ import annotations

import json
from fractions import Fraction

from codearea import (
    Config,
    QualityAttributes,
    TotalSeconds,
    analyze,
    analyze_source,
    emit_report,
)

from conftest import CORPUS

WORKED_CONFIG = Config(
    qr=QualityAttributes(1, 2, 0, 1, 2),
    exec_time=TotalSeconds(Fraction(88)),
)


def corpus_paths():
    return [
        str(CORPUS / name)
        for name in (
            "comments_only.c",
            "headers_and_calls.c",
            "branching.c",
            "service_loop.c",
            "nested_repeat.c",
        )
    ]


def test_worked_corpus_aggregates():
    report = analyze(corpus_paths(), WORKED_CONFIG)
    assert report.code_area == Fraction(2201, 10)
    assert report.qr == 6
    assert report.execution_time_s == 88
    assert report.efficiency == Fraction(6603, 440)
    assert report.percentage_of_baseline == Fraction(2201, 12500)
    assert not report.meets_threshold
    assert [f.impact for f in report.files] == [
        Fraction(10),
        Fraction(53, 10),
        Fraction(16, 5),
        Fraction(48, 5),
        Fraction(192),
    ]


def test_sidecar_is_discovered_next_to_source():
    report = analyze([str(CORPUS / "service_loop.c")], Config())
    assert report.counts.total == 1
    assert report.files[0].segments[0].impact == Fraction(48, 5)


def test_empty_path_list_gives_empty_report():
    report = analyze([], Config())
    assert report.files == []
    assert report.code_area == 0
    assert report.counts.total == 0


def test_partial_failure_is_isolated(tmp_path):
    good_a = tmp_path / "a.c"
    good_a.write_text("x = 1;\n", encoding="utf-8")
    bad = tmp_path / "bad.c"
    bad.write_text("}\n", encoding="utf-8")
    good_b = tmp_path / "b.c"
    good_b.write_text("y = probe(x) + probe(y);\n", encoding="utf-8")

    report = analyze([str(good_a), str(bad), str(good_b)], Config())
    assert len(report.failed_files) == 1
    assert report.failed_files[0].path == str(bad)
    assert "UnbalancedBraces" in report.failed_files[0].error

    solo_a = analyze([str(good_a)], Config())
    solo_b = analyze([str(good_b)], Config())
    assert report.files[0].impact == solo_a.files[0].impact
    assert report.files[2].impact == solo_b.files[0].impact
    assert report.code_area == solo_a.code_area + solo_b.code_area


def test_missing_file_is_reported_not_raised(tmp_path):
    report = analyze([str(tmp_path / "absent.c")], Config())
    assert len(report.failed_files) == 1
    assert report.failed_files[0].error.startswith("Io:")


def test_non_utf8_file_is_reported_not_raised(tmp_path):
    binary = tmp_path / "bin.c"
    binary.write_bytes(b"\xff\xfe\x00broken")
    good = tmp_path / "ok.c"
    good.write_text("x = 1;\n", encoding="utf-8")
    report = analyze([str(binary), str(good)], Config())
    assert len(report.failed_files) == 1
    assert report.code_area == Fraction(1, 5)


def test_aggregate_equals_recomputation_from_files():
    report = analyze(corpus_paths(), WORKED_CONFIG)
    analyzed = [f for f in report.files if f.error is None]
    assert report.code_area == sum(f.impact for f in analyzed)
    assert report.raw_loc == sum(f.raw_loc for f in analyzed)
    assert report.counts.total == sum(f.counts.total for f in analyzed)
    # Efficiency is recomputable from the report's own fields.
    assert report.efficiency == report.code_area / report.execution_time_s * report.qr


def test_default_quality_attributes_are_flagged():
    report = analyze([], Config())
    assert report.qr == 5
    assert any("quality attributes not configured" in d for d in report.diagnostics)


def test_loop_provenance_recorded():
    result = analyze_source(
        "// @iters 10\nfor (i = 0; i < 1; i++) { tick(); }\nwhile (p) { spin(); }\n",
        "mem.c",
        Config(),
    )
    assert [(l.count, l.provenance) for l in result.loops] == [
        (10, "pragma"),
        (1, "default"),
    ]
    assert any("not statically resolvable" in d for d in result.diagnostics)


# ---------------------------------------------------------------------------
# Emission
# ---------------------------------------------------------------------------


def test_json_report_schema_fields():
    report = analyze(corpus_paths(), WORKED_CONFIG)
    blob = emit_report(report, "json")
    doc = json.loads(blob)
    assert doc["v"] == 1
    assert doc["code_area"] == 220.1
    assert doc["code_area_exact"] == [2201, 10]
    assert doc["efficiency"] == 15.01
    assert doc["efficiency_exact"] == [6603, 440]
    assert doc["percentage_of_baseline_exact"] == [2201, 12500]
    assert doc["meets_threshold"] is False
    assert doc["quality_quotient"] == 6
    assert doc["quality_quotient_normalized"] == 0.6
    assert len(doc["files"]) == 5
    assert b'"efficiency": 15.01' in blob


def test_json_report_is_byte_identical_across_emissions():
    report = analyze(corpus_paths(), WORKED_CONFIG)
    assert emit_report(report, "json") == emit_report(report, "json")
    again = analyze(corpus_paths(), WORKED_CONFIG)
    assert emit_report(report, "json") == emit_report(again, "json")


def test_empty_text_report_shows_zero_files():
    text = emit_report(analyze([], Config()), "text").decode("utf-8")
    assert text.splitlines()[0] == "impact-weighted code metrics"
    assert "files: 0" in text


def test_text_report_mentions_errors(tmp_path):
    bad = tmp_path / "bad.c"
    bad.write_text("}{", encoding="utf-8")
    text = emit_report(analyze([str(bad)], Config()), "text").decode("utf-8")
    assert "error: UnbalancedBraces" in text


def test_display_rounding_is_half_up():
    from codearea.report import render2, round2

    assert render2(Fraction(6603, 440)) == "15.01"  # 15.00681..
    assert render2(Fraction(2201, 12500)) == "0.18"  # 0.17608
    assert render2(Fraction(1, 8)) == "0.13"         # 0.125 rounds up
    assert render2(Fraction(10)) == "10.00"
    assert round2(Fraction(1, 8)) == 0.13
