from __future__ import annotations

import io
import json

import pytest

from codearea.cli import main

from conftest import CORPUS_FILES


def corpus_args():
    return [str(p) for p in CORPUS_FILES]


def test_worked_example_run(capsys):
    code = main(corpus_args() + ["--exec-time", "88", "--qr", "1,2,0,1,2"])
    out = capsys.readouterr().out
    assert code == 0
    assert "code area:         220.10" in out
    assert "efficiency:        15.01" in out


def test_json_format_flag(capsys):
    code = main(corpus_args() + ["--exec-time", "88", "--qr", "1,2,0,1,2",
                                 "--format", "json"])
    assert code == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["v"] == 1
    assert doc["efficiency"] == 15.01


def test_empty_run_is_success(capsys):
    assert main([]) == 0
    assert "files: 0" in capsys.readouterr().out


def test_file_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.c"
    bad.write_text("}\n", encoding="utf-8")
    assert main([str(bad)]) == 1


def test_missing_file_exit_code(tmp_path, capsys):
    assert main([str(tmp_path / "absent.c")]) == 1


def test_config_error_exit_code(tmp_path, capsys):
    conf = tmp_path / "bad.ini"
    conf.write_text("[weights]\ncomment = 2.0\n", encoding="utf-8")
    assert main(["--config", str(conf)] + corpus_args()) == 2
    assert "config error" in capsys.readouterr().err


def test_bad_qr_flag_exit_code(capsys):
    assert main(["--qr", "1,2,3"] + corpus_args()) == 2
    assert main(["--qr", "1,2,0,1,9"] + corpus_args()) == 2


def test_gate_failure_exit_code(capsys):
    assert main(corpus_args() + ["--gate"]) == 3


def test_gate_passes_when_threshold_met(tmp_path, capsys):
    # 13 expression statements per iteration at weight 1.0 over a large
    # literal bound pushes the area past the 75% baseline (562,500).
    big = tmp_path / "big.c"
    lines = ["for (i = 0; i < 60000; i++)", "{"]
    lines += [f"    v{k} = probe(a{k}) + probe(b{k});" for k in range(13)]
    lines += ["}"]
    big.write_text("\n".join(lines) + "\n", encoding="utf-8")
    conf = tmp_path / "unit.ini"
    conf.write_text("[weights]\nexpression = 1.0\n", encoding="utf-8")
    code = main([str(big), "--config", str(conf), "--qr", "2,2,2,2,2", "--gate"])
    assert code == 0


def test_weights_dump(capsys):
    assert main(["--weights-dump"]) == 0
    out = capsys.readouterr().out
    assert "comment = 0.5" in out
    assert "expression = 0.8" in out
    assert "exception_multiplier = on" in out


def test_weights_dump_reflects_config(tmp_path, capsys):
    conf = tmp_path / "w.ini"
    conf.write_text("[weights]\ncomment = 0.9\n", encoding="utf-8")
    assert main(["--config", str(conf), "--weights-dump"]) == 0
    assert "comment = 0.9" in capsys.readouterr().out


def test_stdin_input(monkeypatch, capsys):
    monkeypatch.setattr("sys.stdin", io.StringIO("x = probe(a) + probe(b);\n"))
    assert main(["-"]) == 0
    out = capsys.readouterr().out
    assert "<stdin>" in out
    assert "file impact: 0.80" in out


def test_explicit_segments_flag(tmp_path, capsys):
    source = tmp_path / "one.c"
    source.write_text("x = 1;\ny = 2;\nz = probe(x) + probe(y);\n", encoding="utf-8")
    sidecar = tmp_path / "override.segments"
    sidecar.write_text("1 2 SL\n3 3 CL\n", encoding="utf-8")
    assert main([str(source), "--segments", str(sidecar), "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    kinds = [seg["kind"] for seg in doc["files"][0]["segments"]]
    assert kinds == ["SL", "CL"]


def test_segments_flag_requires_single_input(capsys):
    assert main(corpus_args() + ["--segments", "x.segments"]) == 2


def test_exec_time_avg_with_empty_corpus_is_config_error(capsys):
    assert main(["--exec-time-avg", "2"]) == 2


def test_exec_time_flags_are_mutually_exclusive():
    with pytest.raises(SystemExit) as err:
        main(["--exec-time", "1", "--exec-time-avg", "2"])
    assert err.value.code == 2
