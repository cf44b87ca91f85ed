from __future__ import annotations

import argparse
import io
import json
import subprocess
import sys

import pytest

from multifan.cli import count_arg, main, parse_gen_spec

from .test_fans import EXTENDED, EXTENDED_G6


def run(argv, stdin: str = ""):
    out = io.StringIO()
    code = main(argv, out=out, stdin=io.StringIO(stdin))
    return code, out.getvalue()


def test_count_arg():
    assert count_arg("1e7") == 10**7
    assert count_arg("250") == 250
    for bad in ("0", "-3", "1.5", "lots"):
        with pytest.raises(argparse.ArgumentTypeError):
            count_arg(bad)


@pytest.mark.parametrize(
    "text, orders",
    [("n<=6", range(1, 7)), ("n=5", range(5, 6)), ("n<4", range(1, 4)), ("3<=n<=5", range(3, 6)), ("2<n<=4", range(3, 5))],
)
def test_gen_spec(text, orders):
    assert parse_gen_spec(text) == orders


@pytest.mark.parametrize("text", ["n<=9", "n>=3", "5<=n<=3", "x<=4"])
def test_bad_gen_spec(text):
    with pytest.raises(argparse.ArgumentTypeError):
        parse_gen_spec(text)


def test_analyze_families():
    code, out = run(["analyze", "petersen"])
    assert code == 0
    assert "Delta=3" in out and "chi'=4" in out
    assert "class=2 critical=false overfull=false" in out
    code, out = run(["analyze", "cycle:5"])
    assert "critical=true overfull=true" in out


def test_analyze_stdin_and_bad_input(capsys):
    code, out = run(["analyze"], stdin="D?{\n")
    assert code == 0 and "graph D?{" in out
    code, _ = run(["analyze"], stdin="D?\n")
    assert code == 1
    assert "byte 2" in capsys.readouterr().err
    assert run(["analyze", "wheel:2"])[0] == 1


def test_analyze_undecided():
    code, out = run(["analyze", "complete:9", "--budget", "1e3"])
    assert code == 2 and "undecided" in out


def test_verify_clean_run(tmp_path):
    report = tmp_path / "r.jsonl"
    code, out = run(["verify", "--checks", "vf1,val", "--gen", "n<=6", "--out", str(report), "--jobs", "1"])
    assert code == 0
    assert "vf1" in out and "val" in out
    lines = [json.loads(x) for x in report.read_text().splitlines()]
    assert lines[0]["type"] == "header" and lines[0]["seed"] == 20240607
    assert lines[-1]["fails"] == 0


def test_verify_unknown_check(capsys):
    with pytest.raises(SystemExit) as info:
        run(["verify", "--checks", "nosuch"])
    assert info.value.code == 1
    assert "unknown check" in capsys.readouterr().err


def test_verify_extend_reports_skips(tmp_path):
    corpus = tmp_path / "small.g6"
    corpus.write_text("HheA@GU\n")  # Petersen minus a vertex
    report = tmp_path / "r.jsonl"
    code, out = run(["verify", "--checks", "extend", "--corpus", str(corpus), "--budget", "1e7",
                     "--limit", "1", "--restarts", "4", "--out", str(report), "--jobs", "1"])
    assert code == 0
    recs = [json.loads(x) for x in report.read_text().splitlines()]
    skipped = [r for r in recs if r.get("verdict") == "skipped"]
    assert skipped and all("not certified" in r["reason"] for r in skipped)
    assert "NONE FOUND" in out


def test_verify_corpus_with_bad_line(tmp_path):
    corpus = tmp_path / "c.g6"
    corpus.write_text("Dhc\nD?\nBw\n")
    code, out = run(["verify", "--checks", "val", "--corpus", str(corpus), "--out", str(tmp_path / "r.jsonl"),
                     "--jobs", "1"])
    assert code == 1
    assert "2 graphs, 1 input errors" in out


def test_verify_rejects_two_corpora(tmp_path):
    assert run(["verify", "--gen", "n<=3", "--corpus", "x", "--out", str(tmp_path / "r")])[0] == 1


def test_scan_survey(tmp_path):
    out_file = tmp_path / "s.jsonl"
    code, out = run(["scan", "--gen", "n<=5", "--out", str(out_file)])
    assert code == 0
    assert "overfull_class1=0" in out
    recs = [json.loads(x) for x in out_file.read_text().splitlines()]
    assert recs[-1]["graphs"] == 1 + 1 + 2 + 6 + 21


def test_fan_c5():
    code, out = run(["fan", "cycle:5", "--edge", "0,1"])
    assert code == 0
    assert "multi-fan center=0" in out and "locator: {1->1, 2->0}" in out


def test_fan_not_critical():
    code, out = run(["fan", "cycle:6", "--edge", "0,1"])
    assert code == 2 and "not critical" in out


def test_fan_with_coloring_file(tmp_path):
    path = tmp_path / "c.txt"
    path.write_text(EXTENDED)
    code, out = run(["fan", EXTENDED_G6, "--edge", "3,4", "--center", "3", "--coloring", str(path)])
    assert code == 0
    assert "extended multi-fan pivot=4 beta=3 sequences=1" in out


def test_fan_improper_coloring(tmp_path, capsys):
    path = tmp_path / "bad.txt"
    path.write_text("palette:2\n1-2:1\n2-3:1\n")
    code, _ = run(["fan", "cycle:5", "--edge", "0,1", "--coloring", str(path)])
    assert code == 1
    assert "vertex 2 has two edges colored 1" in capsys.readouterr().err


def test_fan_bad_edge_and_center():
    assert run(["fan", "cycle:5", "--edge", "0,2"])[0] == 1
    assert run(["fan", "cycle:5", "--edge", "0-1"])[0] == 1
    assert run(["fan", "cycle:5", "--edge", "0,1", "--center", "3"])[0] == 1


def test_fan_maximum_coloring():
    code, out = run(["fan", "petersen-v", "--edge", "0,1", "--coloring", "max"])
    assert code == 0 and "maximum fan size 4 (certified" in out


def test_gen(tmp_path, capsys):
    code, out = run(["gen", "n<=4"])
    assert code == 0 and out.split() == ["@", "A_", "BW", "Bw", "CF", "CL", "CN", "C]", "C^", "C~"]
    path = tmp_path / "all.g6"
    run(["gen", "n=4", "--all-graphs", "--out", str(path)])
    assert len(path.read_text().split()) == 11


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "multifan", "analyze", "cycle:5"], capture_output=True, text=True)
    assert proc.returncode == 0 and "chi'=3" in proc.stdout


def test_output_is_deterministic(tmp_path):
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    run(["verify", "--checks", "vf1,vf2,extend", "--gen", "n<=5", "--out", str(a), "--jobs", "1"])
    run(["verify", "--checks", "vf1,vf2,extend", "--gen", "n<=5", "--out", str(b), "--jobs", "1"])
    assert a.read_text() == b.read_text()
