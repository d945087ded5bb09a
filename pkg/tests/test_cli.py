import argparse
import subprocess
import sys

import pytest

from kgap.cli import main, parse_range
from kgap.kg import Graph, Literal, Triple, vocab
from kgap.kg.ntriples import serialize_ntriples

T = vocab.toco


def test_parse_range():
    assert parse_range("10..100:10") == list(range(10, 101, 10))
    assert parse_range("3,5") == [3, 5]
    with pytest.raises(argparse.ArgumentTypeError):
        parse_range("9..1")


def test_validate_bundled(capsys):
    assert main(["validate", "--scenario", "paper_default"]) == 0
    assert "11 APs" in capsys.readouterr().out


def test_validate_bad_file(tmp_path, capsys):
    bad = tmp_path / "s.toml"
    bad.write_text("[scenario]\nname = 1\n")
    assert main(["validate", "--scenario", str(bad)]) == 1
    assert "error" in capsys.readouterr().err


def test_query_prints_csv(tmp_path, capsys):
    kb = tmp_path / "kb.nt"
    kb.write_text(serialize_ntriples(Graph([
        Triple(T("ap1"), vocab.HAS_WLAN, T("w1")),
        Triple(T("w1"), vocab.ANTENNA_GAIN, Literal("5.0", "decimal")),
    ])))
    rq = tmp_path / "q.rq"
    rq.write_text("SELECT ?w ?g WHERE {:ap1 :hasWLAN ?w. ?w :antennaGain ?g.}")
    assert main(["query", "--kb", str(kb), "--query", str(rq)]) == 0
    assert capsys.readouterr().out == "w,g\nhttp://purl.org/toco/w1,5.0\n"


def test_query_input_errors(tmp_path):
    kb = tmp_path / "kb.nt"
    kb.write_text("<http://a> <http://b> <http://c>\n")
    rq = tmp_path / "q.rq"
    rq.write_text("SELECT ?x WHERE { ?x }")
    assert main(["query", "--kb", str(kb), "--query", str(rq)]) == 1
    kb.write_text("")
    assert main(["query", "--kb", str(kb), "--query", str(rq)]) == 1
    assert main(["query", "--kb", str(tmp_path / "none.nt"), "--query", str(rq)]) == 1


def test_runtime_error_exit_code(tmp_path):
    # a mixed-kind ORDER BY column only fails at evaluation time
    kb = tmp_path / "kb.nt"
    kb.write_text('<http://a> <http://p> "1"^^<http://www.w3.org/2001/XMLSchema#integer> .\n'
                  "<http://b> <http://p> <http://c> .\n")
    rq = tmp_path / "q.rq"
    rq.write_text("SELECT ?o WHERE { ?s <http://p> ?o } ORDER BY ?o")
    assert main(["query", "--kb", str(kb), "--query", str(rq)]) == 2


def test_run_writes_three_files(tmp_path):
    assert main(["run", "--scenario", "paper_default", "--seed", "3", "--out", str(tmp_path),
                 "--no-control"]) == 0
    for name in ("records.csv", "gains.csv", "decisions.csv"):
        assert (tmp_path / name).stat().st_size > 0


def test_run_with_bad_rules(tmp_path):
    rules = tmp_path / "r.rules"
    rules.write_text("RULE broken\n")
    assert main(["run", "--scenario", "paper_default", "--out", str(tmp_path), "--rules", str(rules)]) == 1


def test_bench_overhead_cli(tmp_path, capsys):
    out = tmp_path / "o.csv"
    assert main(["bench-overhead", "--stations", "5..10:5", "--reps", "2", "--out", str(out)]) == 0
    assert out.read_text().count("\n") == 1 + 4
    assert "scaling ratio" in capsys.readouterr().out


def test_console_entry_point():
    out = subprocess.run([sys.executable, "-m", "kgap.cli", "validate", "--scenario", "paper_default"],
                         capture_output=True, text=True)
    assert out.returncode == 0
