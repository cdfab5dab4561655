from __future__ import annotations

import io
import json
import subprocess
import sys

import pytest

from symfix.cli import main


def run(argv, stdin=""):
    proc = subprocess.run(
        [sys.executable, "-m", "symfix", *argv],
        input=stdin, capture_output=True, text=True, timeout=120,
    )
    return proc.returncode, proc.stdout, proc.stderr


def test_analyze_c5(tmp_path):
    path = tmp_path / "c5.g6"
    path.write_text("Dhc\n")
    code, out, _ = run(["analyze", "--input", str(path)])
    assert code == 0
    data = json.loads(out)
    assert (data["fix"], data["fxd"], data["k_fixed"]) == (2, 2, 2)
    assert data["tool_version"] and len(data["input_digest"]) == 64


def test_analyze_stdin_and_options():
    code, out, _ = run(["analyze", "--input", "-", "--beta", "--polynomial"], stdin="Bw\nCh\n")
    assert code == 0
    lines = [json.loads(line) for line in out.splitlines()]
    assert len(lines) == 2
    assert lines[0]["beta"]["value"] == 2
    assert lines[1]["polynomial"] == [0, 4, 6, 4, 1]


def test_construct_fix_fxd():
    code, out, _ = run(["construct", "thm5", "--p", "2", "--q", "5"])
    assert code == 0
    g6, record = out.splitlines()
    assert json.loads(record)["graph6"] == g6
    data = json.loads(record)
    assert (data["n"], data["fix"], data["fxd"], data["verified"]) == (6, 2, 5, True)
    code2, out2, _ = run(["construct", "fix-fxd", "--p", "2", "--q", "5"])
    assert (code2, out2) == (code, out)


def test_construct_extend():
    code, out, _ = run(["construct", "extend", "--input", "-"], stdin="Cr\n")
    assert code == 0
    data = json.loads(out.splitlines()[1])
    assert data["n"] == 5 and data["verified"]


def test_generate(tmp_path):
    assert run(["generate", "--family", "petersen"])[1] == "IheA@GUAo\n"
    out = tmp_path / "j.g6"
    code, _, _ = run(["generate", "--family", "johnson", "--params", "m=5,k=2", "--out", str(out)])
    assert code == 0 and out.read_text().strip()
    assert run(["generate", "--family", "nosuch"])[0] == 1


def test_fixing_graph_outputs(tmp_path):
    dot, js = tmp_path / "d.dot", tmp_path / "d.json"
    code, out, _ = run(["fixing-graph", "--input", "-", "--dot", str(dot), "--json", str(js)], stdin="Cr\n")
    assert code == 0
    summary = json.loads(out)
    assert (summary["r"], summary["s"], summary["edges"], summary["fix"], summary["fxd"]) == (4, 6, 20, 2, 3)
    assert dot.read_text().startswith("graph fixing_graph {")
    assert json.loads(js.read_text())["s"] == 6
    code, out, _ = run(["fixing-graph", "--dot", "-"], stdin="Cr\n")
    assert code == 0 and out.startswith("graph fixing_graph {")


def test_survey_exit_zero(tmp_path):
    report = tmp_path / "r.csv"
    code, out, _ = run(["survey", "--max-n", "5", "--report", str(report)])
    assert code == 0
    assert json.loads(out)["counterexamples"] == []
    rows = report.read_text().splitlines()
    assert rows[0] == "graph6,check,verdict,details"
    assert not any(",fail," in row for row in rows)


def test_survey_from_file(tmp_path):
    cat = tmp_path / "cat.g6"
    cat.write_text("Bw\nDhc\nIheA@GUAo\n")
    code, out, _ = run(["survey", "--input", str(cat), "--report", "-", "--summary", str(tmp_path / "s.json")])
    assert code == 0 and out.startswith("graph6,check,verdict,details")
    assert json.loads((tmp_path / "s.json").read_text())["graphs"] == 3


def test_exit_codes(tmp_path):
    assert run(["analyze"], stdin="B!\n")[0] == 1
    assert run(["analyze", "--input", str(tmp_path / "missing")])[0] == 1
    assert run(["--aut-cap", "10", "analyze", "--polynomial"], stdin="IheA@GUAo\n")[0] == 2
    assert run(["survey", "--max-n", "7", "--report", "-"])[0] == 2
    assert run(["construct", "thm5", "--p", "1", "--q", "3"])[0] == 1


def test_aut_cap_env(monkeypatch, capsys):
    monkeypatch.setenv("SYMFIX_AUT_CAP", "10")
    monkeypatch.setattr(sys, "stdin", io.StringIO("IheA@GUAo\n"))
    assert main(["analyze", "--polynomial"]) == 2


def test_seed_none_rejects_values():
    assert run(["--seed-none", "analyze"], stdin="Bw\n")[0] == 0
    with pytest.raises(SystemExit):
        main(["--seed-none=1", "analyze"])


def test_deterministic_stdout():
    argv = ["analyze", "--beta", "--polynomial"]
    stdin = "Dhc\nIheA@GUAo\nCr\n"
    assert run(argv, stdin)[1] == run(argv, stdin)[1]
