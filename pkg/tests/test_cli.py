from __future__ import annotations

import json
import subprocess
import sys

import pytest

from pseudoforest.cli import run_cli

from .conftest import complete


@pytest.fixture
def manifest(tmp_path, monkeypatch):
    path = tmp_path / "manifest.jsonl"
    monkeypatch.setenv("PSEUDOFOREST_MANIFEST", str(path))

    def records():
        return [json.loads(line) for line in path.read_text().splitlines()] if path.exists() else []

    return records


@pytest.fixture
def k4_file(tmp_path):
    path = tmp_path / "k4.txt"
    path.write_text(complete(4).to_text())
    return str(path)


@pytest.fixture
def k4_plus_file(tmp_path):
    path = tmp_path / "k4plus.txt"
    path.write_text(complete(4).add_edges([(0, 1)]).to_text())
    return str(path)


def test_density_output(k4_file, capsys, manifest):
    assert run_cli(["density", k4_file]) == 0
    assert capsys.readouterr().out.splitlines()[0] == "mad/2 = 3/2, gamma = 2"
    assert len(manifest()) == 1


def test_decompose_then_verify(k4_file, tmp_path, manifest):
    out = tmp_path / "out.json"
    assert run_cli(["decompose", "--k", "1", "--d", "2", k4_file, "-o", str(out)]) == 0
    data = json.loads(out.read_text())
    assert len(data["classes"]) == 2
    assert sorted(e for cls in data["classes"] for e in cls) == list(range(6))
    report = tmp_path / "report.json"
    assert run_cli(["verify", k4_file, str(out), "--k", "1", "--d", "2", "-o", str(report)]) == 0
    assert json.loads(report.read_text())["passed"]
    records = manifest()
    assert [r["command"] for r in records] == ["decompose", "verify"]
    assert records[0]["outcome"] == "success"


def test_certificate_exits_one(k4_plus_file, tmp_path, manifest):
    out = tmp_path / "cert.json"
    assert run_cli(["decompose", "--k", "1", "--d", "2", k4_plus_file, "-o", str(out)]) == 1
    assert json.loads(out.read_text())["certificate"] is not None
    assert run_cli(["verify", k4_plus_file, str(out), "--k", "1", "--d", "2", "-o", str(tmp_path / "r.json")]) == 0
    assert manifest()[0]["outcome"] == "certificate"


def test_iteration_cap_exits_three(tmp_path, monkeypatch, manifest):
    monkeypatch.setenv("PSEUDOFOREST_MAX_ITERATIONS", "0")
    g = complete(4).add_edges([(0, 0)])
    path = tmp_path / "g.txt"
    path.write_text(g.to_text())
    code = run_cli(["decompose", "--k", "1", "--d", "2", str(path), "-o", str(tmp_path / "o.json")])
    assert code == 3
    assert manifest()[-1]["outcome"] == "timeout"


def test_usage_and_parse_errors(tmp_path, capsys, manifest):
    assert run_cli(["decompose", "--bogus"]) == 2
    bad = tmp_path / "bad.txt"
    bad.write_text("3 1\n0 7\n")
    assert run_cli(["density", str(bad)]) == 2
    assert "error:" in capsys.readouterr().err
    assert run_cli(["density", str(tmp_path / "missing.txt")]) == 2
    assert len(manifest()) == 3


def test_generate_writes_graph_and_sidecar(tmp_path, capsys, manifest):
    out = tmp_path / "g.txt"
    assert run_cli(["generate", "diam", "--k", "1", "--ell", "1", "--alpha", "1", "--delta", "3", "-o", str(out)]) == 0
    assert capsys.readouterr().out.strip() == "graph with 13 vertices, 20 edges"
    assert out.read_text().splitlines()[0] == "13 20"
    side = json.loads((tmp_path / "g.txt.json").read_text())
    assert side["density"] == side["predicted_density"] == "5/3"
    assert run_cli(["generate", "zbig", "--k", "2", "--d", "7", "--z", "1", "--delta", "3", "-o", str(out)]) == 0
    assert json.loads((tmp_path / "g.txt.json").read_text())["density"] == "30/11"
    assert run_cli(["generate", "diam", "--k", "1", "--ell", "1", "--alpha", "1", "--delta", "4"]) == 2


def test_lbcheck_outcomes(tmp_path, manifest):
    g = tmp_path / "lb.txt"
    run_cli(["generate", "diam", "--k", "1", "--ell", "0", "--alpha", "1", "--delta", "3", "--p", "3", "-o", str(g)])
    out = tmp_path / "lb.json"
    assert run_cli(["lbcheck", str(g), "--k", "1", "--D", "1", "--bound", "2", "-o", str(out)]) == 1
    assert json.loads(out.read_text())["result"] == "unsat"
    assert run_cli(["lbcheck", str(g), "--k", "1", "--D", "2", "--bound", "3", "-o", str(out)]) == 0
    assert json.loads(out.read_text())["result"] == "witness"
    assert run_cli(["lbcheck", str(g), "--k", "1", "--D", "1", "--bound", "2", "--cap", "5"]) == 3
    assert [r["outcome"] for r in manifest()][-3:] == ["unsat", "witness", "timeout"]


def test_oracle(k4_file, tmp_path, manifest):
    out = tmp_path / "o.json"
    assert run_cli(["oracle", k4_file, "--k", "1", "--d", "2", "-o", str(out)]) == 0
    assert json.loads(out.read_text())["report"]["passed"]
    assert run_cli(["oracle", k4_file, "--k", "0", "-o", str(out)]) == 1
    assert run_cli(["oracle", k4_file, "--k", "1", "--cap", "3"]) == 3


def test_corpus_is_deterministic(tmp_path, manifest):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    args = ["corpus", "--seed", "3", "--count", "15", "--n-max", "7", "--m-max", "12"]
    assert run_cli(args + ["-o", str(a)]) == 0
    assert run_cli(args + ["-o", str(b)]) == 0
    assert a.read_text() == b.read_text()
    assert len(manifest()) == 2


def test_module_entry_point(k4_file):
    proc = subprocess.run(
        [sys.executable, "-m", "pseudoforest", "density", k4_file], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0
    assert proc.stdout.startswith("mad/2 = 3/2")
    assert proc.stderr.startswith("manifest ")
