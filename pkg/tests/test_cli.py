import csv
import json
import subprocess
import sys

import pytest

from rankrank.cli import main

from conftest import DATA, TINY


def read_csv(path):
    with open(path, newline="", encoding="utf-8") as fh:
        return list(csv.reader(fh))


def tree(path):
    return {p.relative_to(path).as_posix(): p.read_bytes() for p in sorted(path.rglob("*")) if p.is_file()}


@pytest.fixture
def tiny_file(tmp_path):
    p = tmp_path / "tiny.txt"
    p.write_text(TINY + "\n", encoding="utf-8")
    return p


@pytest.fixture
def one_gram(tmp_path):
    out = tmp_path / "fake1"
    assert main(["fakegen", "--n", "1", "--alphabet", "1541", "--vocab", "1541", "--length", "20000",
                 "--param", "b=0.95", "--seed", "7", "--out", str(out)]) == 0
    return out / "fake.txt"


def test_table1_moby(tmp_path):
    assert main(["table1", "--input", str(DATA / "moby_dick.txt"), "--scheme", "english-heuristic",
                 "--out", str(tmp_path)]) == 0
    rows = read_csv(tmp_path / "table1.csv")
    assert rows[0] == ["name", "a", "b", "SP", "M", "V_1", "L"]
    assert len(rows) == 2 and rows[1][0] == "moby_dick"
    assert 0.85 <= float(rows[1][2]) <= 1.10


def test_rrd_one_gram_nan(tmp_path, one_gram):
    out = tmp_path / "r"
    assert main(["rrd", "--input", str(one_gram), "--out", str(out)]) == 0
    assert json.loads((out / "scaling.json").read_text())["SP"] == "NAN"
    rows = read_csv(out / "rrd.csv")
    assert rows[0][:6] == ["x", "y", "n_w", "n_s", "residual", "layer_residual"]
    assert all(r[0] == r[1] for r in rows[1:])


def test_analyze_empty(tmp_path):
    empty = tmp_path / "empty.txt"
    empty.write_text("")
    out = tmp_path / "a"
    assert main(["analyze", "--input", str(empty), "--out", str(out)]) == 0
    assert read_csv(out / "word_frd.csv") == [["rank", "form", "freq", "normalized", "first"]]
    assert read_csv(out / "heaps.csv") == [["prefix_length", "vocabulary"]]
    assert json.loads((out / "analyze.json").read_text())["L"] == 0


def test_analyze_tiny(tmp_path, tiny_file):
    assert main(["analyze", "--input", str(tiny_file), "--out", str(tmp_path)]) == 0
    rows = read_csv(tmp_path / "syllable_frd.csv")
    assert [r[1] for r in rows[1:]] == ["go", "ing", "to"]


def test_multiple_inputs_concatenate(tmp_path, tiny_file):
    assert main(["analyze", "--input", str(tiny_file), "--input", str(tiny_file), "--out", str(tmp_path)]) == 0
    assert json.loads((tmp_path / "analyze.json").read_text())["L"] == 8


def test_network_and_linkcol(tmp_path, tiny_file):
    assert main(["network", "--input", str(tiny_file), "--out", str(tmp_path)]) == 0
    edges = read_csv(tmp_path / "edges.csv")
    assert len([e for e in edges[1:] if e[0] == "word"]) == 3
    metrics = json.loads((tmp_path / "metrics.json").read_text())
    assert metrics["isolated_s"] == 0
    assert main(["linkcol", "--input", str(tiny_file), "--out", str(tmp_path)]) == 0
    assert read_csv(tmp_path / "link.csv")[1] == ["1", "going", "4"]
    assert json.loads((tmp_path / "linkcol.json").read_text())["M"] == 4


def test_segeval(tmp_path):
    fk = tmp_path / "fk"
    assert main(["fakegen", "--vocab", "800", "--length", "5000", "--out", str(fk)]) == 0
    out = tmp_path / "s"
    assert main(["segeval", "--input", str(fk / "fake.txt"), "--out", str(out)]) == 0
    rows = read_csv(out / "segeval.csv")
    assert [r[0] for r in rows[1:]] == ["true-boundary", "greedy", "shifted", "random"]
    assert float(rows[1][2]) == 1.0
    assert (out / "segeval_random.json").exists()


def test_segeval_candidate(tmp_path, tiny_file):
    cand = tmp_path / "cand.txt"
    cand.write_text("go-ing go-ing go-to go\n")
    assert main(["segeval", "--input", str(tiny_file), "--candidate", str(cand), "--out", str(tmp_path)]) == 0
    rows = read_csv(tmp_path / "segeval.csv")
    assert rows[1][0] == "cand" and float(rows[1][2]) == 0.5


def test_seed_env_overrides(tmp_path, monkeypatch):
    monkeypatch.setenv("RANKRANK_SEED", "5")
    assert main(["fakegen", "--vocab", "50", "--length", "100", "--seed", "1", "--out", str(tmp_path)]) == 0
    assert json.loads((tmp_path / "fake_spec.json").read_text())["seed"] == 5


def test_svg(tmp_path, tiny_file):
    assert main(["rrd", "--input", str(tiny_file), "--format", "svg", "--out", str(tmp_path)]) == 0
    assert (tmp_path / "rrd.svg").exists() and not (tmp_path / "rrd.csv").exists()


def test_deterministic(tmp_path):
    runs = []
    for name in ("a", "b"):
        out = tmp_path / name
        assert main(["fakegen", "--vocab", "900", "--length", "6000", "--seed", "3", "--out", str(out)]) == 0
        for cmd in ("analyze", "rrd", "network", "linkcol", "segeval", "table1"):
            assert main([cmd, "--input", str(out / "fake.txt"), "--out", str(out / cmd), "--sample-size", "50",
                         "--format", "csv,json,svg"]) == 0
        runs.append(tree(out))
    assert runs[0] == runs[1]


def test_error_json(tmp_path, capsys):
    assert main(["rrd", "--input", str(tmp_path / "missing.txt"), "--out", str(tmp_path)]) == 1
    err = json.loads(capsys.readouterr().err)
    assert err["error"] == "FileNotFoundError" and err["command"] == "rrd"


def test_malformed_input(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("go-ing goi-ng")
    assert main(["analyze", "--input", str(bad), "--out", str(tmp_path)]) == 1
    assert json.loads(capsys.readouterr().err)["error"] == "MalformedInputError"


def test_bad_format(tmp_path, tiny_file, capsys):
    assert main(["rrd", "--input", str(tiny_file), "--format", "png", "--out", str(tmp_path)]) == 1
    assert "png" in json.loads(capsys.readouterr().err)["message"]


def test_console_script(tmp_path, tiny_file):
    proc = subprocess.run([sys.executable, "-m", "rankrank.cli", "linkcol", "--input", str(tiny_file),
                           "--out", str(tmp_path)], capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    proc = subprocess.run([sys.executable, "-m", "rankrank.cli", "linkcol"], capture_output=True, text=True,
                          cwd=tmp_path)
    assert proc.returncode == 1
    assert json.loads(proc.stderr)["message"] == "--input is required"
