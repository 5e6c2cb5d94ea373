import json
import math

import numpy as np

from rankrank.export import clean, svg_scatter, write_csv, write_json


def test_clean_non_finite():
    assert clean({"a": math.nan, "b": [math.inf, -math.inf], "c": np.float64(0.5)}) == {
        "a": "NAN", "b": ["INF", "-INF"], "c": 0.5,
    }


def test_clean_numpy():
    out = clean({"i": np.int64(3), "b": np.bool_(True), "arr": np.array([1, 2])})
    assert out == {"i": 3, "b": True, "arr": [1, 2]}
    assert type(out["i"]) is int and type(out["b"]) is bool


def test_csv_repr_floats(tmp_path):
    p = write_csv(tmp_path / "t.csv", ["x", "y"], [(1, 0.1), (2, math.nan), (True, 1 / 3)])
    assert p.read_text() == "x,y\n1,0.1\n2,NAN\n1,0.3333333333333333\n"


def test_json_sorted(tmp_path):
    p = write_json(tmp_path / "t.json", {"b": 1, "a": math.nan})
    assert list(json.loads(p.read_text())) == ["a", "b"]
    assert p.read_text().endswith("\n")


def test_svg(tmp_path):
    p = svg_scatter(tmp_path / "s.svg", [1, 10, 100], [5, 50, 500], log=True)
    text = p.read_text()
    assert text.startswith("<svg") and text.count("<circle") == 3
    assert svg_scatter(tmp_path / "e.svg", [], []).read_text().count("<circle") == 0
