import json

import numpy as np
import pytest

from rankrank.fakegen import (
    DISTRIBUTIONS,
    FakeSpec,
    generate_fake_corpus,
    resegment_fixed,
    shape_weights,
    strip_spaces,
)
from rankrank.freqstats import fit_zipf, rank_by_rule1
from rankrank.ingest import SegmentationScheme, tokenize
from rankrank.rrd import build_rrd, fit_scaling

from conftest import FAKE_SPECS, fake


def test_one_gram_row():
    f = fake("1gram")
    rrd = build_rrd(f.corpus)
    assert np.array_equal(rrd.x, rrd.y)
    assert np.isnan(fit_scaling(rrd).SP)
    assert f.corpus.length_L == 20_000
    assert all(len(w) == 1 for w in f.corpus.word_types)


def test_small_alphabet_zipf_exponent():
    f = generate_fake_corpus(FakeSpec(n=2, alphabet_size=100, vocab_size=4000, distribution="zipf",
                                      params={"b": 0.96}, seed=7))
    # the generator's exponent is read off the full rank range
    b = fit_zipf(rank_by_rule1(f.corpus), min_freq=None).b
    assert 0.90 <= b <= 1.00


def test_empty_length():
    f = generate_fake_corpus(FakeSpec(length_L=0))
    assert len(f.corpus) == 0 and f.text == ""


def test_deterministic():
    spec = FakeSpec(vocab_size=500, length_L=3000, seed=11)
    assert generate_fake_corpus(spec).text == generate_fake_corpus(spec).text
    other = generate_fake_corpus(FakeSpec(vocab_size=500, length_L=3000, seed=12))
    assert other.text != generate_fake_corpus(spec).text


def test_words_have_n_characters():
    f = fake("zipf")
    assert {len(w) for w in f.corpus.word_types} == {2}
    assert all(len(wt.syllables) == 2 for wt in f.corpus.word_types.values())
    assert set(f.corpus.word_types) <= set(f.vocabulary)


def test_text_round_trips_through_chinese_scheme():
    f = fake("gaussian")
    assert tokenize(f.text, SegmentationScheme(kind="chinese-char")) == f.corpus


def test_exact_quota():
    spec = FakeSpec(vocab_size=50, length_L=1000, distribution="zipf", exact_quota=True, seed=2)
    f = generate_fake_corpus(spec)
    w = shape_weights("zipf", 50)
    want = 1000 * w / w.sum()
    got = np.array([f.corpus.word_types[v].count if v in f.corpus.word_types else 0 for v in f.vocabulary])
    assert got.sum() == 1000
    assert np.all(np.abs(got - want) < 1)


@pytest.mark.parametrize("dist", DISTRIBUTIONS)
def test_shapes_decrease(dist):
    w = shape_weights(dist, 300)
    assert np.all(w > 0)
    assert np.all(np.diff(w) <= 1e-15)


def test_double_power_is_continuous():
    w = shape_weights("double_power", 1000, {"b1": 0.5, "b2": 2.0, "x_break": 100})
    assert w[100] / w[99] == pytest.approx((101 / 100) ** -2.0)
    assert w[99] == pytest.approx(100**-0.5)


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(vocab_size=0),
        dict(length_L=-1),
        dict(alphabet_size=10, vocab_size=101),
        dict(distribution="uniform"),
        dict(distribution="zipf", params={"b": -1}),
        dict(alphabet_size=30000),
        dict(seed=-1),
    ],
)
def test_spec_validation(kwargs):
    with pytest.raises(ValueError):
        FakeSpec(**kwargs)


def test_spec_json():
    assert json.loads(FAKE_SPECS["zipf"].to_json())["params"] == {"b": 0.96}


def test_strip_spaces():
    assert strip_spaces("ab cd") == "abcd"
    assert strip_spaces("") == ""


@pytest.mark.parametrize("n", [1, 2, 3])
def test_fixed_width_round_trip(n):
    f = generate_fake_corpus(FakeSpec(n=n, alphabet_size=40, vocab_size=30, length_L=2000, seed=n))
    back = resegment_fixed(strip_spaces(f.text), n)
    assert back == f.corpus


def test_shifted_resegmentation():
    c = resegment_fixed("abcdef", 2, offset=1)
    assert c.tokens == ("a", "bc", "de", "f")
