import warnings
from pathlib import Path

import pytest

from rankrank.exceptions import FitUnavailableWarning
from rankrank.fakegen import FakeSpec, generate_fake_corpus
from rankrank.ingest import SegmentationScheme, tokenize

DATA = Path(__file__).parent / "data"
TINY = "go-ing go-ing go to-go"

# Fake corpora used across the suite; vocabulary sizes are chosen so the
# realized type counts sit near the published rows.
FAKE_SPECS = {
    "1gram": FakeSpec(n=1, alphabet_size=1541, vocab_size=1541, length_L=20_000, distribution="zipf",
                      params={"b": 0.95}, seed=7),
    "zipf": FakeSpec(n=2, vocab_size=7000, distribution="zipf", params={"b": 0.96}, seed=1),
    "lognormal": FakeSpec(n=2, vocab_size=4000, distribution="lognormal", seed=1),
    "double_power": FakeSpec(n=2, vocab_size=4000, length_L=200_000, distribution="double_power", seed=1),
    "exponential": FakeSpec(n=2, vocab_size=600, distribution="exponential", seed=1),
    "gaussian": FakeSpec(n=2, vocab_size=4500, distribution="gaussian", seed=1),
}


def english(path):
    return tokenize(Path(path).read_text(encoding="utf-8"), SegmentationScheme(kind="english-heuristic"))


@pytest.fixture(scope="session")
def tiny():
    return tokenize(TINY)


@pytest.fixture(scope="session")
def moby():
    return english(DATA / "moby_dick.txt")


@pytest.fixture(scope="session")
def alice():
    return english(DATA / "alice29.txt")


_fakes = {}


def fake(name):
    if name not in _fakes:
        _fakes[name] = generate_fake_corpus(FAKE_SPECS[name])
    return _fakes[name]


@pytest.fixture
def quiet():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", FitUnavailableWarning)
        yield


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
