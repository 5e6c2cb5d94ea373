"""Synthetic N-gram corpora of random characters ("fake Chinese").

Each word is ``n`` characters drawn from an alphabet of CJK ideographs
starting at U+4E00. ``vocab_size`` distinct words are drawn uniformly from
all ``alphabet_size ** n`` strings and given ranks 1..vocab_size in draw
order. Target probabilities come from a rank-frequency shape, and the
``length_L`` tokens are then realized multinomially (or by exact quota)
and shuffled.
"""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .ingest import Corpus

__all__ = ["FakeCorpus", "FakeSpec", "generate_fake_corpus", "resegment_fixed", "shape_weights", "strip_spaces"]

ALPHABET_START = 0x4E00
MAX_ALPHABET = 0x9FFF - ALPHABET_START + 1

DISTRIBUTIONS = ("zipf", "lognormal", "double_power", "exponential", "gaussian")


@dataclass(frozen=True)
class FakeSpec:
    """Recipe for one synthetic corpus.

    ``params`` holds the shape parameters; missing ones take these defaults:

    =============  =====================================================
    zipf           ``b=1.0``
    lognormal      ``mu=0.0, sigma=3.0``
    double_power   ``b1=0.8, b2=1.6, x_break=vocab_size // 10``
    exponential    ``lam`` such that ``N(vocab_size) / N(1) = 1e-3``
    gaussian       ``mu=0.0, sigma=vocab_size / 3``
    =============  =====================================================
    """

    n: int = 2
    alphabet_size: int = 3000
    vocab_size: int = 4000
    length_L: int = 20_000
    distribution: str = "zipf"
    params: dict = field(default_factory=dict)
    seed: int = 0
    exact_quota: bool = False

    def __post_init__(self):
        if self.n < 1 or self.alphabet_size < 1 or self.vocab_size < 1:
            raise ValueError("n, alphabet_size and vocab_size must be >= 1")
        if self.length_L < 0:
            raise ValueError("length_L must be >= 0")
        if self.alphabet_size > MAX_ALPHABET:
            raise ValueError(f"alphabet_size must be <= {MAX_ALPHABET}")
        if self.vocab_size > self.alphabet_size**self.n:
            raise ValueError(
                f"vocab_size {self.vocab_size} exceeds the {self.alphabet_size}^{self.n} possible words"
            )
        if self.distribution not in DISTRIBUTIONS:
            raise ValueError(f"unknown distribution {self.distribution!r}; expected one of {DISTRIBUTIONS}")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 bits")
        # validates parameter ranges early
        shape_weights(self.distribution, self.vocab_size, self.params)

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)


def shape_weights(distribution: str, vocab_size: int, params: dict | None = None) -> np.ndarray:
    """Unnormalized target weights at ranks 1..vocab_size."""
    p = dict(params or {})
    x = np.arange(1, vocab_size + 1, dtype=float)
    if distribution == "zipf":
        b = p.get("b", 1.0)
        if b <= 0:
            raise ValueError("zipf b must be > 0")
        w = x**-b
    elif distribution == "lognormal":
        mu, sigma = p.get("mu", 0.0), p.get("sigma", 3.0)
        if sigma <= 0:
            raise ValueError("lognormal sigma must be > 0")
        w = np.exp(-((np.log(x) - mu) ** 2) / (2 * sigma**2)) / x
    elif distribution == "double_power":
        b1, b2 = p.get("b1", 0.8), p.get("b2", 1.6)
        xb = p.get("x_break", max(1, vocab_size // 10))
        if b1 <= 0 or b2 <= 0 or xb < 1:
            raise ValueError("double_power needs b1, b2 > 0 and x_break >= 1")
        w = np.where(x <= xb, x**-b1, xb ** (b2 - b1) * x**-b2)
    elif distribution == "exponential":
        lam = p.get("lam", math.log(1e3) / max(vocab_size - 1, 1))
        if lam <= 0:
            raise ValueError("exponential lam must be > 0")
        w = np.exp(-lam * (x - 1))
    elif distribution == "gaussian":
        mu, sigma = p.get("mu", 0.0), p.get("sigma", vocab_size / 3)
        if sigma <= 0:
            raise ValueError("gaussian sigma must be > 0")
        w = np.exp(-((x - mu) ** 2) / (2 * sigma**2))
    else:
        raise ValueError(f"unknown distribution {distribution!r}")
    return w


@dataclass(frozen=True)
class FakeCorpus:
    spec: FakeSpec
    text: str
    corpus: Corpus
    vocabulary: tuple[str, ...]


def _quota(L: int, p: np.ndarray) -> np.ndarray:
    # largest remainder rounding
    raw = L * p
    counts = np.floor(raw).astype(np.int64)
    short = L - counts.sum()
    if short:
        order = np.argsort(-(raw - counts), kind="stable")
        counts[order[:short]] += 1
    return counts


def generate_fake_corpus(spec: FakeSpec) -> FakeCorpus:
    rng = np.random.default_rng(spec.seed)
    codes = rng.choice(spec.alphabet_size**spec.n, size=spec.vocab_size, replace=False)
    vocab = []
    for c in codes.tolist():
        chars = []
        for _ in range(spec.n):
            c, d = divmod(c, spec.alphabet_size)
            chars.append(chr(ALPHABET_START + d))
        vocab.append("".join(reversed(chars)))
    w = shape_weights(spec.distribution, spec.vocab_size, spec.params)
    p = w / w.sum()
    counts = _quota(spec.length_L, p) if spec.exact_quota else rng.multinomial(spec.length_L, p)
    stream = rng.permutation(np.repeat(np.arange(spec.vocab_size), counts))
    words = [vocab[i] for i in stream.tolist()]
    return FakeCorpus(spec, " ".join(words), Corpus(tuple(wd) for wd in words), tuple(vocab))


def strip_spaces(text: str, delimiter: str = " ") -> str:
    """Drop word delimiters, leaving the bare character stream."""
    return text.replace(delimiter, "")


def resegment_fixed(stream: str, n: int, offset: int = 0) -> Corpus:
    """Cut a character stream into ``n``-character words, one syllable each char.

    ``offset`` shifts every boundary right; the first word then has
    ``offset`` characters (when ``offset > 0``) and the last may be short.
    """
    bounds = [0, *range(offset if offset else n, len(stream), n), len(stream)]
    bounds = sorted(set(bounds))
    return Corpus(tuple(stream[a:b]) for a, b in zip(bounds, bounds[1:]) if b > a)
