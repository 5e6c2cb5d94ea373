"""Score word segmentations and compute the graphical index ``G L^0.15 / (M V_1)``.

Accuracy comes in two modes:

``corpus``
    Candidate and reference must segment the same character stream. A
    reference word counts as correct when the candidate has a word with
    exactly the same span. ``A`` = correct spans / reference words.
``bank``
    ``A`` = share of candidate word tokens found in a word bank.

Four reference segmenters are bundled for spaceless streams: fixed-width
``true_boundary``, ``shifted`` boundaries, ``random_boundaries`` and
``greedy_longest_match`` against a bank.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import asdict, dataclass

import numpy as np
from scipy.stats import spearmanr

from .exceptions import FitUnavailableWarning
from .fakegen import resegment_fixed
from .ingest import Corpus
from .linkcol import compute_link
from .rrd import build_rrd, fit_scaling

__all__ = [
    "SEGMENTERS",
    "SegEvalReport",
    "accuracy",
    "correlate",
    "evaluate_segmentation",
    "greedy_longest_match",
    "random_boundaries",
    "seg_index",
    "segmentation_battery",
    "shifted",
    "true_boundary",
]

INDEX_EXPONENT = 0.15


def _spans(corpus: Corpus) -> tuple[set[tuple[int, int]], str]:
    spans, pos, parts = set(), 0, []
    for t in corpus.tokens:
        spans.add((pos, pos + len(t)))
        pos += len(t)
        parts.append(t)
    return spans, "".join(parts)


def accuracy(candidate: Corpus, reference, mode: str | None = None) -> tuple[float, str]:
    """Share of correct units.

    Parameters
    ----------
    candidate : Corpus
    reference : Corpus or collection of str
        A corpus selects ``corpus`` mode, anything else is taken as a word
        bank.
    mode : {"corpus", "bank"}, optional
        Forces a mode. ``"bank"`` with a corpus reference uses its word types
        as the bank.

    Returns
    -------
    A, mode
    """
    if mode is None:
        mode = "corpus" if isinstance(reference, Corpus) else "bank"
    if mode == "corpus":
        if not isinstance(reference, Corpus):
            raise TypeError("corpus mode needs a reference Corpus")
        cand_spans, cand_text = _spans(candidate)
        ref_spans, ref_text = _spans(reference)
        if cand_text != ref_text:
            raise ValueError("candidate and reference segment different character streams")
        if not ref_spans:
            return math.nan, mode
        return len(cand_spans & ref_spans) / len(reference.tokens), mode
    if mode == "bank":
        bank = set(reference.word_types) if isinstance(reference, Corpus) else set(reference)
        toks = candidate.tokens
        if not toks:
            return math.nan, mode
        return sum(t in bank for t in toks) / len(toks), mode
    raise ValueError("mode must be 'corpus' or 'bank'")


def seg_index(G: float, L: float, M: float, V_1: float) -> float:
    """``G * L**0.15 / (M * V_1)``; every input must be positive."""
    for name, val in (("G", G), ("L", L), ("M", M), ("V_1", V_1)):
        if not val > 0:
            raise ValueError(f"{name} must be positive, got {val}")
    return G * L**INDEX_EXPONENT / (M * V_1)


@dataclass(frozen=True)
class SegEvalReport:
    algorithm: str
    corpus: str
    A: float
    A_bank: float
    G: float
    L: int
    M: int
    V_1: int
    index: float

    def to_dict(self) -> dict:
        return asdict(self)


def evaluate_segmentation(
    candidate: Corpus,
    reference: Corpus,
    algorithm: str = "",
    corpus_name: str = "",
    delta: float = 0.5,
    n_max: int | None = 20,
) -> SegEvalReport:
    """Accuracy in both modes plus the index computed on the candidate."""
    A, _ = accuracy(candidate, reference, "corpus")
    A_bank, _ = accuracy(candidate, reference, "bank")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", FitUnavailableWarning)
        fit = fit_scaling(build_rrd(candidate), delta=delta, n_max=n_max)
    _, M = compute_link(candidate)
    L, V_1 = candidate.length_L, len(candidate.word_types)
    try:
        idx = seg_index(fit.G, L, M, V_1)
    except ValueError:
        idx = math.nan
    return SegEvalReport(algorithm, corpus_name, A, A_bank, fit.G, L, M, V_1, idx)


def correlate(A, index) -> float:
    """Spearman rank correlation (average ranks for ties).

    NaN, with a warning, when fewer than 3 pairs are given or either
    variable is constant.
    """
    A = np.asarray(A, dtype=float)
    index = np.asarray(index, dtype=float)
    if len(A) != len(index):
        raise ValueError("A and index must have the same length")
    if len(A) < 3 or np.ptp(A) == 0 or np.ptp(index) == 0:
        warnings.warn("correlation undefined for fewer than 3 pairs or constant input", FitUnavailableWarning)
        return math.nan
    return float(spearmanr(A, index).statistic)


# ------------------------------------------------------------------ segmenters


def true_boundary(stream: str, n: int = 2, **_) -> Corpus:
    """Cut every ``n`` characters."""
    return resegment_fixed(stream, n)


def shifted(stream: str, n: int = 2, offset: int = 1, **_) -> Corpus:
    """Fixed-width cuts moved ``offset`` characters to the right."""
    return resegment_fixed(stream, n, offset=offset)


def random_boundaries(stream: str, n: int = 2, seed: int = 0, **_) -> Corpus:
    """Cut after each character independently with probability ``1/n``."""
    if not stream:
        return Corpus()
    rng = np.random.default_rng(seed)
    cuts = np.flatnonzero(rng.random(len(stream) - 1) < 1 / n) + 1
    bounds = [0, *cuts.tolist(), len(stream)]
    return Corpus(tuple(stream[a:b]) for a, b in zip(bounds, bounds[1:]))


def greedy_longest_match(stream: str, bank=(), max_len: int | None = None, **_) -> Corpus:
    """Left-to-right maximal matching; unknown characters become one-character words."""
    bank = set(bank)
    max_len = max_len or max((len(w) for w in bank), default=1)
    words, i = [], 0
    while i < len(stream):
        for k in range(min(max_len, len(stream) - i), 0, -1):
            if k == 1 or stream[i : i + k] in bank:
                words.append(tuple(stream[i : i + k]))
                i += k
                break
    return Corpus(words)


SEGMENTERS = {
    "true-boundary": true_boundary,
    "greedy": greedy_longest_match,
    "shifted": shifted,
    "random": random_boundaries,
}


def segmentation_battery(
    reference: Corpus,
    n: int,
    corpus_name: str = "",
    seed: int = 0,
    bank_fraction: float = 0.5,
    delta: float = 0.5,
    n_max: int | None = 20,
) -> list[SegEvalReport]:
    """Run the four bundled segmenters on the spaceless stream of ``reference``.

    The greedy segmenter's bank holds the word types seen in the first
    ``bank_fraction`` of the reference tokens, standing in for a word bank
    compiled from earlier text.
    """
    stream = "".join(reference.tokens)
    bank = set(reference.tokens[: int(len(reference.tokens) * bank_fraction)])
    out = []
    for name, fn in SEGMENTERS.items():
        cand = fn(stream, n=n, bank=bank, seed=seed)
        out.append(evaluate_segmentation(cand, reference, name, corpus_name, delta, n_max))
    return out
