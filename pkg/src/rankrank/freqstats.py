"""Frequency-rank distributions, Zipf and Heaps fits, AIC model comparison."""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize, minimize_scalar
from scipy.special import zeta

from .exceptions import FitUnavailableWarning
from .ingest import Corpus
from .validation import linear_fit

__all__ = [
    "BoundarySequences",
    "HeapsFit",
    "ModelComparison",
    "RankedDistribution",
    "ZipfFit",
    "boundary_lines",
    "compare_models_aic",
    "fit_heaps",
    "fit_zipf",
    "rank_by_rule1",
]


@dataclass(frozen=True)
class RankedDistribution:
    """Types of one unit sorted by rank (index 0 holds rank 1).

    ``freqs`` is non-increasing; equal frequencies are ordered by
    ascending first occurrence (Rule 1), or descending when the
    distribution was built with ``reverse_ties=True``.
    """

    unit: str
    forms: tuple[str, ...]
    freqs: np.ndarray
    first: np.ndarray

    @property
    def bank_size(self) -> int:
        return len(self.forms)

    @property
    def total(self) -> int:
        return int(self.freqs.sum())

    @property
    def ranks(self) -> np.ndarray:
        return np.arange(1, self.bank_size + 1)

    @property
    def normalized(self) -> np.ndarray:
        """Relative frequency ``N(x)`` (count over total count)."""
        if self.bank_size == 0:
            return np.zeros(0)
        return self.freqs / self.freqs.sum()

    def rank_of(self) -> dict[str, int]:
        return {f: i + 1 for i, f in enumerate(self.forms)}

    def __len__(self):
        return self.bank_size


def rank_by_rule1(corpus: Corpus, unit: str = "word", reverse_ties: bool = False) -> RankedDistribution:
    """Rank word or syllable types by frequency, ties by first occurrence.

    Parameters
    ----------
    corpus : Corpus
    unit : {"word", "syllable"}
    reverse_ties : bool, default False
        Give the *later* form the better rank among equal frequencies.
        Only useful for checking that the tie order matters.
    """
    if unit == "word":
        table = corpus.word_types
    elif unit == "syllable":
        table = corpus.syllable_types
    else:
        raise ValueError(f"unit must be 'word' or 'syllable', got {unit!r}")
    forms = list(table)
    freqs = np.fromiter((table[f].count for f in forms), dtype=np.int64, count=len(forms))
    first = np.fromiter((table[f].first for f in forms), dtype=np.int64, count=len(forms))
    tie = -first if reverse_ties else first
    order = np.lexsort((tie, -freqs))
    return RankedDistribution(
        unit=unit,
        forms=tuple(forms[i] for i in order),
        freqs=freqs[order],
        first=first[order],
    )


# ------------------------------------------------------------------------ Zipf


@dataclass(frozen=True)
class ZipfFit:
    a: float
    b: float
    goodness: float
    fit_range: tuple[int, int]
    available: bool = True

    def predict(self, x):
        return self.a * np.asarray(x, dtype=float) ** (-self.b)


_NAN_ZIPF = ZipfFit(math.nan, math.nan, math.nan, (0, 0), available=False)


def fit_zipf(
    frd: RankedDistribution,
    rank_range: tuple[int, int] | None = None,
    min_freq: int | None = 3,
    min_points: int = 10,
) -> ZipfFit:
    """Least-squares line through ``(ln x, ln N(x))``.

    ``N`` is normalized over the whole distribution. The window is
    ``rank_range`` (inclusive, 1-based) intersected with the ranks whose raw
    frequency is at least ``min_freq``; pass ``min_freq=None`` for the full
    range. The default drops types seen once or twice, whose long plateaus
    of tied ranks otherwise dominate the regression.
    """
    if frd.bank_size == 0:
        return _NAN_ZIPF
    x = frd.ranks
    mask = np.ones(frd.bank_size, dtype=bool)
    if rank_range is not None:
        lo, hi = rank_range
        mask &= (x >= lo) & (x <= hi)
    if min_freq is not None:
        mask &= frd.freqs >= min_freq
    if mask.sum() < min_points:
        warnings.warn(f"Zipf fit needs {min_points} ranks, got {int(mask.sum())}", FitUnavailableWarning)
        return _NAN_ZIPF
    slope, intercept, r2 = linear_fit(np.log(x[mask]), np.log(frd.normalized[mask]))
    xs = x[mask]
    return ZipfFit(math.exp(intercept), -slope, r2, (int(xs[0]), int(xs[-1])))


# ----------------------------------------------------------------------- Heaps


@dataclass(frozen=True)
class HeapsFit:
    kappa: float
    beta: float
    goodness: float
    available: bool = True

    def predict(self, L):
        return self.kappa * np.asarray(L, dtype=float) ** self.beta


def vocabulary_growth(corpus: Corpus) -> np.ndarray:
    """Vocabulary size after each prefix length 1..L."""
    seen = set()
    out = np.empty(len(corpus.tokens), dtype=np.int64)
    for i, t in enumerate(corpus.tokens):
        seen.add(t)
        out[i] = len(seen)
    return out


def fit_heaps(corpus: Corpus, n_points: int = 50, min_length: int = 1000, start: int = 1000) -> HeapsFit:
    """Regress ln V(L') on ln L' over log-spaced prefix lengths L'.

    The prefixes run from ``start`` (at most ``L / 10``) to ``L``. Very
    short prefixes are skipped because nearly every token is new there,
    which pulls ``beta`` towards 1.
    """
    L = len(corpus.tokens)
    if L < min_length:
        warnings.warn(f"Heaps fit needs L >= {min_length}, got {L}", FitUnavailableWarning)
        return HeapsFit(math.nan, math.nan, math.nan, available=False)
    growth = vocabulary_growth(corpus)
    lo = max(1, min(start, L // 10))
    lengths = np.unique(np.geomspace(lo, L, n_points).astype(np.int64))
    v = growth[lengths - 1]
    slope, intercept, r2 = linear_fit(np.log(lengths), np.log(v))
    return HeapsFit(math.exp(intercept), slope, r2)


# ------------------------------------------------------------------------- AIC


@dataclass(frozen=True)
class ModelComparison:
    aic: dict[str, float]
    params: dict[str, tuple[float, ...]]
    winner: str | None
    n_min: int
    n_samples: int
    tie: bool = False

    def ranking(self) -> list[str]:
        return sorted(self.aic, key=self.aic.get)


def _nll_power(d, n_min):
    ld = np.log(d).sum()
    n = len(d)
    res = minimize_scalar(
        lambda a: a * ld + n * math.log(zeta(a, n_min)), bounds=(1.0 + 1e-6, 10.0), method="bounded"
    )
    return res.fun, (float(res.x),)


def _nll_exponential(d, n_min):
    # geometric distribution on n_min, n_min + 1, ...
    excess = (d - n_min).mean()
    if excess == 0:
        return 0.0, (math.inf,)
    q = excess / (1.0 + excess)
    nll = -(len(d) * math.log(1 - q) + math.log(q) * (d - n_min).sum())
    return nll, (-math.log(q),)


def _nll_lognormal(d, n_min):
    ld = np.log(d)
    n = len(d)
    grid = np.log(np.arange(n_min, int(d.max()) * 10 + 1, dtype=float))

    def nll(p):
        mu, sigma = p[0], math.exp(p[1])

        def logw(l):
            return -l - (l - mu) ** 2 / (2 * sigma * sigma)

        return -(logw(ld).sum() - n * np.logaddexp.reduce(logw(grid)))

    starts = ([ld.mean(), math.log(ld.std() + 0.1)], [0.0, 0.0], [-5.0, 1.0])
    best = min((minimize(nll, s, method="Nelder-Mead") for s in starts), key=lambda r: r.fun)
    return float(best.fun), (float(best.x[0]), math.exp(best.x[1]))


_FAMILIES = {
    "power": (1, _nll_power),
    "lognormal": (2, _nll_lognormal),
    "exponential": (1, _nll_exponential),
}


def compare_models_aic(
    frd: RankedDistribution,
    models: tuple[str, ...] = ("power", "lognormal", "exponential"),
    n_min: int = 10,
    min_samples: int = 20,
) -> ModelComparison:
    """Compare heavy-tail families by AIC on the type frequencies ``n >= n_min``.

    The sample is the list of frequencies in the distribution (one value per
    type), each treated as an independent draw from a discrete law on
    ``n_min, n_min + 1, ...``:

    power
        ``p(n) ∝ n^-alpha`` normalized by the Hurwitz zeta function.
        A rank-frequency power law with exponent ``b`` gives
        ``alpha = 1 + 1/b``.
    lognormal
        ``p(n) ∝ exp(-(ln n - mu)^2 / 2 sigma^2) / n``, normalized by direct
        summation up to ten times the largest frequency.
    exponential
        Geometric, ``p(n) ∝ exp(-lambda n)``.

    ``AIC = 2k - 2 ln L_max`` and the lowest score wins.
    """
    d = frd.freqs[frd.freqs >= n_min].astype(float)
    if len(d) < min_samples:
        raise ValueError(f"AIC comparison needs {min_samples} types with frequency >= {n_min}, got {len(d)}")
    if np.all(d == d[0]):
        return ModelComparison({m: math.nan for m in models}, {}, None, n_min, len(d), tie=True)
    aic, params = {}, {}
    for name in models:
        k, nll_fn = _FAMILIES[name]
        nll, p = nll_fn(d, n_min)
        aic[name] = 2 * k + 2 * nll
        params[name] = p
    winner = min(aic, key=aic.get)
    return ModelComparison(aic, params, winner, n_min, len(d))


# -------------------------------------------------------------- block lines


@dataclass(frozen=True)
class BoundarySequences:
    """``V[n-1]`` / ``H[n-1]`` count word / syllable types with frequency >= n."""

    V: np.ndarray
    H: np.ndarray


def _at_least_counts(freqs: np.ndarray) -> np.ndarray:
    if len(freqs) == 0:
        return np.zeros(0, dtype=np.int64)
    hist = np.bincount(freqs)
    return np.cumsum(hist[::-1])[::-1][1:]


def boundary_lines(word_frd: RankedDistribution, syllable_frd: RankedDistribution) -> BoundarySequences:
    return BoundarySequences(_at_least_counts(word_frd.freqs), _at_least_counts(syllable_frd.freqs))
