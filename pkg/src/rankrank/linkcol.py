"""Collocation functions Col and Link, their logarithmic fits, and the Heaps link.

``Col(s)`` counts the distinct word types containing syllable ``s``.
``Link(w)`` sums ``Col`` over the distinct syllables of ``w``, so
``Link("AA") = Col("A")``. Re-ranking words by Link and syllables by Col
(ties by first occurrence) gives the new ranks ``x'`` and ``y'`` used by
the fits

    Link(x') = -C ln x' + D
    Col(y')  = (-E ln y' + F)^2

with ``D / C ~ ln V_1`` and ``F / E ~ ln H_1``. Taking ``M = Link(1) = D``
and Heaps' law ``V_1 = kappa L^beta`` yields ``M = C (beta ln L + ln kappa)``.
The published form has a bare ``kappa`` in place of ``ln kappa``; both are
evaluated by :func:`heaps_link_consistency`.
"""
from __future__ import annotations

import math
import warnings
from collections import Counter
from dataclasses import dataclass

import numpy as np

from .exceptions import FitUnavailableWarning
from .freqstats import HeapsFit
from .ingest import Corpus
from .validation import linear_fit

__all__ = [
    "ColFit",
    "HeapsLinkReport",
    "LinkColTables",
    "LinkFit",
    "compute_col",
    "compute_link",
    "fit_col_sqrtlog",
    "fit_link_log",
    "heaps_link_consistency",
    "linkcol_tables",
]


def compute_col(corpus: Corpus) -> dict[str, int]:
    """Number of distinct word types containing each syllable type."""
    col = Counter()
    for wt in corpus.word_types.values():
        col.update(set(wt.syllables))
    return {s: col[s] for s in corpus.syllable_types}


def compute_link(corpus: Corpus, col: dict[str, int] | None = None) -> tuple[dict[str, int], int]:
    """Link of every word type and the maximum ``M``."""
    col = compute_col(corpus) if col is None else col
    link = {w: sum(col[s] for s in set(wt.syllables)) for w, wt in corpus.word_types.items()}
    return link, max(link.values(), default=0)


def _ranked(values: dict[str, int], first: dict[str, int]) -> tuple[tuple[str, ...], np.ndarray]:
    forms = sorted(values, key=lambda f: (-values[f], first[f]))
    return tuple(forms), np.array([values[f] for f in forms], dtype=np.int64)


@dataclass(frozen=True, eq=False)
class LinkColTables:
    """Col and Link with their re-ranked sequences.

    ``link_values[i]`` is the Link of the word at new rank ``x' = i + 1``;
    ``col_values`` likewise for syllables and ``y'``.
    """

    col: dict[str, int]
    link: dict[str, int]
    M: int
    link_forms: tuple[str, ...]
    link_values: np.ndarray
    col_forms: tuple[str, ...]
    col_values: np.ndarray

    @property
    def link_ranked(self) -> list[tuple[int, int]]:
        return [(i + 1, int(v)) for i, v in enumerate(self.link_values)]

    @property
    def col_ranked(self) -> list[tuple[int, int]]:
        return [(i + 1, int(v)) for i, v in enumerate(self.col_values)]


def linkcol_tables(corpus: Corpus) -> LinkColTables:
    col = compute_col(corpus)
    link, M = compute_link(corpus, col)
    lf, lv = _ranked(link, {w: wt.first for w, wt in corpus.word_types.items()})
    cf, cv = _ranked(col, {s: st.first for s, st in corpus.syllable_types.items()})
    return LinkColTables(col, link, M, lf, lv, cf, cv)


@dataclass(frozen=True)
class LinkFit:
    C: float
    D: float
    goodness: float
    available: bool = True

    @property
    def ratio(self) -> float:
        """``D / C``, to compare with ``ln V_1``."""
        return self.D / self.C if self.C else math.nan


@dataclass(frozen=True)
class ColFit:
    E: float
    F: float
    goodness: float
    available: bool = True
    degenerate: bool = False

    @property
    def ratio(self) -> float:
        """``F / E``, to compare with ``ln H_1``."""
        return self.F / self.E if self.E else math.nan


def _values(seq) -> np.ndarray:
    arr = np.asarray(seq)
    if arr.ndim == 2:
        arr = arr[:, 1]
    return arr.astype(float)


def fit_link_log(link_ranked, min_types: int = 10) -> LinkFit:
    """Least squares for ``Link = -C ln x' + D``.

    ``link_ranked`` is either the Link values in new-rank order or a
    sequence of ``(x', Link)`` pairs.
    """
    y = _values(link_ranked)
    if len(y) < min_types:
        warnings.warn(f"Link fit needs {min_types} word types, got {len(y)}", FitUnavailableWarning)
        return LinkFit(math.nan, math.nan, math.nan, available=False)
    slope, intercept, r2 = linear_fit(np.log(np.arange(1, len(y) + 1)), y)
    return LinkFit(-slope, intercept, r2)


def fit_col_sqrtlog(col_ranked, min_types: int = 10) -> ColFit:
    """Least squares for ``sqrt(Col) = -E ln y' + F``.

    A constant ``Col`` (for instance every syllable private to one word)
    gives ``E = 0`` and is flagged ``degenerate``.
    """
    y = _values(col_ranked)
    if len(y) < min_types:
        warnings.warn(f"Col fit needs {min_types} syllable types, got {len(y)}", FitUnavailableWarning)
        return ColFit(math.nan, math.nan, math.nan, available=False)
    slope, intercept, r2 = linear_fit(np.log(np.arange(1, len(y) + 1)), np.sqrt(y))
    degenerate = bool(np.ptp(y) == 0)
    if degenerate:
        warnings.warn("Col is constant; the fit is flat", FitUnavailableWarning)
    return ColFit(-slope, intercept, r2, degenerate=degenerate)


@dataclass(frozen=True)
class HeapsLinkReport:
    """``M`` predicted from ``C`` and the Heaps fit, in two forms.

    ``derived = C (beta ln L + ln kappa)``; ``literal = C (beta ln L + kappa)``.
    Deviations are ``|predicted - M| / M``.
    """

    M: int
    derived: float
    literal: float
    derived_deviation: float
    literal_deviation: float

    def to_dict(self) -> dict:
        return {
            "M": self.M,
            "M_derived": self.derived,
            "M_literal": self.literal,
            "derived_deviation": self.derived_deviation,
            "literal_deviation": self.literal_deviation,
        }


def heaps_link_consistency(C: float, heaps: HeapsFit, L: int, M: int) -> HeapsLinkReport:
    if M <= 0 or L <= 0:
        raise ValueError("M and L must be positive")
    base = heaps.beta * math.log(L)
    derived = C * (base + math.log(heaps.kappa))
    literal = C * (base + heaps.kappa)
    return HeapsLinkReport(M, derived, literal, abs(derived - M) / M, abs(literal - M) / M)
