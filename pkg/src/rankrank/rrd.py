"""Rank-rank distribution of words and syllables, and its scaling structure.

Every distinct (word type, syllable type) containment pair gives one point
``(x, y)`` = (word rank, syllable rank), carrying the two raw frequencies
``n_w`` and ``n_s``. Ranks follow Rule 1 (frequency, then first occurrence),
so the vertical lines ``x = V_n`` and horizontal lines ``y = H_n`` cut the
plane into blocks, block ``(k, j)`` holding the points with ``n_w = k`` and
``n_s = j``.

Block coordinates
-----------------
Inside its word block a point sits at relative position
``u = (x - V_{k+1} - 1/2) / (V_k - V_{k+1})``, running from 0 at the left
(earliest) edge to 1 at the right edge. ``v`` is defined the same way from
``y`` and the ``H`` lines. Combining block index and position gives
continuous frequencies ``N(x) = k + 1/2 - u`` and ``M(y) = j + 1/2 - v``.

Layers
------
Points of one layer share the offset ``o = n_s - n_w``. The offset-0
points are the syllables private to one word (the ``f_1`` layer). Under
Rule 1 the points of layer ``o`` run from the lower-left to the upper-right
corner of each block ``(k, k + o)``, so the layer is ``M(y) = N(x) + o``,
and the layers are parallel. Because the ``H_n`` are close to geometric,
one exponential law ``y = A r^z`` with ``z = N(x) + o`` describes the
whole family.

The scaling proportion ``SP`` is the share of all points that lie on a
layer other than ``f_1``, a point being on its layer when
``|M(y) - N(x) - o| = |u - v| <= delta`` (``delta = 1/2``, half a layer
spacing, by default). Points off their layer are fog. ``f_1`` points are
excluded because ``f_1`` appears in every corpus, including ones with no
scaling at all (a corpus of one-syllable words is nothing but ``f_1``).
"""
from __future__ import annotations

import math
import warnings
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .exceptions import FitUnavailableWarning
from .freqstats import BoundarySequences, ZipfFit, boundary_lines, rank_by_rule1
from .ingest import Corpus
from .validation import check_corpus, linear_fit

__all__ = [
    "FogReport",
    "PartitionResult",
    "RrdPointSet",
    "ScalingFit",
    "block_positions",
    "build_rrd",
    "compute_sp",
    "extract_f1",
    "fit_exponential",
    "fit_scaling",
    "fog_geometry_checks",
    "fog_mask",
    "geometric_ratio",
    "layer_coordinate",
    "layer_curves",
    "partition_count",
    "predict_midpoint",
    "verify_frequency_conservation",
]

TIE_ORDERS = ("rule1", "reverse-word", "reverse-syllable", "reverse-both")
EPS_R = 1e-6


@dataclass(frozen=True, eq=False)
class RrdPointSet:
    """Points of a rank-rank distribution plus the block lines.

    Attributes
    ----------
    x, y : ndarray
        Word and syllable ranks (1-based).
    n_w, n_s : ndarray of int
        Raw frequencies of the word and of the syllable.
    f1 : ndarray of bool
        Whether the syllable belongs to exactly one word type.
    words, syllables : tuple of str
        Forms behind each point. Empty for synthetic point sets.
    boundaries : BoundarySequences
        ``V[n-1]`` and ``H[n-1]``, the numbers of word and syllable types
        with frequency at least ``n``.
    tie_order : str
        How equal frequencies were ranked, one of ``"rule1"``,
        ``"reverse-word"``, ``"reverse-syllable"``, ``"reverse-both"``.
    """

    x: np.ndarray
    y: np.ndarray
    n_w: np.ndarray
    n_s: np.ndarray
    f1: np.ndarray
    boundaries: BoundarySequences
    words: tuple[str, ...] = ()
    syllables: tuple[str, ...] = ()
    tie_order: str = "rule1"

    def __post_init__(self):
        n = len(self.x)
        if not all(len(a) == n for a in (self.y, self.n_w, self.n_s, self.f1)):
            raise ValueError("point arrays must have equal length")
        if n and np.any(self.n_s < self.n_w):
            bad = int(np.argmax(self.n_s < self.n_w))
            raise ValueError(f"point {bad} has syllable frequency below its word frequency")

    def __len__(self) -> int:
        return len(self.x)

    @property
    def offset(self) -> np.ndarray:
        """Layer index ``n_s - n_w`` (0 for the ``f_1`` layer)."""
        return self.n_s - self.n_w

    @property
    def n_layers(self) -> int:
        return len(np.unique(self.offset))

    def as_tuples(self) -> set[tuple[int, int]]:
        return {(int(a), int(b)) for a, b in zip(self.x, self.y)}


def _tie_flags(tie_order):
    if tie_order is True:
        tie_order = "reverse-both"
    elif tie_order in (False, None):
        tie_order = "rule1"
    if tie_order not in TIE_ORDERS:
        raise ValueError(f"tie_order must be one of {TIE_ORDERS}, got {tie_order!r}")
    return tie_order, tie_order in ("reverse-word", "reverse-both"), tie_order in ("reverse-syllable", "reverse-both")


def build_rrd(corpus: Corpus, tie_order: str = "rule1") -> RrdPointSet:
    """One point per distinct (word type, syllable type) containment pair.

    Parameters
    ----------
    corpus : Corpus
        Must contain at least one token.
    tie_order : str, default "rule1"
        ``"reverse-word"`` / ``"reverse-syllable"`` / ``"reverse-both"``
        give the later form the better rank among equal frequencies on the
        chosen axis. Only useful to test that Rule 1 matters.

    Returns
    -------
    RrdPointSet
        Points sorted by ``(x, y)``.
    """
    check_corpus(corpus, allow_empty=False)
    tie_order, rev_w, rev_s = _tie_flags(tie_order)
    wfrd = rank_by_rule1(corpus, "word", reverse_ties=rev_w)
    sfrd = rank_by_rule1(corpus, "syllable", reverse_ties=rev_s)
    wrank, srank = wfrd.rank_of(), sfrd.rank_of()
    col = _col_counts(corpus)
    rows = []
    for form, wt in corpus.word_types.items():
        for syl in dict.fromkeys(wt.syllables):
            rows.append((wrank[form], srank[syl], wt.count, corpus.syllable_types[syl].count, col[syl] == 1, form, syl))
    rows.sort(key=lambda r: (r[0], r[1]))
    x, y, nw, ns, f1, words, sylls = zip(*rows)
    return RrdPointSet(
        x=np.array(x, dtype=np.int64),
        y=np.array(y, dtype=np.int64),
        n_w=np.array(nw, dtype=np.int64),
        n_s=np.array(ns, dtype=np.int64),
        f1=np.array(f1, dtype=bool),
        boundaries=boundary_lines(wfrd, sfrd),
        words=words,
        syllables=sylls,
        tie_order=tie_order,
    )


def _col_counts(corpus: Corpus) -> Counter:
    col = Counter()
    for wt in corpus.word_types.values():
        col.update(set(wt.syllables))
    return col


def extract_f1(rrd: RrdPointSet, corpus: Corpus | None = None) -> RrdPointSet:
    """Points whose syllable belongs to exactly one word type.

    With a ``corpus`` the membership is recomputed from it rather than read
    from ``rrd.f1``; for such a syllable ``n_s`` is ``n_w`` times its
    multiplicity inside the word.
    """
    if corpus is not None and rrd.syllables:
        col = _col_counts(corpus)
        mask = np.array([col[s] == 1 for s in rrd.syllables], dtype=bool)
    else:
        mask = rrd.f1
    return _subset(rrd, mask)


def _subset(rrd: RrdPointSet, mask: np.ndarray) -> RrdPointSet:
    idx = np.flatnonzero(mask)
    pick = (lambda t: tuple(t[i] for i in idx)) if rrd.words else (lambda t: ())
    return RrdPointSet(
        rrd.x[idx], rrd.y[idx], rrd.n_w[idx], rrd.n_s[idx], rrd.f1[idx], rrd.boundaries,
        pick(rrd.words), pick(rrd.syllables), rrd.tie_order,
    )


def _relative(rank, freq, lines):
    # position inside the block column/row of frequency `freq`, 0 = earliest edge
    lines = np.asarray(lines, dtype=float)
    upper = lines[freq - 1]
    lower = np.append(lines, 0.0)[freq]
    return (rank - lower - 0.5) / (upper - lower)


def block_positions(rrd: RrdPointSet) -> tuple[np.ndarray, np.ndarray]:
    """Relative positions ``(u, v)`` of every point inside its block."""
    u = _relative(rrd.x, rrd.n_w, rrd.boundaries.V)
    v = _relative(rrd.y, rrd.n_s, rrd.boundaries.H)
    return u, v


def layer_coordinate(rrd: RrdPointSet) -> np.ndarray:
    """Layer-aligned word frequency ``z = N(x) + o``."""
    u, _ = block_positions(rrd)
    return rrd.n_s + 0.5 - u


# ------------------------------------------------------------------ scaling fit


@dataclass(frozen=True, eq=False)
class ScalingFit:
    """Exponential law ``y = A r^z`` for the layer family, and its scores.

    ``residuals`` are ``ln y - ln(A r^z)`` per point; ``layer_residuals``
    are ``v - u``, the signed distance from the point's own layer in units
    of one layer spacing (positive means above the layer).
    """

    A: float
    r: float
    G: float
    SP: float
    delta: float
    residuals: np.ndarray = field(repr=False)
    layer_residuals: np.ndarray = field(repr=False)
    available: bool = True

    @property
    def sp_defined(self) -> bool:
        return not math.isnan(self.SP)

    def predict(self, z):
        return self.A * self.r ** np.asarray(z, dtype=float)

    def to_dict(self) -> dict:
        return {"A": self.A, "r": self.r, "G": self.G, "SP": self.SP, "delta": self.delta}


def fit_exponential(n, y) -> tuple[float, float, float, np.ndarray]:
    """Least squares for ``ln y = ln A + n ln r``.

    Returns
    -------
    A, r, G, residuals
        ``G`` is the coefficient of determination; residuals are in
        natural-log units.
    """
    n = np.asarray(n, dtype=float)
    ly = np.log(np.asarray(y, dtype=float))
    slope, intercept, r2 = linear_fit(n, ly)
    return math.exp(intercept), math.exp(slope), r2, ly - (intercept + slope * n)


def fit_scaling(rrd: RrdPointSet, delta: float = 0.5, n_max: int | None = 20) -> ScalingFit:
    """Fit ``y = A r^z`` to the points, then score the layering.

    Parameters
    ----------
    rrd : RrdPointSet
    delta : float, default 0.5
        Half-width of a layer, in layer spacings, used by :func:`compute_sp`.
    n_max : int or None, default 20
        Only points with syllable frequency ``n_s <= n_max`` enter the
        regression, the range where the ``H_n`` behave geometrically.
        ``None`` uses every point. Residuals are reported for all points.

    Returns
    -------
    ScalingFit
        ``A``, ``r`` and ``G`` come from regressing ``ln y`` on
        ``z = N(x) + n_s - n_w``. Natural corpora give ``r < 1`` because
        rarer syllables have larger ranks. When ``z`` does not vary, the fit
        is unavailable and every number is NaN.
    """
    if not 0 < delta:
        raise ValueError("delta must be positive")
    u, v = block_positions(rrd)
    z = rrd.n_s + 0.5 - u
    win = np.ones(len(rrd), dtype=bool) if n_max is None else rrd.n_s <= n_max
    if win.sum() < 2 or np.ptp(z[win]) == 0:
        warnings.warn("scaling fit needs at least two distinct layer coordinates", FitUnavailableWarning)
        nan = np.full(len(rrd), math.nan)
        return ScalingFit(math.nan, math.nan, math.nan, math.nan, delta, nan, v - u, available=False)
    A, r, G, _ = fit_exponential(z[win], rrd.y[win])
    res = np.log(rrd.y.astype(float)) - (math.log(A) + z * math.log(r))
    fit = ScalingFit(A, r, G, math.nan, delta, res, v - u)
    sp = compute_sp(rrd, fit, delta)
    return ScalingFit(A, r, G, sp, delta, res, v - u)


def compute_sp(rrd: RrdPointSet, fit: ScalingFit, delta: float | None = None) -> float:
    """Share of points lying within ``delta`` of a layer other than ``f_1``.

    NaN when the fit is unavailable, when ``|ln r|`` is below ``1e-6``
    (no exponential family) or when the points occupy fewer than two
    layers.
    """
    delta = fit.delta if delta is None else delta
    if not fit.available or len(rrd) == 0:
        return math.nan
    if abs(math.log(fit.r)) <= EPS_R or rrd.n_layers < 2:
        return math.nan
    on_layer = np.abs(fit.layer_residuals) <= delta + 1e-12
    return float(np.mean(on_layer & ~rrd.f1))


def fog_mask(rrd: RrdPointSet, fit: ScalingFit, delta: float | None = None) -> np.ndarray:
    """Points off their own layer."""
    delta = fit.delta if delta is None else delta
    return np.abs(fit.layer_residuals) > delta + 1e-12


def layer_curves(rrd: RrdPointSet, fit: ScalingFit, offsets=None) -> dict[int, np.ndarray]:
    """Fitted layer ``y`` at every integer ``x`` in ``1..V_1``.

    Returns a mapping from offset to an array of length ``V_1``; offsets
    default to those present among the points.
    """
    V = rrd.boundaries.V
    if not len(V):
        return {}
    x = np.arange(1, V[0] + 1)
    # word frequency class of each rank: largest n with V_n >= x
    n_w = np.searchsorted(-V, -x, side="right")
    u = _relative(x, n_w, V)
    nx = n_w + 0.5 - u
    offsets = sorted(set(rrd.offset.tolist())) if offsets is None else offsets
    return {int(o): fit.predict(nx + o) for o in offsets}


# ------------------------------------------------------------ geometric ratio


def geometric_ratio(H, n_max: int = 20) -> tuple[float, float, bool]:
    """Geometric-mean ratio ``rho = H_{n+1} / H_n`` over ``n = 1..n_max``.

    Regresses ``ln H_n`` on ``n``; ``rho = exp(slope)``, so a decreasing
    sequence gives ``rho < 1``.

    Returns
    -------
    rho, R2, truncated
        ``truncated`` is True when fewer than ``n_max`` terms were
        available.
    """
    if n_max < 3:
        raise ValueError("n_max must be >= 3")
    H = np.asarray(H, dtype=float)
    H = H[H > 0]
    truncated = len(H) < n_max
    if truncated:
        warnings.warn(f"only {len(H)} terms available, fewer than n_max={n_max}", FitUnavailableWarning)
    h = H[:n_max]
    if len(h) < 2:
        return math.nan, math.nan, truncated
    slope, _, r2 = linear_fit(np.arange(1, len(h) + 1), np.log(h))
    return math.exp(slope), r2, truncated


def predict_midpoint(
    n: int,
    zipf: ZipfFit,
    boundaries: BoundarySequences,
    r: float,
    length_L: int,
    form: str = "published",
) -> tuple[float, float]:
    """Block midpoint estimate from the Zipf fit and the layer ratio.

    ``x`` is the middle of word block ``n``, ``(V_{n+1} + V_n) / 2``, and
    ``N(x) = L a x^{-b}`` is the Zipf fit expressed in raw counts, the unit
    in which :func:`fit_scaling` estimates ``r``.

    Parameters
    ----------
    form : {"published", "midpoint"}
        ``"published"`` evaluates ``H_1 (1 + 1/r) r^{N(x)}`` as published.
        ``"midpoint"`` halves it, which is exactly the middle of
        ``(H_{n+1}, H_n]`` when ``H_n = H_1 r^{n-1}``.

    Diagnostic only; nothing else in the package consumes it.
    """
    if form not in ("published", "midpoint"):
        raise ValueError("form must be 'published' or 'midpoint'")
    if not zipf.available:
        raise ValueError("a valid Zipf fit is required")
    if not (r > 0 and abs(math.log(r)) > EPS_R):
        raise ValueError("r must be positive and different from 1")
    V = boundaries.V
    if not 1 <= n <= len(V):
        raise ValueError(f"block n must be in 1..{len(V)}")
    v_next = V[n] if n < len(V) else 0
    xbar = (V[n - 1] + v_next) / 2
    N = length_L * zipf.a * xbar ** (-zipf.b)
    ybar = boundaries.H[0] * (1 + 1 / r) * r**N
    if form == "midpoint":
        ybar /= 2
    return float(xbar), float(ybar)


# ------------------------------------------------------------ partition theory


@dataclass(frozen=True)
class PartitionResult:
    N: int
    count: int
    partitions: tuple[tuple[int, ...], ...] | None = None


PARTITION_COUNT_MAX = 10_000
PARTITION_ENUM_MAX = 60


def _pentagonal_counts(N: int) -> list[int]:
    p = [1] + [0] * N
    for m in range(1, N + 1):
        total, k = 0, 1
        while True:
            g1 = k * (3 * k - 1) // 2
            if g1 > m:
                break
            sign = 1 if k % 2 else -1
            total += sign * p[m - g1]
            g2 = k * (3 * k + 1) // 2
            if g2 <= m:
                total += sign * p[m - g2]
            k += 1
        p[m] = total
    return p


def _enumerate(N: int, cap: int):
    if N == 0:
        yield ()
        return
    for first in range(min(N, cap), 0, -1):
        for rest in _enumerate(N - first, first):
            yield (first, *rest)


def partition_count(N: int, enumerate_all: bool = False) -> PartitionResult:
    """Number of ways to write ``N`` as a sum of positive integers.

    Uses Euler's pentagonal-number recurrence. With ``enumerate_all`` the
    partitions themselves are listed (non-increasing parts), which is only
    allowed for ``N <= 60``.
    """
    if not isinstance(N, (int, np.integer)) or isinstance(N, bool):
        raise TypeError("N must be an integer")
    if not 1 <= N <= PARTITION_COUNT_MAX:
        raise ValueError(f"N must be in 1..{PARTITION_COUNT_MAX}")
    count = _pentagonal_counts(int(N))[N]
    parts = None
    if enumerate_all:
        if N > PARTITION_ENUM_MAX:
            raise ValueError(f"enumeration is limited to N <= {PARTITION_ENUM_MAX}")
        parts = tuple(_enumerate(int(N), int(N)))
    return PartitionResult(int(N), count, parts)


def verify_frequency_conservation(corpus: Corpus) -> list[tuple[str, int, int]]:
    """Check that each syllable count is the multiplicity-weighted sum of its words.

    Returns
    -------
    list of (syllable, expected, recorded)
        Empty when every syllable count agrees.
    """
    expected = Counter()
    for wt in corpus.word_types.values():
        for s, m in Counter(wt.syllables).items():
            expected[s] += m * wt.count
    bad = []
    for s in sorted(set(expected) | set(corpus.syllable_types)):
        rec = corpus.syllable_types[s].count if s in corpus.syllable_types else 0
        if rec != expected[s]:
            bad.append((s, expected[s], rec))
    return bad


# ------------------------------------------------------------- fog geometry


@dataclass(frozen=True)
class FogReport:
    """Three qualitative observations about fog, with counterexamples.

    Each ``*_violations`` tuple lists indices into the point set.
    """

    left_of_f2_clear: bool
    lines_cross: bool
    upper_left_empty: bool
    left_of_f2_violations: tuple[int, ...] = ()
    lines_cross_violations: tuple[tuple[int, int], ...] = ()
    upper_left_violations: tuple[int, ...] = ()
    n_points: int = 0
    n_blocks: int = 0

    @property
    def upper_left_fraction(self) -> float:
        """Share of points above their layer (uniform scatter gives 1/8)."""
        return len(self.upper_left_violations) / self.n_points if self.n_points else 0.0

    @property
    def lines_cross_fraction(self) -> float:
        """Share of populated blocks whose earliest point is on its layer."""
        return 1 - len(self.lines_cross_violations) / self.n_blocks if self.n_blocks else 1.0

    def to_dict(self) -> dict:
        return {
            "left_of_f2_clear": self.left_of_f2_clear,
            "lines_cross": self.lines_cross,
            "upper_left_empty": self.upper_left_empty,
            "upper_left_fraction": self.upper_left_fraction,
            "lines_cross_fraction": self.lines_cross_fraction,
        }


def fog_geometry_checks(rrd: RrdPointSet, fit: ScalingFit | None = None, delta: float = 0.5) -> FogReport:
    """Test the three fog observations on a point set.

    ``left_of_f2_clear``
        No fog point lies left of the offset-1 layer, i.e. has
        ``M(y) - N(x) < 1 - delta``.
    ``lines_cross``
        In every populated block the earliest word's point is on its layer,
        so each pair of block lines meets a layer at the lower-left corner.
    ``upper_left_empty``
        No point lies more than ``delta`` above its own layer
        (``v - u > delta``).

    The booleans are strict. Natural text depletes the upper-left of each
    block strongly without emptying it completely, so the report also
    carries the violating fractions.
    """
    if len(rrd) == 0:
        return FogReport(True, True, True)
    if fit is None:
        u, v = block_positions(rrd)
        lres = v - u
    else:
        lres = fit.layer_residuals
    fog = np.abs(lres) > delta + 1e-12
    cont_offset = rrd.offset - lres
    left = np.flatnonzero(fog & ~rrd.f1 & (cont_offset < 1 - delta))
    upper = np.flatnonzero(lres > delta + 1e-12)
    broken = []
    order = np.lexsort((rrd.y, rrd.x))
    seen = set()
    for i in order:
        key = (int(rrd.n_w[i]), int(rrd.n_s[i]))
        if key in seen:
            continue
        seen.add(key)
        if fog[i]:
            broken.append(key)
    return FogReport(
        left_of_f2_clear=not len(left),
        lines_cross=not broken,
        upper_left_empty=not len(upper),
        left_of_f2_violations=tuple(left.tolist()),
        lines_cross_violations=tuple(broken),
        upper_left_violations=tuple(upper.tolist()),
        n_points=len(rrd),
        n_blocks=len(seen),
    )
