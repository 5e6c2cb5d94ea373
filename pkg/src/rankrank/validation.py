"""Input checks and small numeric helpers shared by the estimators."""
from __future__ import annotations

import math

import numpy as np

from .ingest import Corpus


def check_corpus(corpus, allow_empty=True) -> Corpus:
    if not isinstance(corpus, Corpus):
        raise TypeError(f"expected a Corpus, got {type(corpus).__name__}")
    if not allow_empty and len(corpus) == 0:
        raise ValueError("corpus is empty")
    return corpus


def check_positive(**values) -> None:
    for name, v in values.items():
        if not (isinstance(v, (int, float, np.integer, np.floating)) and math.isfinite(v) and v > 0):
            raise ValueError(f"{name} must be a positive finite number, got {v!r}")


def linear_fit(x, y) -> tuple[float, float, float]:
    """Ordinary least squares ``y = slope * x + intercept``.

    Returns ``(slope, intercept, r2)``. ``r2`` is NaN when ``y`` has zero
    variance. Raises ``ValueError`` when ``x`` has zero variance.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    xm, ym = x.mean(), y.mean()
    sxx = ((x - xm) ** 2).sum()
    if sxx == 0:
        raise ValueError("regressor has zero variance")
    slope = ((x - xm) * (y - ym)).sum() / sxx
    intercept = ym - slope * xm
    syy = ((y - ym) ** 2).sum()
    if syy == 0:
        return float(slope), float(intercept), math.nan
    rss = ((y - (slope * x + intercept)) ** 2).sum()
    return float(slope), float(intercept), float(max(0.0, 1.0 - rss / syy))
