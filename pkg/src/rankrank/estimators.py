"""scikit-learn style wrappers around the functional API.

The estimators take a :class:`~rankrank.ingest.Corpus` (or raw text, which
is tokenized with the estimator's ``scheme``) as ``X`` and expose the fitted
quantities as trailing-underscore attributes.
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .freqstats import fit_heaps, fit_zipf, rank_by_rule1
from .ingest import Corpus, SegmentationScheme, tokenize
from .linkcol import fit_col_sqrtlog, fit_link_log, linkcol_tables
from .rrd import build_rrd, fit_scaling

__all__ = ["HeapsRegressor", "LinkColModel", "ScalingStructure", "SyllableTokenizer", "ZipfRegressor"]


def _as_corpus(X, scheme_kind="presegmented", syll_delim="-", ngram=None) -> Corpus:
    if isinstance(X, Corpus):
        return X
    if isinstance(X, str):
        return tokenize(X, SegmentationScheme(kind=scheme_kind, syll_delim=syll_delim, n=ngram))
    raise TypeError(f"expected a Corpus or str, got {type(X).__name__}")


class _CorpusInput:
    def _corpus(self, X):
        return _as_corpus(X, self.scheme, self.syll_delim, self.ngram)


class SyllableTokenizer(TransformerMixin, BaseEstimator):
    """Turn raw texts into corpora.

    Parameters
    ----------
    scheme : str, default "english-heuristic"
    syll_delim : str, default "-"
    ngram : int, optional
        Word length for the ``ngram-fixed`` scheme.
    """

    def __init__(self, scheme="english-heuristic", syll_delim="-", ngram=None):
        self.scheme = scheme
        self.syll_delim = syll_delim
        self.ngram = ngram

    def fit(self, X=None, y=None):
        # validates the parameters; nothing is learned
        SegmentationScheme(kind=self.scheme, syll_delim=self.syll_delim, n=self.ngram)
        self.n_features_in_ = 1
        return self

    def transform(self, X):
        check_is_fitted(self, "n_features_in_")
        if isinstance(X, str):
            X = [X]
        return [_as_corpus(t, self.scheme, self.syll_delim, self.ngram) for t in X]


class ZipfRegressor(_CorpusInput, BaseEstimator):
    """Least-squares Zipf fit ``N(x) = a x^-b`` on one unit of a corpus."""

    def __init__(self, unit="word", min_freq=3, rank_range=None, scheme="presegmented", syll_delim="-", ngram=None):
        self.unit = unit
        self.min_freq = min_freq
        self.rank_range = rank_range
        self.scheme = scheme
        self.syll_delim = syll_delim
        self.ngram = ngram

    def fit(self, X, y=None):
        self.frd_ = rank_by_rule1(self._corpus(X), self.unit)
        fit = fit_zipf(self.frd_, rank_range=self.rank_range, min_freq=self.min_freq)
        self.a_, self.b_, self.goodness_ = fit.a, fit.b, fit.goodness
        self.fit_range_ = fit.fit_range
        self.result_ = fit
        return self

    def predict(self, ranks):
        check_is_fitted(self, "result_")
        return self.result_.predict(ranks)


class HeapsRegressor(_CorpusInput, BaseEstimator):
    """Heaps fit ``V(L) = kappa L^beta`` over prefixes of a corpus."""

    def __init__(self, n_points=50, min_length=1000, start=1000, scheme="presegmented", syll_delim="-", ngram=None):
        self.n_points = n_points
        self.min_length = min_length
        self.start = start
        self.scheme = scheme
        self.syll_delim = syll_delim
        self.ngram = ngram

    def fit(self, X, y=None):
        fit = fit_heaps(self._corpus(X), n_points=self.n_points, min_length=self.min_length, start=self.start)
        self.kappa_, self.beta_, self.goodness_ = fit.kappa, fit.beta, fit.goodness
        self.result_ = fit
        return self

    def predict(self, L):
        check_is_fitted(self, "result_")
        return self.result_.predict(L)


class ScalingStructure(_CorpusInput, TransformerMixin, BaseEstimator):
    """Rank-rank distribution with its exponential layer fit.

    ``transform`` returns one row per point:
    ``(x, y, n_w, n_s, residual, layer_residual, on_f1)``; pass ``None``
    to get the rows of the fitted corpus.
    ``score`` returns SP (NaN when undefined).
    """

    def __init__(self, delta=0.5, n_max=20, tie_order="rule1", scheme="presegmented", syll_delim="-", ngram=None):
        self.delta = delta
        self.n_max = n_max
        self.tie_order = tie_order
        self.scheme = scheme
        self.syll_delim = syll_delim
        self.ngram = ngram

    def fit(self, X, y=None):
        self.rrd_ = build_rrd(self._corpus(X), tie_order=self.tie_order)
        self.result_ = fit_scaling(self.rrd_, delta=self.delta, n_max=self.n_max)
        self.A_, self.r_, self.G_, self.SP_ = self.result_.A, self.result_.r, self.result_.G, self.result_.SP
        return self

    def transform(self, X):
        check_is_fitted(self, "result_")
        if X is None:
            rrd, fit = self.rrd_, self.result_
        else:
            rrd = build_rrd(self._corpus(X), tie_order=self.tie_order)
            fit = fit_scaling(rrd, delta=self.delta, n_max=self.n_max)
        return np.column_stack(
            [rrd.x, rrd.y, rrd.n_w, rrd.n_s, fit.residuals, fit.layer_residuals, rrd.f1.astype(float)]
        )

    def score(self, X, y=None):
        rrd = build_rrd(self._corpus(X), tie_order=self.tie_order)
        return fit_scaling(rrd, delta=self.delta, n_max=self.n_max).SP


class LinkColModel(_CorpusInput, BaseEstimator):
    """Link and Col logarithmic fits: ``C, D`` for Link and ``E, F`` for Col."""

    def __init__(self, scheme="presegmented", syll_delim="-", ngram=None):
        self.scheme = scheme
        self.syll_delim = syll_delim
        self.ngram = ngram

    def fit(self, X, y=None):
        self.tables_ = linkcol_tables(self._corpus(X))
        lf = fit_link_log(self.tables_.link_values)
        cf = fit_col_sqrtlog(self.tables_.col_values)
        self.C_, self.D_, self.E_, self.F_ = lf.C, lf.D, cf.E, cf.F
        self.M_ = self.tables_.M
        self.link_fit_, self.col_fit_ = lf, cf
        return self
