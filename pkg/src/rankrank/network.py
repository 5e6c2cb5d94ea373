"""Two-layer word/syllable network and its topology metrics.

Word vertices are linked when they share a syllable type, syllable
vertices when they occur together in some word type, and every
(word, syllable) containment pair is an inter-layer edge. Edges are
unweighted for all metrics. The rank differences that weight same-layer
edges in the original adjacency tensor are kept in
:attr:`MultilayerNetwork.word_edge_rank_diff` and
:attr:`MultilayerNetwork.syllable_edge_rank_diff` for reference only.

Layers are addressed as ``"word"`` or ``"syllable"``. Vertices are indexed
by rank minus one.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
from scipy.sparse import csgraph

from .exceptions import FitUnavailableWarning
from .freqstats import rank_by_rule1
from .ingest import Corpus
from .validation import linear_fit

__all__ = [
    "DegreeDistribution",
    "MultilayerNetwork",
    "PowerLawFit",
    "average_path_length",
    "build_network",
    "clustering_coefficients",
    "degree_distribution",
    "fit_powerlaw_degree",
    "isolated_vertices",
    "network_metrics",
    "rewire_memberships",
]

LAYERS = ("word", "syllable")


@dataclass(frozen=True, eq=False)
class MultilayerNetwork:
    """Word layer, syllable layer and the containment edges between them.

    Attributes
    ----------
    word_vertices, syllable_vertices : tuple of str
        Forms in rank order.
    word_weights, syllable_weights : ndarray
        Vertex weights (frequencies).
    incidence : scipy.sparse.csr_matrix
        Boolean ``(n_words, n_syllables)`` containment matrix; its nonzeros
        are the inter-layer edges.
    word_adjacency, syllable_adjacency : scipy.sparse.csr_matrix
        Symmetric, loop-free boolean adjacency of each layer.
    """

    word_vertices: tuple[str, ...]
    syllable_vertices: tuple[str, ...]
    word_weights: np.ndarray
    syllable_weights: np.ndarray
    incidence: sp.csr_matrix
    word_adjacency: sp.csr_matrix
    syllable_adjacency: sp.csr_matrix

    def adjacency(self, layer: str) -> sp.csr_matrix:
        return self.word_adjacency if _layer(layer) == "word" else self.syllable_adjacency

    def vertices(self, layer: str) -> tuple[str, ...]:
        return self.word_vertices if _layer(layer) == "word" else self.syllable_vertices

    @property
    def inter_edges(self) -> list[tuple[str, str]]:
        coo = self.incidence.tocoo()
        order = np.lexsort((coo.col, coo.row))
        return [(self.word_vertices[coo.row[i]], self.syllable_vertices[coo.col[i]]) for i in order]

    @property
    def n_inter_edges(self) -> int:
        return int(self.incidence.nnz)

    def edges(self, layer: str) -> list[tuple[str, str]]:
        """Intra-layer edges as ``(u, v)`` with ``rank(u) < rank(v)``."""
        upper = sp.triu(self.adjacency(layer), k=1).tocoo()
        names = self.vertices(layer)
        order = np.lexsort((upper.col, upper.row))
        return [(names[upper.row[i]], names[upper.col[i]]) for i in order]

    def edge_set(self, layer: str) -> set[frozenset]:
        return {frozenset(e) for e in self.edges(layer)}

    @property
    def word_edge_rank_diff(self) -> sp.csr_matrix:
        return _rank_diff(self.word_adjacency)

    @property
    def syllable_edge_rank_diff(self) -> sp.csr_matrix:
        return _rank_diff(self.syllable_adjacency)


def _layer(layer: str) -> str:
    if layer not in LAYERS:
        raise ValueError(f"layer must be one of {LAYERS}, got {layer!r}")
    return layer


def _rank_diff(adj):
    coo = sp.triu(adj, k=1).tocoo()
    return sp.csr_matrix((np.abs(coo.col - coo.row).astype(float), (coo.row, coo.col)), shape=adj.shape)


def _project(m: sp.csr_matrix) -> sp.csr_matrix:
    a = (m @ m.T).tocsr()
    a.setdiag(0)
    a.eliminate_zeros()
    a.data[:] = 1
    return a.astype(bool).tocsr()


def _from_incidence(words, sylls, ww, sw, inc) -> MultilayerNetwork:
    inc = inc.astype(np.int64).tocsr()
    inc.data[:] = 1
    return MultilayerNetwork(
        word_vertices=tuple(words),
        syllable_vertices=tuple(sylls),
        word_weights=np.asarray(ww),
        syllable_weights=np.asarray(sw),
        incidence=inc.astype(bool).tocsr(),
        word_adjacency=_project(inc),
        syllable_adjacency=_project(inc.T.tocsr()),
    )


def build_network(corpus: Corpus) -> MultilayerNetwork:
    """Build both layers from a corpus; vertex ``i`` of a layer has rank ``i + 1``."""
    wfrd = rank_by_rule1(corpus, "word")
    sfrd = rank_by_rule1(corpus, "syllable")
    srank = sfrd.rank_of()
    rows, cols = [], []
    for i, form in enumerate(wfrd.forms):
        for s in dict.fromkeys(corpus.word_types[form].syllables):
            rows.append(i)
            cols.append(srank[s] - 1)
    inc = sp.csr_matrix(
        (np.ones(len(rows), dtype=np.int64), (rows, cols)), shape=(wfrd.bank_size, sfrd.bank_size)
    )
    return _from_incidence(wfrd.forms, sfrd.forms, wfrd.freqs, sfrd.freqs, inc)


def rewire_memberships(net: MultilayerNetwork, seed: int = 0, max_tries: int = 20) -> MultilayerNetwork:
    """Randomly reassign which words each syllable belongs to.

    Keeps every word's number of distinct syllables and every syllable's
    number of words (the bipartite degrees), and so the syllable
    frequencies up to which words carry them. Stubs are shuffled and
    duplicate pairs are re-drawn a few times, then dropped.
    """
    rng = np.random.default_rng(seed)
    coo = net.incidence.tocoo()
    rows = coo.row.copy()
    cols = coo.col.copy()
    for _ in range(max_tries):
        cols = rng.permutation(cols)
        key = rows.astype(np.int64) * net.incidence.shape[1] + cols
        _, first = np.unique(key, return_index=True)
        if len(first) == len(key):
            break
    key = rows.astype(np.int64) * net.incidence.shape[1] + cols
    _, first = np.unique(key, return_index=True)
    rows, cols = rows[first], cols[first]
    inc = sp.csr_matrix((np.ones(len(rows), dtype=np.int64), (rows, cols)), shape=net.incidence.shape)
    return _from_incidence(
        net.word_vertices, net.syllable_vertices, net.word_weights, net.syllable_weights, inc
    )


# ------------------------------------------------------------------- degrees


@dataclass(frozen=True)
class DegreeDistribution:
    """``P(k)`` over ``k >= 1`` (normalized) and the number of isolated vertices."""

    k: np.ndarray
    P: np.ndarray
    n_zero: int
    n_vertices: int

    def as_dict(self) -> dict[int, float]:
        return {int(a): float(b) for a, b in zip(self.k, self.P)}


def degrees(net: MultilayerNetwork, layer: str) -> np.ndarray:
    return np.diff(net.adjacency(layer).indptr)


def degree_distribution(net: MultilayerNetwork, layer: str) -> DegreeDistribution:
    deg = degrees(net, layer)
    nz = deg[deg > 0]
    counts = np.bincount(nz) if len(nz) else np.zeros(1, dtype=np.int64)
    k = np.flatnonzero(counts)
    P = counts[k] / counts.sum() if len(nz) else np.zeros(0)
    return DegreeDistribution(k, P, int((deg == 0).sum()), len(deg))


@dataclass(frozen=True)
class PowerLawFit:
    gamma: float
    goodness: float
    k_min: int
    n_points: int
    available: bool = True


def fit_powerlaw_degree(dist: DegreeDistribution, k_min: int = 2, min_points: int = 10) -> PowerLawFit:
    """Least squares on ``(ln k, ln P(k))`` for ``k >= k_min``.

    Returns ``gamma`` with ``P(k) ~ k^-gamma`` and ``R^2``. Needs at least
    ``min_points`` distinct degrees, otherwise the fit is unavailable.
    """
    mask = (dist.k >= k_min) & (dist.P > 0)
    n = int(mask.sum())
    if n < min_points:
        warnings.warn(f"power-law fit needs {min_points} distinct degrees, got {n}", FitUnavailableWarning)
        return PowerLawFit(math.nan, math.nan, k_min, n, available=False)
    slope, _, r2 = linear_fit(np.log(dist.k[mask]), np.log(dist.P[mask]))
    return PowerLawFit(-slope, r2, k_min, n)


# ---------------------------------------------------------------- clustering


@dataclass(frozen=True)
class ClusteringResult:
    """Local clustering per vertex, their mean, and the low-degree flags.

    ``mean`` averages over vertices with at least one neighbor, the
    zero-degree vertices being left out as in the degree distribution.
    """

    values: np.ndarray
    low_degree: np.ndarray
    mean: float


def _triangles(adj: sp.csr_matrix, chunk: int = 1000) -> np.ndarray:
    a = adj.astype(np.float64).tocsr()
    out = np.zeros(a.shape[0])
    for start in range(0, a.shape[0], chunk):
        blk = a[start : start + chunk]
        out[start : start + chunk] = np.asarray((blk @ a).multiply(blk).sum(axis=1)).ravel() / 2
    return out


def clustering_coefficients(net: MultilayerNetwork, layer: str) -> ClusteringResult:
    """Triangles over possible neighbor pairs; degree < 2 gives 0 and is flagged."""
    adj = net.adjacency(layer)
    deg = np.diff(adj.indptr).astype(float)
    tri = _triangles(adj)
    low = deg < 2
    vals = np.where(low, 0.0, 2 * tri / np.maximum(deg * (deg - 1), 1))
    connected = deg > 0
    mean = float(vals[connected].mean()) if connected.any() else math.nan
    return ClusteringResult(vals, low, mean)


# --------------------------------------------------------------- path length


@dataclass(frozen=True)
class PathLengthResult:
    mean: float
    component_size: int
    n_sources: int
    exact: bool


def average_path_length(
    net: MultilayerNetwork,
    layer: str,
    sample_size: int = 1000,
    seed: int = 0,
    exact_limit: int = 2000,
) -> PathLengthResult:
    """Mean shortest-path length inside the largest connected component.

    All pairs are used when the component has at most ``exact_limit``
    vertices; otherwise ``sample_size`` breadth-first sources are drawn with
    ``numpy.random.default_rng(seed)`` and averaged over all their targets.
    """
    adj = net.adjacency(layer)
    if adj.shape[0] == 0:
        return PathLengthResult(math.nan, 0, 0, True)
    _, labels = csgraph.connected_components(adj, directed=False)
    sizes = np.bincount(labels)
    big = int(sizes.argmax())
    members = np.flatnonzero(labels == big)
    n = len(members)
    if n < 2:
        warnings.warn("largest component has fewer than 2 vertices", FitUnavailableWarning)
        return PathLengthResult(math.nan, n, 0, True)
    sub = adj[members][:, members]
    if n <= exact_limit:
        sources = np.arange(n)
        exact = True
    else:
        rng = np.random.default_rng(seed)
        sources = np.sort(rng.choice(n, size=min(sample_size, n), replace=False))
        exact = False
    total = 0.0
    for start in range(0, len(sources), 200):
        d = csgraph.shortest_path(sub, method="D", unweighted=True, directed=False, indices=sources[start : start + 200])
        total += d.sum()
    return PathLengthResult(float(total / (len(sources) * (n - 1))), n, len(sources), exact)


def isolated_vertices(net: MultilayerNetwork, layer: str) -> set[str]:
    """Vertices without any same-layer neighbor."""
    names = net.vertices(layer)
    return {names[i] for i in np.flatnonzero(degrees(net, layer) == 0)}


def network_metrics(net: MultilayerNetwork, k_min: int = 2, sample_size: int = 1000, seed: int = 0) -> dict:
    """Summary used by the command line ``network`` subcommand."""
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", FitUnavailableWarning)
        fit = fit_powerlaw_degree(degree_distribution(net, "syllable"), k_min=k_min)
        lw = average_path_length(net, "word", sample_size, seed)
        ls = average_path_length(net, "syllable", sample_size, seed)
    return {
        "gamma": fit.gamma,
        "gamma_R2": fit.goodness,
        "mean_clustering_w": clustering_coefficients(net, "word").mean,
        "mean_clustering_s": clustering_coefficients(net, "syllable").mean,
        "L_w": lw.mean,
        "L_s": ls.mean,
        "isolated_w": len(isolated_vertices(net, "word")),
        "isolated_s": len(isolated_vertices(net, "syllable")),
    }
