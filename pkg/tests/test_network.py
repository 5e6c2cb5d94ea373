import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rankrank.ingest import Corpus, tokenize
from rankrank.network import (
    DegreeDistribution,
    average_path_length,
    build_network,
    clustering_coefficients,
    degree_distribution,
    degrees,
    fit_powerlaw_degree,
    isolated_vertices,
    network_metrics,
    rewire_memberships,
)
from rankrank.rrd import build_rrd, extract_f1

from conftest import fake
from oracles import bfs_mean_path, naive_intra_edges


def pairs(*ps):
    return {frozenset(p) for p in ps}


class TestEdges:
    def test_tiny(self, tiny):
        net = build_network(tiny)
        assert net.edge_set("word") == pairs(("going", "go"), ("going", "togo"), ("go", "togo"))
        assert net.edge_set("syllable") == pairs(("go", "ing"), ("to", "go"))

    def test_one_word(self):
        net = build_network(tokenize("ba-di ba-di"))
        assert net.edges("word") == []
        assert net.edge_set("syllable") == pairs(("ba", "di"))
        assert build_network(tokenize("ba")).edges("syllable") == []

    def test_one_gram_fake(self):
        assert build_network(fake("1gram").corpus).edges("word") == []

    def test_edges_listed_by_rank(self, tiny):
        net = build_network(tiny)
        rank = {w: i for i, w in enumerate(net.vertices("word"))}
        assert all(rank[u] < rank[v] for u, v in net.edges("word"))

    def test_inter_edges_are_rrd_points(self, alice):
        assert build_network(alice).n_inter_edges == len(build_rrd(alice))

    def test_bad_layer(self, tiny):
        with pytest.raises(ValueError):
            build_network(tiny).adjacency("letter")


@settings(max_examples=50, deadline=None)
@given(st.lists(st.lists(st.sampled_from(list("abcdefghij")), min_size=1, max_size=3, unique=True),
                min_size=1, max_size=40))
def test_edges_match_pairwise_intersection(ws):
    seen = {}
    c = Corpus(seen.setdefault("".join(w), w) for w in ws)
    net = build_network(c)
    we, se = naive_intra_edges(c)
    assert net.edge_set("word") == we
    assert net.edge_set("syllable") == se
    assert net.n_inter_edges == len(build_rrd(c))


class TestDegrees:
    def test_tiny_word_layer(self, tiny):
        d = degree_distribution(build_network(tiny), "word")
        assert d.as_dict() == {2: 1.0}
        assert d.n_zero == 0

    def test_hub_syllable(self):
        m = 6
        c = tokenize(" ".join(f"h-{s}" for s in "abcdef"[:m]))
        net = build_network(c)
        assert set(degrees(net, "word").tolist()) == {m - 1}
        d = dict(zip(net.vertices("syllable"), degrees(net, "syllable")))
        assert d["h"] == m

    def test_zero_degree_reported_apart(self):
        d = degree_distribution(build_network(tokenize("a-b c")), "word")
        assert d.n_zero == 2 and len(d.k) == 0

    def test_exact_power_law(self):
        k = np.arange(1, 200)
        P = k**-2.0
        fit = fit_powerlaw_degree(DegreeDistribution(k, P / P.sum(), 0, 1000))
        assert fit.gamma == pytest.approx(2.0, abs=1e-6)
        assert fit.goodness == pytest.approx(1.0)

    def test_poisson_not_scale_free(self):
        rng = np.random.default_rng(0)
        d = rng.poisson(10, 5000)
        counts = np.bincount(d[d > 0])
        k = np.flatnonzero(counts)
        fit = fit_powerlaw_degree(DegreeDistribution(k, counts[k] / counts.sum(), 0, 5000))
        assert fit.goodness < 0.3

    def test_too_few_degrees(self, tiny, quiet):
        assert not fit_powerlaw_degree(degree_distribution(build_network(tiny), "word")).available


class TestClustering:
    def test_triangle(self):
        res = clustering_coefficients(build_network(tokenize("a-b b-c c-a")), "word")
        assert res.values.tolist() == [1.0, 1.0, 1.0]
        assert res.mean == 1.0

    def test_path(self):
        net = build_network(tokenize("a-b b-c c-d"))
        res = clustering_coefficients(net, "word")
        vals = dict(zip(net.vertices("word"), res.values))
        assert vals["bc"] == 0.0
        low = dict(zip(net.vertices("word"), res.low_degree))
        assert low["ab"] and low["cd"] and not low["bc"]

    def test_against_definition(self, tiny):
        # syllable layer of the tiny corpus is the path ing - go - to
        res = clustering_coefficients(build_network(tiny), "syllable")
        assert res.values.tolist() == [0.0, 0.0, 0.0]


class TestPathLength:
    def test_complete_graph(self):
        net = build_network(tokenize("h-a h-b h-c h-d h-e"))
        assert average_path_length(net, "word").mean == 1.0

    def test_path_graph(self):
        net = build_network(tokenize("a-b b-c c-d"))
        assert average_path_length(net, "word").mean == pytest.approx(4 / 3)

    def test_matches_bfs(self):
        rng = np.random.default_rng(5)
        sylls = [f"s{i}" for i in range(40)]
        words = {tuple(rng.choice(sylls, size=rng.integers(1, 4), replace=False)) for _ in range(150)}
        c = Corpus(sorted(words))
        net = build_network(c)
        res = average_path_length(net, "word")
        adj = net.adjacency("word")
        names = net.vertices("word")
        graph = {names[i]: {names[j] for j in adj[i].indices} for i in range(len(names))}
        # restrict the oracle to the largest component
        comp, todo = [], set(graph)
        while todo:
            s = todo.pop()
            seen, stack = {s}, [s]
            while stack:
                for v in graph[stack.pop()]:
                    if v not in seen:
                        seen.add(v)
                        stack.append(v)
            todo -= seen
            comp.append(seen)
        big = max(comp, key=len)
        assert res.exact and res.component_size == len(big)
        assert res.mean == pytest.approx(bfs_mean_path({v: graph[v] for v in big}))

    def test_sampled_is_seeded(self, alice):
        net = build_network(alice)
        a = average_path_length(net, "word", sample_size=50, seed=3, exact_limit=10)
        b = average_path_length(net, "word", sample_size=50, seed=3, exact_limit=10)
        assert a == b and not a.exact and a.n_sources == 50

    def test_isolated_only(self, quiet):
        res = average_path_length(build_network(tokenize("a b")), "word")
        assert math.isnan(res.mean)


class TestIsolated:
    def test_tiny_syllables(self, tiny):
        assert isolated_vertices(build_network(tiny), "syllable") == set()

    def test_one_gram_words(self):
        f = fake("1gram")
        net = build_network(f.corpus)
        assert isolated_vertices(net, "word") == set(f.corpus.word_types)

    def test_isolated_syllables_form_words_alone(self, alice):
        iso = isolated_vertices(build_network(alice), "syllable")
        assert iso
        for wt in alice.word_types.values():
            if iso & set(wt.syllables):
                assert len(set(wt.syllables)) == 1

    def test_moby_isolated_within_f1(self, moby):
        iso = isolated_vertices(build_network(moby), "syllable")
        f1 = set(extract_f1(build_rrd(moby), moby).syllables)
        assert iso <= f1

    @pytest.mark.xfail(strict=True, reason="an f1 syllable of a multi-syllable word has neighbours, "
                                            "so the sets differ; see the decisions log")
    def test_moby_isolated_equals_f1(self, moby):
        iso = isolated_vertices(build_network(moby), "syllable")
        assert iso == set(extract_f1(build_rrd(moby), moby).syllables)


class TestNovelScale:
    def test_moby_word_layer(self, moby):
        net = build_network(moby)
        assert clustering_coefficients(net, "word").mean >= 0.4
        assert 2 <= average_path_length(net, "word", sample_size=200, seed=0).mean <= 6

    def test_metrics_keys(self, alice):
        m = network_metrics(build_network(alice), sample_size=100)
        assert set(m) >= {"gamma", "mean_clustering_w", "mean_clustering_s", "L_w", "L_s", "isolated_w", "isolated_s"}


def test_rewire_keeps_bipartite_degrees(alice):
    net = build_network(alice)
    new = rewire_memberships(net, seed=1)
    lost = net.incidence.nnz - new.incidence.nnz
    assert lost <= 0.01 * net.incidence.nnz
    old_w = np.asarray(net.incidence.sum(axis=1)).ravel()
    new_w = np.asarray(new.incidence.sum(axis=1)).ravel()
    assert np.abs(old_w - new_w).sum() == lost
    assert rewire_memberships(net, seed=1).edge_set("word") == new.edge_set("word")
