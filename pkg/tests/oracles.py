"""Slow, obviously-correct reimplementations used to cross-check the package.

Nothing here imports from rankrank beyond the Corpus container, so a bug in
the fast paths cannot leak into the reference values.
"""
from collections import Counter
from itertools import combinations


def brute_partitions(N):
    """All partitions of N as non-increasing tuples, by recursion over parts."""
    out = set()

    def rec(rest, parts):
        if rest == 0:
            out.add(tuple(sorted(parts, reverse=True)))
            return
        for k in range(1, rest + 1):
            rec(rest - k, parts + [k])

    if N <= 20:
        rec(N, [])
        return out
    # for larger N build from compositions bounded by the previous part
    def bounded(rest, cap):
        if rest == 0:
            yield ()
            return
        for k in range(min(rest, cap), 0, -1):
            for tail in bounded(rest - k, k):
                yield (k,) + tail

    return set(bounded(N, N))


def naive_ranks(corpus, unit):
    """Rank by (-count, first occurrence) with a plain sort."""
    table = corpus.word_types if unit == "word" else corpus.syllable_types
    forms = sorted(table, key=lambda f: (-table[f].count, table[f].first))
    return {f: i + 1 for i, f in enumerate(forms)}


def naive_rrd_points(corpus):
    wr, sr = naive_ranks(corpus, "word"), naive_ranks(corpus, "syllable")
    pts = set()
    for w, wt in corpus.word_types.items():
        for s in wt.syllables:
            pts.add((wr[w], sr[s]))
    return pts


def naive_col(corpus):
    return {s: sum(1 for wt in corpus.word_types.values() if s in wt.syllables) for s in corpus.syllable_types}


def naive_link(corpus):
    col = naive_col(corpus)
    return {w: sum(col[s] for s in set(wt.syllables)) for w, wt in corpus.word_types.items()}


def naive_intra_edges(corpus):
    """Word pairs sharing a syllable and syllable pairs sharing a word, by pairwise intersection."""
    words = list(corpus.word_types)
    sylls = {w: set(corpus.word_types[w].syllables) for w in words}
    word_edges = {frozenset((a, b)) for a, b in combinations(words, 2) if sylls[a] & sylls[b]}
    containers = {s: {w for w in words if s in sylls[w]} for s in corpus.syllable_types}
    syl_edges = {frozenset((a, b)) for a, b in combinations(list(containers), 2) if containers[a] & containers[b]}
    return word_edges, syl_edges


def naive_syllable_counts(corpus):
    c = Counter()
    for t in corpus.tokens:
        c.update(corpus.word_types[t].syllables)
    return dict(c)


def bfs_mean_path(adj):
    """All-pairs mean shortest path by breadth-first search on a dict-of-sets graph."""
    total = pairs = 0
    for s in adj:
        dist = {s: 0}
        frontier = [s]
        while frontier:
            nxt = []
            for u in frontier:
                for v in adj[u]:
                    if v not in dist:
                        dist[v] = dist[u] + 1
                        nxt.append(v)
            frontier = nxt
        total += sum(dist.values())
        pairs += len(dist) - 1
    return total / pairs
