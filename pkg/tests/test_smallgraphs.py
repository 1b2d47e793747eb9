"""Isomorphism testing and the exhaustive connected-graph corpus."""

import numpy as np
import pytest

from spectralcert.errors import CapacityError
from spectralcert.graphs import (
    Graph,
    build_graph,
    complete_graph,
    cycle_graph,
    path_graph,
    star_graph,
)
from spectralcert.smallgraphs import are_isomorphic, connected_graphs


def _permuted(g, perm):
    adj = np.zeros((g.n, g.n), dtype=bool)
    for u, v in g.edges():
        adj[perm[u], perm[v]] = adj[perm[v], perm[u]] = True
    return Graph(g.n, adj)


def test_isomorphic_relabelings():
    rng = np.random.default_rng(17)
    for base in [path_graph(6), cycle_graph(7), star_graph(5), complete_graph(5)]:
        perm = list(range(base.n))
        rng.shuffle(perm)
        assert are_isomorphic(base, _permuted(base, perm))


def test_non_isomorphic_pairs():
    assert not are_isomorphic(path_graph(4), star_graph(3))
    assert not are_isomorphic(cycle_graph(6),
                              build_graph(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]))
    # same degree sequence, different structure: C6 vs two triangles
    assert not are_isomorphic(path_graph(5), build_graph(5, [(0, 1), (1, 2), (2, 3), (3, 1)]))


def test_isomorphism_cap():
    with pytest.raises(CapacityError):
        are_isomorphic(complete_graph(13), complete_graph(13))


def test_connected_corpus_counts():
    # classic counts of connected graphs up to isomorphism
    expected = {1: 1, 2: 1, 3: 2, 4: 6, 5: 21, 6: 112, 7: 853}
    for n, count in expected.items():
        assert len(connected_graphs(n)) == count


def test_corpus_members_are_connected_and_distinct():
    from spectralcert.graphs import is_connected

    graphs = connected_graphs(5)
    assert all(is_connected(g) for g in graphs)
    for i in range(len(graphs)):
        for j in range(i + 1, len(graphs)):
            assert not are_isomorphic(graphs[i], graphs[j])


def test_corpus_cap():
    with pytest.raises(CapacityError):
        connected_graphs(9)
