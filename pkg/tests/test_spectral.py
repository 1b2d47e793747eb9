"""Spectral kernel: matrices, power iteration, bounds, quotients."""

import math

import numpy as np
import pytest

from spectralcert.errors import DomainError, GraphInputError
from spectralcert.graphs import (
    Graph,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    disjoint_union,
    is_connected,
    join,
    empty_graph,
    path_graph,
    star_graph,
)
from spectralcert.spectral import (
    a_matrix,
    adjacency,
    das_bound,
    hong_bound,
    largest_eigenvalue_dense,
    quotient_matrix,
    rho_a,
    signless_laplacian,
    spectral_radius,
)

TOL = 1e-10


def _random_connected(n, p, rng):
    while True:
        adj = np.triu(rng.random((n, n)) < p, 1)
        g = Graph(n, adj | adj.T)
        if is_connected(g):
            return g


def test_matrix_constructors():
    k2 = complete_graph(2)
    assert np.array_equal(a_matrix(k2, 0.0), [[0, 1], [1, 0]])
    assert np.array_equal(a_matrix(k2, 1.0), [[1, 1], [1, 1]])
    p3 = path_graph(3)
    q = a_matrix(p3, 1.0)
    assert np.array_equal(np.diag(q), [1, 2, 1])
    assert np.array_equal(q, signless_laplacian(p3))
    assert np.array_equal(a_matrix(p3, 0.0), adjacency(p3))
    with pytest.raises(GraphInputError):
        a_matrix(p3, -0.5)


def test_spectral_radius_complete_graph():
    res = spectral_radius(adjacency(complete_graph(4)))
    assert abs(res.radius - 3.0) <= TOL
    assert res.residual <= TOL * max(1.0, res.radius)
    assert (res.vector > 0).all()
    assert abs(np.linalg.norm(res.vector) - 1.0) < 1e-12


def test_spectral_radius_complete_bipartite():
    g = complete_bipartite(3, 4).to_graph()
    res = spectral_radius(adjacency(g))
    assert abs(res.radius - math.sqrt(12)) <= 1e-9


def test_spectral_radius_star_signless_laplacian():
    # the signless Laplacian radius of a star on n vertices equals n
    res = spectral_radius(signless_laplacian(star_graph(5)))
    assert abs(res.radius - 6.0) <= 1e-9


def test_spectral_radius_disconnected():
    g = disjoint_union([complete_graph(5), complete_graph(3), empty_graph(2)])
    res = spectral_radius(adjacency(g))
    assert abs(res.radius - 4.0) <= 1e-9
    # Perron vector is supported on the winning component only
    assert (res.vector[:5] > 0).all()
    assert np.all(res.vector[5:] == 0)


def test_spectral_radius_matches_dense_oracle():
    rng = np.random.default_rng(21)
    for _ in range(40):
        n = int(rng.integers(2, 12))
        g = _random_connected(n, 0.5, rng)
        for a in (0.0, 1.0, 0.7):
            m = a_matrix(g, a)
            got = spectral_radius(m).radius
            want = float(np.linalg.eigvalsh(m)[-1])
            assert abs(got - want) <= 1e-8


def test_spectral_radius_validates_input():
    with pytest.raises(GraphInputError):
        spectral_radius(np.array([[0.0, 1.0], [2.0, 0.0]]))
    with pytest.raises(GraphInputError):
        spectral_radius(np.array([[0.0, -1.0], [-1.0, 0.0]]))
    with pytest.raises(GraphInputError):
        spectral_radius(adjacency(complete_graph(3)), tol=0.0)


def test_perron_residual_certificate():
    rng = np.random.default_rng(33)
    for _ in range(20):
        g = _random_connected(int(rng.integers(3, 10)), 0.5, rng)
        m = a_matrix(g, 1.0)
        res = spectral_radius(m)
        direct = float(np.max(np.abs(m @ res.vector - res.radius * res.vector)))
        assert direct <= TOL * max(1.0, res.radius) * 1.0000001


def test_hong_bound_values():
    assert abs(hong_bound(complete_graph(4)) - 3.0) < 1e-12
    assert abs(hong_bound(path_graph(3)) - math.sqrt(2)) < 1e-12
    assert abs(hong_bound(cycle_graph(5)) - math.sqrt(6)) < 1e-12
    assert abs(rho_a(cycle_graph(5), 0.0) - 2.0) <= 1e-9
    with pytest.raises(DomainError):
        hong_bound(empty_graph(4))


def test_das_bound_values():
    assert abs(das_bound(complete_graph(4)) - 6.0) < 1e-12
    assert abs(das_bound(star_graph(3)) - 4.0) < 1e-12
    assert abs(rho_a(star_graph(3), 1.0) - 4.0) <= 1e-9
    c4 = cycle_graph(4)
    assert abs(das_bound(c4) - (8 / 3 + 2)) < 1e-12
    assert abs(rho_a(c4, 1.0) - 4.0) <= 1e-9
    with pytest.raises(GraphInputError):
        das_bound(complete_graph(1))


def test_bound_domination_random_stream():
    rng = np.random.default_rng(77)
    for _ in range(60):
        g = _random_connected(int(rng.integers(3, 11)), 0.4, rng)
        assert rho_a(g, 0.0) <= hong_bound(g) + TOL
        assert rho_a(g, 1.0) <= das_bound(g) + TOL


def test_spanning_subgraph_monotonicity():
    # deleting an edge of a connected graph strictly lowers the radius
    rng = np.random.default_rng(101)
    done = 0
    while done < 200:
        g = _random_connected(int(rng.integers(4, 11)), 0.5, rng)
        edges = g.edges()
        u, v = edges[int(rng.integers(len(edges)))]
        h = g.delete_edge(u, v)
        if not is_connected(h):
            continue
        for a in (0.0, 1.0):
            assert rho_a(h, a) < rho_a(g, a)
        done += 1


def test_edge_rotation_growth():
    from spectralcert.graphs import rotate_edges

    rng = np.random.default_rng(55)
    done = 0
    while done < 60:
        g = _random_connected(int(rng.integers(4, 10)), 0.45, rng)
        for a in (0.0, 1.0):
            res = spectral_radius(a_matrix(g, a))
            x = res.vector
            order = sorted(range(g.n), key=lambda v: -x[v])
            moved = False
            for u in order:
                for v in order:
                    if u == v or x[u] < x[v]:
                        continue
                    targets = [t for t in g.neighbors(v)
                               if t != u and not g.has_edge(u, t)]
                    if not targets:
                        continue
                    rotated = rotate_edges(g, u, v, targets)
                    grown = spectral_radius(a_matrix(rotated, a)).radius
                    assert grown > res.radius - TOL
                    if x[u] - x[v] > TOL:
                        assert grown > res.radius
                    moved = True
                    break
                if moved:
                    break
        done += 1


def test_quotient_matrix_identity_partition():
    m = adjacency(complete_graph(4))
    b, equitable = quotient_matrix(m, [[0], [1], [2], [3]])
    assert equitable
    assert np.array_equal(b, m)


def test_quotient_matrix_star():
    b, equitable = quotient_matrix(adjacency(star_graph(3)), [[0], [1, 2, 3]])
    assert equitable
    assert np.array_equal(b, [[0, 3], [1, 0]])
    assert abs(largest_eigenvalue_dense(b) - math.sqrt(3)) <= 1e-10


def test_quotient_matrix_center_clique_pendants():
    n, k = 22, 3
    g = join(complete_graph(1), disjoint_union(
        [complete_graph(n - k - 1)] + [complete_graph(1)] * k))
    classes = [[0], list(range(1, n - k)), list(range(n - k, n))]
    b, equitable = quotient_matrix(adjacency(g), classes)
    assert equitable
    assert np.array_equal(b, [[0, 18, 3], [1, 17, 0], [1, 0, 0]])


def test_quotient_matrix_flags_inequitable():
    _, equitable = quotient_matrix(adjacency(path_graph(4)), [[0, 1], [2, 3]])
    assert not equitable


def test_quotient_matrix_validates_partition():
    m = adjacency(path_graph(3))
    with pytest.raises(GraphInputError):
        quotient_matrix(m, [[0, 1]])
    with pytest.raises(GraphInputError):
        quotient_matrix(m, [[0, 1], [1, 2]])
    with pytest.raises(GraphInputError):
        quotient_matrix(m, [[0, 1], [2], []])


def test_equitable_quotient_shares_top_eigenvalue():
    cases = [
        (adjacency(star_graph(4)), [[0], [1, 2, 3, 4]]),
        (signless_laplacian(star_graph(4)), [[0], [1, 2, 3, 4]]),
        (adjacency(complete_bipartite(3, 4).to_graph()), [[0, 1, 2], [3, 4, 5, 6]]),
        (adjacency(cycle_graph(6)), [[0, 3], [1, 2, 4, 5]]),
    ]
    for m, classes in cases:
        b, equitable = quotient_matrix(m, classes)
        assert equitable
        lam_b = largest_eigenvalue_dense(b)
        lam_m = spectral_radius(m).radius
        assert abs(lam_b - lam_m) <= 1e-8


def test_largest_eigenvalue_dense_closed_forms():
    assert abs(largest_eigenvalue_dense(np.array([[0.0, 3.0], [1.0, 0.0]]))
               - math.sqrt(3)) <= 1e-10
    b, _ = quotient_matrix(adjacency(complete_bipartite(3, 4).to_graph()),
                           [[0, 1, 2], [3, 4, 5, 6]])
    assert abs(largest_eigenvalue_dense(b) - math.sqrt(12)) <= 1e-10
    # order cap
    with pytest.raises(GraphInputError):
        largest_eigenvalue_dense(np.eye(9))


def test_largest_eigenvalue_dense_vs_numpy():
    rng = np.random.default_rng(13)
    for _ in range(30):
        k = int(rng.integers(2, 6))
        m = rng.integers(0, 5, size=(k, k)).astype(float)
        # ensure a healthy Perron root
        m += np.diag(rng.integers(1, 4, size=k).astype(float))
        want = max(val.real for val in np.linalg.eigvals(m))
        got = largest_eigenvalue_dense(m)
        assert abs(got - want) <= 1e-8 * max(1.0, abs(want))
