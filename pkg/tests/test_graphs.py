import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from oracles import floyd_warshall, random_graph
from tonelab.graphs import (
    Graph,
    all_pairs_distances_capped,
    build_complete,
    build_complete_multipartite,
    build_gnp,
    build_path,
    build_star,
    build_truncated_regular_tree,
    cartesian_power,
    cartesian_product,
    connected_components,
    format_graph,
    is_connected,
    parse_graph,
)


def test_graph_validation():
    with pytest.raises(ValueError):
        Graph(3, [(0, 0)])
    with pytest.raises(ValueError):
        Graph(2, [(0, 2)])
    g = Graph(3, [(1, 0), (0, 1), (1, 2)])  # duplicates and order collapse
    assert g.m == 2
    assert g.adjacency == ((1,), (0, 2), (1,))


def test_build_path():
    assert build_path(1).n == 1 and build_path(1).m == 0
    p3 = build_path(3)
    assert p3.edges == frozenset({(0, 1), (1, 2)})
    # S_2 is the 3-vertex path, up to the differing canonical numberings
    assert sorted(build_star(2).degrees) == sorted(p3.degrees)
    d = all_pairs_distances_capped(build_path(5), cap=4)
    assert d.get(0, 4) == 4
    with pytest.raises(ValueError):
        build_path(0)


def test_build_star():
    s1 = build_star(1)
    assert s1.n == 2 and s1.m == 1
    s3 = build_star(3)
    assert s3.degrees == (3, 1, 1, 1)
    s7 = build_star(7)
    assert s7.n == 8
    d = all_pairs_distances_capped(s7, cap=2)
    assert all(d.get(u, v) == 2 for u in range(1, 8) for v in range(u + 1, 8))
    with pytest.raises(ValueError):
        build_star(0)


def test_build_complete_multipartite():
    k3 = build_complete_multipartite([1, 1, 1])
    assert k3.edges == build_complete(3).edges
    empty3 = build_complete_multipartite([3])
    assert empty3.m == 0
    d = all_pairs_distances_capped(empty3, cap=2)
    assert d.get(0, 1) == d.sentinel
    g = build_complete_multipartite([2, 3])
    assert g.n == 5 and g.m == 6
    d = all_pairs_distances_capped(g, cap=2)
    assert d.get(0, 1) == 2 and d.get(2, 3) == 2
    with pytest.raises(ValueError):
        build_complete_multipartite([])
    with pytest.raises(ValueError):
        build_complete_multipartite([2, 0])


def test_cartesian_products():
    q3 = cartesian_power(build_complete(2), 3)
    assert q3.n == 8 and q3.m == 12
    k3sq = cartesian_power(build_complete(3), 2)
    assert k3sq.n == 9
    assert all(deg == 4 for deg in k3sq.degrees)
    assert k3sq.labels is not None and k3sq.labels[5] == "1,2"
    with pytest.raises(ValueError):
        cartesian_power(build_complete(2), 0)
    with pytest.raises(ValueError):
        cartesian_product(Graph(0), build_complete(2))


def test_clique_power_distance_is_hamming():
    n, b = 4, 2
    g = cartesian_power(build_complete(n), b)
    d = all_pairs_distances_capped(g, cap=b)
    for u in range(g.n):
        cu = (u // n, u % n)
        for v in range(u + 1, g.n):
            cv = (v // n, v % n)
            hamming = sum(a != b_ for a, b_ in zip(cu, cv))
            assert d.get(u, v) == hamming


@given(st.integers(2, 4), st.integers(1, 3))
def test_power_vertex_count_and_degrees(n, b):
    g = cartesian_power(build_complete(n), b)
    assert g.n == n**b
    # cliques are vertex-transitive: every degree is b * (n-1)
    assert set(g.degrees) == {b * (n - 1)}


def test_product_degree_is_coordinate_sum():
    g, h = build_path(3), build_star(2)
    prod = cartesian_product(g, h)
    for u in range(g.n):
        for v in range(h.n):
            assert prod.degrees[u * h.n + v] == g.degrees[u] + h.degrees[v]


def test_truncated_regular_tree():
    s4 = build_truncated_regular_tree(4, 1)
    assert s4.edges == build_star(4).edges
    t32 = build_truncated_regular_tree(3, 2)
    assert t32.n == 10
    t72 = build_truncated_regular_tree(7, 2)
    assert t72.n == 50
    assert build_truncated_regular_tree(5, 0).n == 1
    with pytest.raises(ValueError):
        build_truncated_regular_tree(1, 2)
    with pytest.raises(ValueError):
        build_truncated_regular_tree(3, -1)


def test_truncated_tree_is_tree():
    for delta, depth in [(2, 4), (3, 3), (4, 2), (7, 2)]:
        g = build_truncated_regular_tree(delta, depth)
        assert g.m == g.n - 1
        assert is_connected(g)


def test_gnp_extremes_and_determinism():
    assert build_gnp(6, 0.0, 1).m == 0
    assert build_gnp(6, 1.0, 1).edges == build_complete(6).edges
    a = build_gnp(50, 0.1, 12345)
    b = build_gnp(50, 0.1, 12345)
    assert a.edges == b.edges
    c = build_gnp(50, 0.1, 54321)
    assert c.edges != a.edges
    with pytest.raises(ValueError):
        build_gnp(5, 1.5, 0)


def test_gnp_edge_count_within_four_sigma():
    n, p = 1000, 5 / 1000
    g = build_gnp(n, p, seed=2024)
    pairs = n * (n - 1) // 2
    mean = pairs * p
    sigma = (pairs * p * (1 - p)) ** 0.5
    assert abs(g.m - mean) <= 4 * sigma


def test_distances_capped_basics():
    p5 = build_path(5)
    d = all_pairs_distances_capped(p5, cap=3)
    assert d.get(0, 4) == d.sentinel == 4
    assert d.get(0, 3) == 3
    two = Graph(4, [(0, 1), (2, 3)])
    d = all_pairs_distances_capped(two, cap=3)
    assert d.get(0, 2) == d.sentinel


def test_distances_match_floyd_warshall_oracle():
    rng = random.Random(7)
    for trial in range(50):
        n = rng.randrange(2, 25)
        g = random_graph(rng, n, rng.uniform(0.05, 0.5))
        cap = rng.randrange(1, n + 1)
        d = all_pairs_distances_capped(g, cap)
        ref = floyd_warshall(g)
        assert np.array_equal(d.values, d.values.T)
        assert all(d.get(v, v) == 0 for v in range(n))
        for u in range(n):
            for v in range(n):
                if np.isfinite(ref[u, v]) and ref[u, v] <= cap:
                    assert d.get(u, v) == int(ref[u, v])
                else:
                    assert d.get(u, v) == d.sentinel
    # a couple of larger instances up to n=64
    for n in (48, 64):
        g = random_graph(rng, n, 0.08)
        d = all_pairs_distances_capped(g, cap=n)
        ref = floyd_warshall(g)
        for u in range(n):
            for v in range(n):
                expect = int(ref[u, v]) if np.isfinite(ref[u, v]) else d.sentinel
                assert d.get(u, v) == min(expect, d.sentinel)


def test_edge_deletion_never_shrinks_distances():
    rng = random.Random(99)
    for _ in range(20):
        n = rng.randrange(4, 16)
        g = random_graph(rng, n, 0.4)
        if g.m == 0:
            continue
        drop = sorted(g.edges)[rng.randrange(g.m)]
        h = Graph(n, g.edges - {drop})
        dg = all_pairs_distances_capped(g, cap=n)
        dh = all_pairs_distances_capped(h, cap=n)
        assert (dh.values >= dg.values).all()


def test_connected_components():
    g = Graph(5, [(0, 1), (3, 4)])
    assert connected_components(g) == [[0, 1], [2], [3, 4]]
    assert not is_connected(g)
    assert is_connected(build_path(4))


def test_graph_format_round_trip():
    g = build_complete_multipartite([2, 3])
    text = format_graph(g)
    again = parse_graph(text)
    assert again.n == g.n and again.edges == g.edges
    assert format_graph(again) == text  # bit-exact
    assert text.endswith("\n")


def test_graph_format_comments_and_errors():
    g = parse_graph("# header comment\n3 2\n0 1  # inline\n1 2\n")
    assert g.edges == frozenset({(0, 1), (1, 2)})
    with pytest.raises(ValueError):
        parse_graph("3 2\n0 1\n")  # missing edge line
    with pytest.raises(ValueError):
        parse_graph("")
    with pytest.raises(ValueError):
        parse_graph("2 1\n0 2\n")  # endpoint out of range


def test_induced_subgraph():
    g = build_path(5)
    h = g.induced_subgraph([0, 1, 3])
    assert h.n == 3 and h.edges == frozenset({(0, 1)})
