import random
from itertools import combinations

import pytest

from oracles import random_tree
from tonelab.bounds import degree_lower_bound, distance_deficiency, tree2tone_formula
from tonelab.coloring import colors_used, verify
from tonelab.constructions import (
    SCHEMES,
    greedy_heuristic_coloring,
    greedy_large_t_coloring,
    greedy_proper_coloring,
    mols_coloring_knn,
    multipartite_coloring,
    resolve_scheme,
    scheme_tree,
    star_coloring,
    tree_scheme_coloring,
    two_tone_via_decomposition,
)
from tonelab.graphs import (
    Graph,
    build_complete,
    build_complete_multipartite,
    build_path,
    build_star,
    cartesian_power,
)
from tonelab.mols import prime_mols


def test_greedy_large_t_star():
    col = greedy_large_t_coloring(build_star(3), 5)
    assert colors_used(col) == 17
    assert verify(build_star(3), col).valid


def test_greedy_large_t_path_and_clique():
    assert colors_used(greedy_large_t_coloring(build_path(3), 2)) == 5
    col = greedy_large_t_coloring(build_complete(4), 1)
    assert colors_used(col) == 4  # all distances 1: disjoint singletons


def test_greedy_large_t_rejects_small_t():
    with pytest.raises(ValueError, match="t >= 12"):
        greedy_large_t_coloring(build_path(5), 3)  # needs (5-1)(4-1) = 12
    with pytest.raises(ValueError):
        greedy_large_t_coloring(Graph(3, [(0, 1)]), 5)  # disconnected


def test_greedy_large_t_color_count_formula():
    rng = random.Random(21)
    for _ in range(15):
        n = rng.randrange(2, 6)
        edges = {(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.5}
        for v in range(1, n):
            edges.add((rng.randrange(v), v))
        g = Graph(n, sorted(edges))
        deficiency, diameter = distance_deficiency(g)
        t = max(1, (n - 1) * (diameter - 1))
        col = greedy_large_t_coloring(g, t)
        assert colors_used(col) == t * n - deficiency
        assert verify(g, col).valid


def test_decomposition_bipartite_palettes_disjoint():
    g = build_complete_multipartite([3, 4])
    col, cert = two_tone_via_decomposition(g)
    assert cert.proper_classes == 2
    for u, v in g.edges:
        assert not set(col.assignment[u]) & set(col.assignment[v])
    assert verify(g, col).valid


def test_decomposition_k2():
    g = build_complete(2)
    col, cert = two_tone_via_decomposition(g)
    assert cert.proper_classes == 2
    assert cert.pair_classes == (1, 1)
    assert sum(cert.palette_sizes) == 6  # worst-case allotment
    assert verify(g, col).valid


def test_decomposition_q4():
    q4 = cartesian_power(build_complete(2), 4)
    col, cert = two_tone_via_decomposition(q4)
    rep = verify(q4, col)
    assert rep.valid
    assert rep.colors_used >= degree_lower_bound(4, 2) == 6


def test_decomposition_certificate_inequality():
    rng = random.Random(22)
    for _ in range(20):
        n = rng.randrange(2, 30)
        g = Graph(
            n,
            [
                (u, v)
                for u in range(n)
                for v in range(u + 1, n)
                if rng.random() < 0.15
            ],
        )
        col, cert = two_tone_via_decomposition(g)
        assert verify(g, col).valid
        budget = cert.proper_classes + sum(
            1 + _iceil(2 * m) for m in cert.pair_classes
        )
        assert colors_used(col) <= budget


def _iceil(x):
    import math

    s = math.isqrt(x)
    return s if s * s == x else s + 1


def test_greedy_proper_coloring_is_proper():
    rng = random.Random(23)
    for _ in range(20):
        n = rng.randrange(2, 25)
        g = Graph(
            n,
            [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.3],
        )
        color = greedy_proper_coloring(g)
        assert all(color[u] != color[v] for u, v in g.edges)


def test_mols_coloring_values():
    assert colors_used(mols_coloring_knn(prime_mols(3), 2)) == 6
    col = mols_coloring_knn(prime_mols(5), 4)
    assert colors_used(col) == 20
    assert verify(cartesian_power(build_complete(5), 2), col).valid


def test_mols_coloring_family_too_small():
    with pytest.raises(ValueError):
        mols_coloring_knn(prime_mols(3), 3)  # N(3) = 2


def test_star_coloring_values():
    assert colors_used(star_coloring(3, 4)) == 13
    assert colors_used(star_coloring(5, 3)) == 10  # via the exact solver
    assert colors_used(star_coloring(2, 3)) == 8
    big = star_coloring(12, 2)  # heuristic path for large stars
    assert verify(build_star(12), big).valid
    assert colors_used(big) >= tree2tone_formula(12)


def test_multipartite_coloring():
    assert colors_used(multipartite_coloring([1, 1], 2)) == 4
    col = multipartite_coloring([3, 3], 5)
    assert colors_used(col) == 24  # two parts of the 17-color star leaves
    assert verify(build_complete_multipartite([3, 3]), col).valid


def test_multipartite_single_part():
    col = multipartite_coloring([4], 2)
    for a, b in combinations(range(4), 2):
        shared = set(col.assignment[a]) & set(col.assignment[b])
        assert len(shared) <= 1  # within-part promise even with no edges


def test_greedy_heuristic_paths_and_cliques():
    col = greedy_heuristic_coloring(build_path(4), 2, 5)
    assert col is not None and colors_used(col) <= 5
    assert greedy_heuristic_coloring(build_complete(3), 2, 5) is None
    with pytest.raises(ValueError):
        greedy_heuristic_coloring(build_path(3), 3, 2)


def test_greedy_heuristic_on_random_trees():
    rng = random.Random(24)
    for _ in range(100):
        n = rng.randrange(2, 201)
        tree = random_tree(rng, n, max_degree=8)
        cap = tree2tone_formula(tree.max_degree) + 3
        col = greedy_heuristic_coloring(tree, 2, cap)
        assert col is not None
        assert verify(tree, col).valid


def test_scheme_registry():
    assert set(SCHEMES) == {"T4_3tone", "T7_3tone_fano", "T3_4tone", "T4_4tone"}
    assert resolve_scheme("T7_3tone").name == "T7_3tone_fano"
    with pytest.raises(ValueError):
        resolve_scheme("T9_5tone")


def test_scheme_seed_tables_pinned():
    # 3-tone, 4-regular seed rows
    col = tree_scheme_coloring("T4_3tone", 1)
    assert col.assignment[0] == (0, 1, 2)
    assert col.assignment[1:] == ((3, 4, 5), (3, 6, 7), (4, 6, 8), (5, 7, 8))
    # 3-tone, 7-regular: root (123) and its seven children
    col = tree_scheme_coloring("T7_3tone_fano", 1)
    assert col.assignment[0] == (1, 2, 3)
    assert col.assignment[1:] == (
        (4, 5, 6),
        (4, 7, 8),
        (5, 7, 9),
        (6, 8, 9),
        (0, 5, 8),
        (0, 6, 7),
        (0, 4, 9),
    )
    # 4-tone, 3-regular: root (1234), then the fixed child and grandchild rows
    col = tree_scheme_coloring("T3_4tone", 2)
    assert col.assignment[0] == (1, 2, 3, 4)
    assert col.assignment[1:4] == ((5, 6, 7, 8), (0, 5, 9, 10), (6, 9, 11, 12))
    expected_level2 = [
        {0, 1, 9, 11},  # (190b)
        {2, 9, 10, 12},  # (29ac)
        {1, 6, 7, 11},  # (167b)
        {2, 6, 8, 12},  # (268c)
        {0, 1, 5, 7},  # (1570)
        {2, 5, 8, 10},  # (258a)
    ]
    assert [set(row) for row in col.assignment[4:]] == expected_level2
    # 4-tone, 4-regular: the twelve fixed second-level rows
    col = tree_scheme_coloring("T4_4tone", 2)
    expected = [
        {2, 9, 11, 13},
        {3, 11, 0, 10},
        {4, 0, 9, 12},
        {3, 11, 7, 8},
        {4, 7, 6, 12},
        {1, 6, 11, 13},
        {4, 7, 5, 10},
        {1, 5, 0, 13},
        {2, 0, 7, 8},
        {1, 5, 9, 12},
        {2, 9, 6, 8},
        {3, 6, 5, 10},
    ]
    assert [set(row) for row in col.assignment[5:]] == expected


def test_schemes_verify_at_all_depths():
    for name, scheme_def in SCHEMES.items():
        for depth in range(4):
            col = tree_scheme_coloring(name, depth)
            graph = scheme_tree(name, depth)
            assert col.palette_size == scheme_def.palette
            assert verify(graph, col).valid
            if depth == 0:
                assert colors_used(col) == scheme_def.t


def test_schemes_generalize_to_depth_four():
    # one level beyond the acceptance gate: the recursions are genuinely
    # inductive, not tuned to the shallow trees
    for name in SCHEMES:
        graph = scheme_tree(name, 4)
        col = tree_scheme_coloring(name, 4)
        assert verify(graph, col).valid
        if name in ("T3_4tone", "T4_4tone"):
            assert four_tone_conditions(graph, col) is None


def four_tone_conditions(graph, col):
    """The structural promises of the 4-tone schemes, checked verbatim."""
    from tonelab.graphs import all_pairs_distances_capped

    sets = [set(row) for row in col.assignment]
    dist = all_pairs_distances_capped(graph, cap=4)
    # (a) adjacent vertices share no colors
    for u, v in graph.edges:
        if sets[u] & sets[v]:
            return f"(a) fails at ({u},{v})"
    # (b) neighborhood pairs share exactly one color, none on three
    for x in range(graph.n):
        nbrs = graph.adjacency[x]
        for u, v in combinations(nbrs, 2):
            if len(sets[u] & sets[v]) != 1:
                return f"(b) pair share fails around {x}"
        if len(nbrs) >= 3:
            for u, v, w in combinations(nbrs, 3):
                if sets[u] & sets[v] & sets[w]:
                    return f"(b) triple color around {x}"
    # (c) distance-3 pairs share the scheme-specified count
    # (d) distance-4 pairs have distinct sets
    for u in range(graph.n):
        for v in range(u + 1, graph.n):
            d = dist.get(u, v)
            if d == 3:
                shared = len(sets[u] & sets[v])
                if col.palette_size == 13 and shared != 2:
                    return f"(c) fails at ({u},{v}): shared {shared}"
                if col.palette_size == 14 and shared not in (1, 2):
                    return f"(c) fails at ({u},{v}): shared {shared}"
            elif d == 4 and sets[u] == sets[v]:
                return f"(d) fails at ({u},{v})"
    return None


def test_four_tone_scheme_conditions():
    for name in ("T3_4tone", "T4_4tone"):
        for depth in range(4):
            graph = scheme_tree(name, depth)
            col = tree_scheme_coloring(name, depth)
            assert four_tone_conditions(graph, col) is None


def test_three_tone_schemes_distance2_share():
    # the inductive invariant: distance-2 pairs always share a color
    from tonelab.graphs import all_pairs_distances_capped

    for name in ("T4_3tone", "T7_3tone_fano"):
        graph = scheme_tree(name, 3)
        col = tree_scheme_coloring(name, 3)
        sets = [set(row) for row in col.assignment]
        dist = all_pairs_distances_capped(graph, cap=2)
        for u in range(graph.n):
            for v in range(u + 1, graph.n):
                if dist.get(u, v) == 2:
                    assert len(sets[u] & sets[v]) == 1
