"""Constructive t-tone colorings.

Includes the color-reuse construction that is exact for large t, the
2-tone decomposition through a proper coloring, Latin-square colorings of
squared cliques, star and multipartite compositions, a generic greedy
heuristic, and four recursive schemes for truncated regular trees.

Every construction verifies its own output before returning it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional, Sequence

from . import bounds
from .coloring import ToneColoring, verify
from .graphs import (
    Graph,
    all_pairs_distances_capped,
    build_complete,
    build_complete_multipartite,
    build_star,
    build_truncated_regular_tree,
    cartesian_power,
    is_connected,
)
from .mols import MolsFamily
from .solver import SearchBudget, _candidate_sets, search_order, tau_exact


def _checked(graph: Graph, coloring: ToneColoring) -> ToneColoring:
    report = verify(graph, coloring)
    if not report.valid:
        raise AssertionError(
            f"construction produced an invalid coloring; first violation "
            f"{report.violations[0]}"
        )
    return coloring


def greedy_large_t_coloring(graph: Graph, t: int) -> ToneColoring:
    """Color vertices in index order, reusing exactly d(v,w)-1 colors that
    are currently unique to each earlier vertex w, then topping up fresh.

    Needs t >= (n-1)(D-1) so every earlier vertex still owns enough
    private colors; under that hypothesis the palette comes out at
    exactly t*n minus the summed pair deficiencies, which is optimal.
    """
    if t < 1:
        raise ValueError("t must be >= 1")
    if not is_connected(graph):
        raise ValueError("construction requires a connected graph")
    _, diameter = bounds.distance_deficiency(graph)
    threshold = (graph.n - 1) * (diameter - 1)
    if t < threshold:
        raise ValueError(
            f"hypothesis fails: t={t} but the construction requires t >= {threshold}"
        )
    dist = all_pairs_distances_capped(graph, cap=max(1, graph.n))
    unique_of: list[list[int]] = []
    rows: list[list[int]] = []
    next_fresh = 0
    for v in range(graph.n):
        reused: list[int] = []
        for w in range(v):
            need = dist.get(v, w) - 1
            if need > 0:
                if len(unique_of[w]) < need:
                    raise AssertionError("ran out of private colors")
                reused.extend(unique_of[w][:need])
                del unique_of[w][:need]
        fresh = list(range(next_fresh, next_fresh + t - len(reused)))
        next_fresh += len(fresh)
        unique_of.append(fresh)
        rows.append(sorted(reused + fresh))
    return _checked(graph, ToneColoring(t, next_fresh, rows))


def greedy_proper_coloring(graph: Graph) -> list[int]:
    """Proper coloring, largest degree first, smallest free color."""
    color = [-1] * graph.n
    order = sorted(range(graph.n), key=lambda v: (-graph.degrees[v], v))
    for v in order:
        taken = {color[w] for w in graph.adjacency[v] if color[w] >= 0}
        c = 0
        while c in taken:
            c += 1
        color[v] = c
    return color


def _iceil_sqrt(x: int) -> int:
    s = math.isqrt(x)
    return s if s * s == x else s + 1


@dataclass(frozen=True)
class DecompositionCertificate:
    """Achieved class counts behind a decomposition-based 2-tone coloring.

    proper_classes is the greedy proper-coloring class count (an upper
    bound on the chromatic number, not necessarily tight); pair_classes
    holds the greedy class counts of the within-class distance-2 graphs.
    The coloring is valid regardless; only the headline palette size
    depends on these achieved values.
    """

    proper_classes: int
    pair_classes: tuple[int, ...]
    palette_sizes: tuple[int, ...]


def two_tone_via_decomposition(
    graph: Graph,
) -> tuple[ToneColoring, DecompositionCertificate]:
    """2-tone coloring from a proper coloring plus within-class pair codes.

    Each proper class gets a private palette; inside class i, vertices at
    distance 2 form a graph that is properly colored with m_i classes, and
    each class maps to a distinct pair from the private palette. Adjacent
    vertices never share a color (disjoint palettes) and same-class
    distance-2 vertices get distinct pairs, so the result always verifies.
    """
    if graph.n == 0:
        raise ValueError("empty graph")
    proper = greedy_proper_coloring(graph)
    khat = max(proper) + 1
    classes = [[v for v in range(graph.n) if proper[v] == i] for i in range(khat)]
    dist = all_pairs_distances_capped(graph, cap=2)
    rows: list[Optional[list[int]]] = [None] * graph.n
    pair_classes = []
    palette_sizes = []
    base = 0
    for members in classes:
        sub_edges = [
            (a, b)
            for a, b in combinations(range(len(members)), 2)
            if dist.get(members[a], members[b]) == 2
        ]
        sub = Graph(len(members), sub_edges)
        sub_color = greedy_proper_coloring(sub)
        m_i = max(sub_color) + 1
        size = 1 + _iceil_sqrt(2 * m_i)
        while math.comb(size, 2) < m_i:
            size += 1
        pairs = list(combinations(range(size), 2))
        for idx, v in enumerate(members):
            a, b = pairs[sub_color[idx]]
            rows[v] = [base + a, base + b]
        pair_classes.append(m_i)
        palette_sizes.append(size)
        base += size
    coloring = _checked(graph, ToneColoring(2, base, rows))
    cert = DecompositionCertificate(khat, tuple(pair_classes), tuple(palette_sizes))
    return coloring, cert


def mols_coloring_knn(family: MolsFamily, t: int) -> ToneColoring:
    """t-tone coloring of the squared clique from t mutually orthogonal
    Latin squares on disjoint color ranges.

    Vertex (a, b) of K_n x K_n receives {i*n + L_i(a, b)}. Same row or
    column never repeats within one square, and orthogonality stops any
    distance-2 pair from sharing two colors, so tn colors always verify.
    """
    if t < 1:
        raise ValueError("t must be >= 1")
    if not family.verified:
        raise ValueError("family must be validated before use")
    if family.size < t:
        raise ValueError(
            f"need at least {t} squares, family has {family.size}"
        )
    n = family.n
    rows = []
    for a in range(n):
        for b in range(n):
            rows.append(sorted(i * n + family.squares[i].get(a, b) for i in range(t)))
    graph = cartesian_power(build_complete(n), 2)
    return _checked(graph, ToneColoring(t, t * n, rows))


def star_coloring(k: int, t: int) -> ToneColoring:
    """Best available coloring of the k-leaf star.

    For t >= k the reuse construction is optimal; below that the exact
    solver decides small stars and the greedy heuristic covers the rest.
    """
    if k < 1 or t < 1:
        raise ValueError("need k >= 1 and t >= 1")
    star = build_star(k)
    if t >= k:
        return greedy_large_t_coloring(star, t)
    if k <= 8:
        outcome = tau_exact(star, t, SearchBudget(max_nodes=20_000_000))
        if outcome.status == "exact":
            return _checked(star, outcome.witness)
    cap = bounds.degree_lower_bound(k, t) if t >= 2 else 2
    while True:
        coloring = greedy_heuristic_coloring(star, t, cap)
        if coloring is not None:
            return coloring
        cap += 1


def multipartite_coloring(parts: Sequence[int], t: int) -> ToneColoring:
    """Color each part of a complete multipartite graph with the leaf sets
    of a star coloring, on pairwise disjoint palettes.

    Leaves of a star are pairwise at distance 2, exactly the within-part
    constraint; separate parts are fully adjacent and must be disjoint.
    Heads are dropped, reclaiming their private colors per part.
    """
    graph = build_complete_multipartite(parts)
    rows: list[list[int]] = []
    base = 0
    for a in parts:
        star_col = star_coloring(a, t)
        leaf_rows = star_col.assignment[1:]
        used = sorted({c for row in leaf_rows for c in row})
        remap = {c: base + i for i, c in enumerate(used)}
        rows.extend(sorted(remap[c] for c in row) for row in leaf_rows)
        base += len(used)
    return _checked(graph, ToneColoring(t, base, rows))


def greedy_heuristic_coloring(
    graph: Graph, t: int, palette_cap: int
) -> Optional[ToneColoring]:
    """Empirical upper bounds: vertices in descending-degree BFS order,
    each taking the lexicographically smallest t-subset of the palette
    that respects every already-colored vertex within distance t. Returns
    None as soon as some vertex has no valid set.
    """
    if palette_cap < t:
        raise ValueError("palette_cap must be at least t")
    order = search_order(graph)
    position = {v: i for i, v in enumerate(order)}
    masks: list[Optional[int]] = [None] * graph.n
    for v in order:
        constraints = []
        # Local BFS to depth t; only earlier-positioned vertices constrain.
        depth = {v: 0}
        frontier = [v]
        for d in range(1, t + 1):
            nxt = []
            for u in frontier:
                for w in graph.adjacency[u]:
                    if w not in depth:
                        depth[w] = d
                        nxt.append(w)
                        if position[w] < position[v]:
                            constraints.append((masks[w], d - 1))
            frontier = nxt
        # used=cap disables the introduce-in-order rule: plain lex search.
        mask = next(_candidate_sets(palette_cap, t, palette_cap, constraints), None)
        if mask is None:
            return None
        masks[v] = mask
    rows = [[c for c in range(palette_cap) if (m >> c) & 1] for m in masks]
    return _checked(graph, ToneColoring(t, palette_cap, rows))


# ---------------------------------------------------------------------------
# Recursive schemes for truncated regular trees
# ---------------------------------------------------------------------------

#: Canonical 7-point Fano plane; lines are cyclic shifts of {1,2,4} mod 7.
CANONICAL_FANO: tuple[tuple[int, int, int], ...] = (
    (1, 2, 4),
    (2, 3, 5),
    (3, 4, 6),
    (4, 5, 7),
    (5, 6, 1),
    (6, 7, 2),
    (7, 1, 3),
)


@dataclass(frozen=True)
class SchemeSpec:
    name: str
    arity: int  # regularity of the underlying tree
    t: int
    palette: int
    root_set: tuple[int, ...]
    level1: tuple[tuple[int, ...], ...]
    by_grandparent: bool  # children are produced per grandparent frame


# Fixed seed tables for the root and first level; the recursions below
# grow them level by level.
SCHEMES: dict[str, SchemeSpec] = {
    # 9 colors for the 4-regular tree at t=3.
    "T4_3tone": SchemeSpec(
        "T4_3tone",
        arity=4,
        t=3,
        palette=9,
        root_set=(0, 1, 2),
        level1=((3, 4, 5), (3, 6, 7), (4, 6, 8), (5, 7, 8)),
        by_grandparent=False,
    ),
    # 10 colors for the 7-regular tree at t=3, recursing through Fano lines.
    "T7_3tone_fano": SchemeSpec(
        "T7_3tone_fano",
        arity=7,
        t=3,
        palette=10,
        root_set=(1, 2, 3),
        level1=(
            (4, 5, 6),
            (4, 7, 8),
            (5, 7, 9),
            (6, 8, 9),
            (0, 5, 8),
            (0, 6, 7),
            (0, 4, 9),
        ),
        by_grandparent=False,
    ),
    # 13 colors for the 3-regular tree at t=4.
    "T3_4tone": SchemeSpec(
        "T3_4tone",
        arity=3,
        t=4,
        palette=13,
        root_set=(1, 2, 3, 4),
        level1=((5, 6, 7, 8), (0, 5, 9, 10), (6, 9, 11, 12)),
        by_grandparent=True,
    ),
    # 14 colors for the 4-regular tree at t=4.
    "T4_4tone": SchemeSpec(
        "T4_4tone",
        arity=4,
        t=4,
        palette=14,
        root_set=(1, 2, 3, 4),
        level1=((5, 6, 7, 8), (0, 5, 9, 10), (6, 9, 11, 12), (0, 7, 11, 13)),
        by_grandparent=True,
    ),
}

#: Accepted aliases for scheme lookups (CLI convenience).
SCHEME_ALIASES = {"T7_3tone": "T7_3tone_fano"}


def resolve_scheme(name: str) -> SchemeSpec:
    key = SCHEME_ALIASES.get(name, name)
    if key not in SCHEMES:
        known = ", ".join(sorted(SCHEMES))
        raise ValueError(f"unknown scheme {name!r}; known schemes: {known}")
    return SCHEMES[key]


def scheme_tree(name: str, depth: int) -> Graph:
    """The truncated regular tree a scheme colors at the given depth."""
    return build_truncated_regular_tree(resolve_scheme(name).arity, depth)


@dataclass
class TreeSchemeState:
    """Bookkeeping while growing a scheme coloring level by level.

    All shared-color and private-color records are computed from the sets
    actually assigned so far, so they cannot drift out of sync.
    """

    spec: SchemeSpec
    parent: list[int]
    children: list[list[int]]
    sets: list[Optional[frozenset[int]]] = field(default_factory=list)

    def assign(self, v: int, colors) -> None:
        s = frozenset(colors)
        if len(s) != self.spec.t:
            raise AssertionError(f"scheme produced a malformed set for vertex {v}")
        self.sets[v] = s

    def shared_color(self, u: int, w: int) -> int:
        """The unique color two distance-2 vertices share."""
        inter = self.sets[u] & self.sets[w]
        if len(inter) != 1:
            raise AssertionError(
                f"vertices {u} and {w} share {len(inter)} colors, expected 1"
            )
        return next(iter(inter))

    def private_colors(self, u: int, others: list[int]) -> list[int]:
        """Colors of u shared with none of the given neighborhood peers."""
        rest = self.sets[u] - {self.shared_color(u, w) for w in others}
        return sorted(rest)


def _tree_structure(graph: Graph) -> tuple[list[int], list[list[int]]]:
    """Parent and children arrays from the builder's BFS numbering: the
    parent of a non-root vertex is its unique smaller-index neighbor."""
    parent = [-1] * graph.n
    children: list[list[int]] = [[] for _ in range(graph.n)]
    for v in range(1, graph.n):
        smaller = [w for w in graph.adjacency[v] if w < v]
        if len(smaller) != 1:
            raise AssertionError("graph is not a BFS-numbered tree")
        parent[v] = smaller[0]
        children[smaller[0]].append(v)
    return parent, children


def _children_t4_3tone(state: TreeSchemeState, v: int) -> list[tuple[int, ...]]:
    """Child pattern in frame terms: with v relabeled (123) and its
    parent (456), the children read (478), (957), (968)."""
    a = state.sets[v]
    b = sorted(state.sets[state.parent[v]])
    rest = sorted(set(range(state.spec.palette)) - a - set(b))
    return [
        (b[0], rest[0], rest[1]),
        (rest[2], b[1], rest[0]),
        (rest[2], b[2], rest[1]),
    ]


def _children_t7_fano(state: TreeSchemeState, v: int) -> list[tuple[int, ...]]:
    """Relabel the canonical Fano plane so the parent's set is a line over
    the 7 colors missing from v; the six children take the other lines.
    The free points are filled in lowest-available-index order."""
    points = sorted(set(range(state.spec.palette)) - state.sets[v])
    parent_line = sorted(state.sets[state.parent[v]])
    phi = {1: parent_line[0], 2: parent_line[1], 4: parent_line[2]}
    free = [p for p in points if p not in parent_line]
    for canon, actual in zip((3, 5, 6, 7), free):
        phi[canon] = actual
    return [tuple(sorted(phi[x] for x in line)) for line in CANONICAL_FANO[1:]]


def _frame_t3_4tone(
    state: TreeSchemeState, v: int, frame: list[int]
) -> dict[int, list[tuple[int, ...]]]:
    """Grandchild sets around v for the 3-regular 4-tone scheme.

    frame lists N(v); each frame vertex shares one color with each other
    (its c records) and keeps two colors private to the frame. The two
    children of u_k reuse v's two lowest colors, the privates of the other
    frame members, and their mutual shared color.
    """
    a = sorted(state.sets[v])
    out: dict[int, list[tuple[int, ...]]] = {}
    for k, u in enumerate(frame):
        # Only v's own children get new grandchildren here: the frame may
        # also contain v's parent, whose children are already colored.
        if u < v or not state.children[u]:
            continue
        j, l = [x for x in range(len(frame)) if x != k]
        c_jl = state.shared_color(frame[j], frame[l])
        cp_j = state.private_colors(frame[j], [frame[i] for i in range(3) if i != j])
        cp_l = state.private_colors(frame[l], [frame[i] for i in range(3) if i != l])
        if len(cp_j) != 2 or len(cp_l) != 2:
            raise AssertionError("frame member should keep exactly two private colors")
        out[u] = [
            (a[0], cp_j[0], cp_l[0], c_jl),
            (a[1], cp_j[1], cp_l[1], c_jl),
        ]
    return out


def _frame_t4_4tone(
    state: TreeSchemeState, v: int, frame: list[int]
) -> dict[int, list[tuple[int, ...]]]:
    """Grandchild sets around v for the 4-regular 4-tone scheme.

    Follows the scheme's cyclic triple pattern with frame indices taken
    modulo 4; residue 0 maps to 4. a_m is v's m-th smallest color, c[s][j]
    the unique color shared by frame members s and j, cp[s] the color
    member s shares with no other frame member.
    """
    a = sorted(state.sets[v])
    c: dict[tuple[int, int], int] = {}
    cp: dict[int, int] = {}
    for s in range(4):
        for j in range(s + 1, 4):
            c[(s, j)] = c[(j, s)] = state.shared_color(frame[s], frame[j])
        priv = state.private_colors(frame[s], [frame[i] for i in range(4) if i != s])
        if len(priv) != 1:
            raise AssertionError("frame member should keep exactly one private color")
        cp[s] = priv[0]

    def idx(m: int) -> int:
        return (m - 1) % 4  # 0-based frame index; residue 0 wraps to member 4

    out: dict[int, list[tuple[int, ...]]] = {}
    for k0, u in enumerate(frame):
        if u < v or not state.children[u]:
            continue
        k = k0 + 1
        k1, k2, k3 = idx(k + 1), idx(k + 2), idx(k + 3)
        out[u] = [
            (a[k1], c[(k1, k2)], c[(k2, k3)], cp[k3]),
            (a[k2], c[(k3, k2)], c[(k1, k3)], cp[k1]),
            (a[k3], c[(k3, k1)], c[(k1, k2)], cp[k2]),
        ]
    return out


def tree_scheme_coloring(name: str, depth: int) -> ToneColoring:
    """Reproduce a scheme's inductive coloring on the depth-truncated tree.

    The root and first level come from the fixed seed tables; deeper
    levels follow each scheme's recursion. The output is verified before return,
    so a failure here means the recursion itself broke down rather than a
    silent bad coloring.
    """
    spec = resolve_scheme(name)
    if depth < 0:
        raise ValueError("depth must be >= 0")
    graph = build_truncated_regular_tree(spec.arity, depth)
    parent, children = _tree_structure(graph)
    state = TreeSchemeState(spec, parent, children, [None] * graph.n)
    state.assign(0, spec.root_set)
    levels: list[list[int]] = [[0]]
    while True:
        nxt = [c for v in levels[-1] for c in children[v]]
        if not nxt:
            break
        levels.append(nxt)
    if depth >= 1:
        for v, colors in zip(levels[1], spec.level1):
            state.assign(v, colors)
    if spec.by_grandparent:
        # Level m is colored from frames around each vertex of level m-2:
        # the frame is that vertex's children plus, past the root, its
        # parent (which is exactly the neighborhood).
        for m in range(2, depth + 1):
            for v in levels[m - 2]:
                frame = list(children[v]) + ([parent[v]] if parent[v] >= 0 else [])
                produce = (
                    _frame_t3_4tone if spec.name == "T3_4tone" else _frame_t4_4tone
                )
                for u, sets in produce(state, v, frame).items():
                    for child, colors in zip(children[u], sets):
                        state.assign(child, colors)
    else:
        for m in range(2, depth + 1):
            for v in levels[m - 1]:
                rule = (
                    _children_t4_3tone if spec.name == "T4_3tone" else _children_t7_fano
                )
                for child, colors in zip(children[v], rule(state, v)):
                    state.assign(child, colors)
    rows = [sorted(s) for s in state.sets]
    return _checked(graph, ToneColoring(spec.t, spec.palette, rows))
