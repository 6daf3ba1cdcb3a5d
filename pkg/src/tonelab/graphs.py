"""Finite simple graphs: named families, Cartesian products, capped distances.

Vertices are dense integers 0..n-1. Each family builder documents its
canonical numbering so that witnesses and certificates are reproducible:
paths in path order, star head at 0, multipartite parts contiguous,
products in row-major coordinate order, trees in BFS level order.

Graph and DistMatrix are immutable after construction and safe to share.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional, Sequence

import numpy as np


@dataclass(eq=False)
class Graph:
    """Simple undirected graph on vertices 0..n-1."""

    n: int
    edges: frozenset[tuple[int, int]]
    labels: Optional[tuple[str, ...]] = None

    def __init__(
        self,
        n: int,
        edges: Iterable[tuple[int, int]] = (),
        labels: Optional[Sequence[str]] = None,
    ):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        norm = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for n={n}")
            norm.add((u, v) if u < v else (v, u))
        self.n = n
        self.edges = frozenset(norm)
        if labels is not None:
            if len(labels) != n:
                raise ValueError("labels must cover every vertex")
            labels = tuple(labels)
        self.labels = labels

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return tuple(tuple(sorted(a)) for a in adj)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.adjacency)

    @property
    def max_degree(self) -> int:
        return max(self.degrees) if self.n else 0

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def induced_subgraph(self, vertices: Sequence[int]) -> "Graph":
        """Induced subgraph; vertex i of the result is vertices[i]."""
        index = {v: i for i, v in enumerate(vertices)}
        if len(index) != len(vertices):
            raise ValueError("duplicate vertices in induced subgraph")
        sub = [
            (index[u], index[v])
            for u, v in self.edges
            if u in index and v in index
        ]
        labels = None
        if self.labels is not None:
            labels = [self.labels[v] for v in vertices]
        return Graph(len(vertices), sub, labels)

    def __repr__(self) -> str:  # pragma: no cover
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class DistMatrix:
    """All-pairs distances truncated at ``cap``.

    Entries are in {0..cap} or ``sentinel`` = cap+1, which stands for any
    distance greater than cap, including disconnected pairs. A reserved
    value rather than an optional keeps comparisons branch-free in the
    solver hot loop.
    """

    cap: int
    values: np.ndarray = field(repr=False)

    @property
    def sentinel(self) -> int:
        return self.cap + 1

    def get(self, u: int, v: int) -> int:
        return int(self.values[u, v])


def all_pairs_distances_capped(graph: Graph, cap: int) -> DistMatrix:
    """BFS from every vertex, truncated at depth ``cap``."""
    if cap < 1:
        raise ValueError("cap must be >= 1")
    n = graph.n
    sentinel = cap + 1
    d = np.full((n, n), sentinel, dtype=np.int32)
    adj = graph.adjacency
    for src in range(n):
        d[src, src] = 0
        frontier = deque([src])
        while frontier:
            u = frontier.popleft()
            du = d[src, u]
            if du >= cap:
                continue
            for w in adj[u]:
                if d[src, w] == sentinel:
                    d[src, w] = du + 1
                    frontier.append(w)
    d.setflags(write=False)
    return DistMatrix(cap=cap, values=d)


def connected_components(graph: Graph) -> list[list[int]]:
    """Components as sorted vertex lists, ordered by smallest member."""
    seen = [False] * graph.n
    comps = []
    for s in range(graph.n):
        if seen[s]:
            continue
        comp = [s]
        seen[s] = True
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in graph.adjacency[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    queue.append(w)
        comps.append(sorted(comp))
    return comps


def is_connected(graph: Graph) -> bool:
    return graph.n <= 1 or len(connected_components(graph)) == 1


def build_path(n: int) -> Graph:
    """Path on n vertices, numbered in path order."""
    if n < 1:
        raise ValueError("path needs at least one vertex")
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def build_star(k: int) -> Graph:
    """Star with k leaves; vertex 0 is the head, 1..k the leaves."""
    if k < 1:
        raise ValueError("star needs at least one leaf")
    return Graph(k + 1, [(0, i) for i in range(1, k + 1)])


def build_complete_multipartite(parts: Sequence[int]) -> Graph:
    """Complete multipartite graph; parts occupy contiguous vertex ranges."""
    if not parts:
        raise ValueError("at least one part required")
    if any(a < 1 for a in parts):
        raise ValueError("part sizes must be positive")
    n = sum(parts)
    starts = []
    acc = 0
    for a in parts:
        starts.append(acc)
        acc += a
    edges = []
    for i, a in enumerate(parts):
        for j in range(i + 1, len(parts)):
            b = parts[j]
            for u in range(starts[i], starts[i] + a):
                for v in range(starts[j], starts[j] + b):
                    edges.append((u, v))
    return Graph(n, edges)


def build_complete(n: int) -> Graph:
    """Complete graph K_n."""
    return build_complete_multipartite([1] * n)


def cartesian_product(g: Graph, h: Graph) -> Graph:
    """Cartesian product; vertex (u, v) is numbered u*h.n + v.

    (u1,u2) ~ (v1,v2) iff equal in one coordinate and adjacent in the
    other. Labels record coordinate tuples, comma-separated.
    """
    if g.n == 0 or h.n == 0:
        raise ValueError("product factors must be nonempty")
    glab = g.labels or tuple(str(i) for i in range(g.n))
    hlab = h.labels or tuple(str(i) for i in range(h.n))
    n = g.n * h.n
    edges = []
    for u in range(g.n):
        for a, b in h.edges:
            edges.append((u * h.n + a, u * h.n + b))
    for a, b in g.edges:
        for v in range(h.n):
            edges.append((a * h.n + v, b * h.n + v))
    labels = [f"{glab[u]},{hlab[v]}" for u in range(g.n) for v in range(h.n)]
    return Graph(n, edges, labels)


def cartesian_power(g: Graph, b: int) -> Graph:
    """b-fold Cartesian power of g; row-major coordinate numbering."""
    if b < 1:
        raise ValueError("power must be >= 1")
    base = Graph(g.n, g.edges, g.labels or tuple(str(i) for i in range(g.n)))
    out = base
    for _ in range(b - 1):
        out = cartesian_product(out, base)
    return out


def build_truncated_regular_tree(delta: int, depth: int) -> Graph:
    """Depth-``depth`` truncation of the infinite delta-regular tree.

    The root (vertex 0) has delta children; every deeper internal vertex
    has delta-1 children; leaves sit at distance ``depth`` from the root.
    Vertices are numbered in BFS level order, so the parent of any
    non-root vertex is its unique neighbor with a smaller index.
    """
    if delta < 2:
        raise ValueError("delta must be >= 2")
    if depth < 0:
        raise ValueError("depth must be >= 0")
    edges = []
    next_vertex = 1
    level = [0]
    for lev in range(depth):
        children_per = delta if lev == 0 else delta - 1
        new_level = []
        for parent in level:
            for _ in range(children_per):
                edges.append((parent, next_vertex))
                new_level.append(next_vertex)
                next_vertex += 1
        level = new_level
    return Graph(next_vertex, edges)


def build_gnp(n: int, p: float, seed: int) -> Graph:
    """Erdos-Renyi-Gilbert G(n, p) from a seeded PCG64 stream.

    Each unordered pair (u, v), u < v, is included independently with
    probability p. Pairs are drawn in row order (all pairs with the
    smaller endpoint u, ascending v), one uniform each, from
    numpy.random.Generator(PCG64(seed)), so a seed reproduces the same
    graph bit-exactly on any platform.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if not (0.0 <= p <= 1.0):
        raise ValueError("p must lie in [0, 1]")
    rng = np.random.Generator(np.random.PCG64(seed))
    edges = []
    for u in range(n - 1):
        row = rng.random(n - 1 - u)
        for off in np.flatnonzero(row < p):
            edges.append((u, u + 1 + int(off)))
    return Graph(n, edges)


def format_graph(graph: Graph) -> str:
    """Graph text format: `n m` header then one `u v` line per edge."""
    lines = [f"{graph.n} {graph.m}"]
    for u, v in graph.sorted_edges():
        lines.append(f"{u} {v}")
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> Graph:
    """Parse the graph text format; `#` starts a comment."""
    rows = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append(line)
    if not rows:
        raise ValueError("empty graph file")
    head = rows[0].split()
    if len(head) != 2:
        raise ValueError("header must be `n m`")
    n, m = int(head[0]), int(head[1])
    if len(rows) - 1 != m:
        raise ValueError(f"expected {m} edge lines, found {len(rows) - 1}")
    edges = []
    for line in rows[1:]:
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"bad edge line: {line!r}")
        edges.append((int(parts[0]), int(parts[1])))
    return Graph(n, edges)


def save_graph(graph: Graph, path) -> None:
    with open(path, "w") as fh:
        fh.write(format_graph(graph))


def load_graph(path) -> Graph:
    with open(path) as fh:
        return parse_graph(fh.read())
