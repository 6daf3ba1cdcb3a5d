"""Exact t-tone solver: feasibility search, optimum computation, brute oracle.

The decision search assigns t-subsets of {0..k-1} to vertices in a fixed
order and prunes any partial assignment in which some colored pair at
distance d <= t already shares d colors.

Completeness of the symmetry breaking: any valid coloring can be relabeled
by a color permutation so that, scanning vertices in the search order and
each vertex's colors in ascending order, the j-th distinct color to appear
is index j-1 ("introduce colors in order"). Relabeling permutes color
names only; validity depends on set intersections, never on which indices
occur, so every coloring is equivalent to a canonical one. The search
enumerates exactly the canonical assignments, hence Infeasible means no
coloring exists at all. Forcing the first vertex to {0..t-1} is the
used=0 case of the same rule.
"""

from __future__ import annotations

import multiprocessing
import time
from collections import deque
from dataclasses import dataclass, replace
from itertools import combinations
from typing import Optional

from . import bounds
from .coloring import ToneColoring, verify
from .graphs import Graph, all_pairs_distances_capped, connected_components

DEFAULT_BUDGET_NODES = 50_000_000

FEASIBLE = "feasible"
INFEASIBLE = "infeasible"
TIMEOUT = "timeout"

EXACT = "exact"
LOWER_ONLY = "lower_only"


@dataclass(frozen=True)
class SearchBudget:
    """Node and/or wall-clock caps; at least one must be finite."""

    max_nodes: Optional[int] = DEFAULT_BUDGET_NODES
    max_millis: Optional[float] = None

    def __post_init__(self):
        if self.max_nodes is None and self.max_millis is None:
            raise ValueError("at least one budget cap must be finite")


@dataclass
class SearchStats:
    nodes: int = 0
    elapsed_ms: float = 0.0
    budget_exhausted: bool = False


@dataclass(frozen=True)
class FeasibilityResult:
    status: str  # feasible | infeasible | timeout
    witness: Optional[ToneColoring]
    stats: SearchStats


@dataclass(frozen=True)
class SolveOutcome:
    status: str  # exact | lower_only | timeout
    value: Optional[int]
    best_lower: int
    best_upper: Optional[int]
    witness: Optional[ToneColoring]
    stats: SearchStats


class _BudgetExhausted(Exception):
    pass


def search_order(graph: Graph) -> list[int]:
    """Descending degree, ties broken by BFS order from a max-degree vertex.

    The max-degree vertex and its neighborhood carry the binding
    constraints, so they are placed first. BFS restarts per component.
    """
    n = graph.n
    degs = graph.degrees
    bfs_index = [-1] * n
    counter = 0
    seen = [False] * n
    by_degree = sorted(range(n), key=lambda v: (-degs[v], v))
    for seed in by_degree:
        if seen[seed]:
            continue
        seen[seed] = True
        queue = deque([seed])
        while queue:
            u = queue.popleft()
            bfs_index[u] = counter
            counter += 1
            for w in graph.adjacency[u]:
                if not seen[w]:
                    seen[w] = True
                    queue.append(w)
    return sorted(range(n), key=lambda v: (-degs[v], bfs_index[v]))


def _prepare(
    graph: Graph, t: int
) -> tuple[list[int], list[list[tuple[int, int]]], list[int]]:
    """Search order, per-position constraint lists, and fresh-color floor.

    partners[i] holds (earlier position, allowed shared count) for every
    earlier vertex within distance t. suffix_fresh[i] is a lower bound on
    the number of brand-new colors positions i.. must introduce: when all
    earlier vertices constrain position j, its old picks are capped by the
    summed allowances, so it needs at least t - sum(d-1) fresh colors
    (the pair-counting argument behind the pairsum lower bound). Placing
    more colors than k - suffix_fresh[i+1] admits is therefore a dead end.
    """
    order = search_order(graph)
    dist = all_pairs_distances_capped(graph, cap=t) if graph.n else None
    partners: list[list[tuple[int, int]]] = []
    fresh_min: list[int] = []
    for i, v in enumerate(order):
        plist = []
        for j in range(i):
            d = dist.get(v, order[j])
            if d <= t:
                plist.append((j, d - 1))
        partners.append(plist)
        if len(plist) == i:  # every earlier vertex constrains this one
            fresh_min.append(max(0, t - sum(lim for _, lim in plist)))
        else:
            fresh_min.append(0)
    suffix_fresh = [0] * (len(order) + 1)
    for i in range(len(order) - 1, -1, -1):
        suffix_fresh[i] = suffix_fresh[i + 1] + fresh_min[i]
    return order, partners, suffix_fresh


class _Meter:
    """Deterministic work counter enforcing node and wall-clock caps.

    A node is any search step: a vertex placement attempt or an entry into
    the candidate-subset DFS. Counting the latter keeps barren candidate
    enumerations interruptible, not just completed placements.
    """

    __slots__ = ("nodes", "cap", "deadline")

    def __init__(self, cap: float = float("inf"), deadline: Optional[float] = None):
        self.nodes = 0
        self.cap = cap
        self.deadline = deadline

    def step(self) -> None:
        self.nodes += 1
        if self.nodes > self.cap:
            raise _BudgetExhausted
        if self.deadline is not None and self.nodes % 1024 == 0:
            if time.monotonic() > self.deadline:
                raise _BudgetExhausted


def _candidate_sets(
    k: int,
    t: int,
    used: int,
    constraints: list[tuple[int, int]],
    meter: Optional[_Meter] = None,
):
    """Yield valid t-subsets of {0..k-1} as bitmasks, lexicographically.

    ``used`` colors have been introduced so far; by the introduce-in-order
    rule they are exactly 0..used-1, and any new colors in the candidate
    must be used, used+1, ... consecutively. Each yielded mask satisfies
    popcount(mask & cmask) <= limit for every (cmask, limit) constraint.
    Constraint masks only contain already-introduced colors, so brand-new
    picks never need a constraint check.

    Reachability pruning: every pick of a constrained color consumes at
    least one unit of the summed remaining constraint allowance, so the
    picks still obtainable are at most (unconstrained colors ahead) +
    min(summed allowance, constrained colors ahead) + (new colors left).
    That over-estimate never drops a valid candidate but refutes a vertex
    whose remaining palette cannot reach t in one step.
    """
    ncon = len(constraints)
    counts = [0] * ncon
    cmasks = [c[0] for c in constraints]
    limits = [c[1] for c in constraints]
    all_mask = 0
    for m in cmasks:
        all_mask |= m
    # free_suffix[c] = colors in [c, used) that appear in no constraint
    free_suffix = [0] * (used + 1)
    for c in range(used - 1, -1, -1):
        free_suffix[c] = free_suffix[c + 1] + (0 if (all_mask >> c) & 1 else 1)
    allowance = sum(limits)

    def reachable(lo: int, new_next: int) -> int:
        lo = min(lo, used)
        free = free_suffix[lo]
        bounded = (used - lo) - free
        return free + min(allowance, bounded) + (k - new_next)

    def rec(lo: int, new_next: int, picked: int, mask: int):
        nonlocal allowance
        if meter is not None:
            meter.step()
        if picked == t:
            yield mask
            return
        slots = t - picked
        if reachable(lo, new_next) < slots:
            return
        for c in range(lo, used):
            if reachable(c, new_next) < slots:
                break
            bit = 1 << c
            ok = True
            touched = []
            for i in range(ncon):
                if cmasks[i] & bit:
                    if counts[i] + 1 > limits[i]:
                        ok = False
                        break
                    touched.append(i)
            if ok:
                for i in touched:
                    counts[i] += 1
                allowance -= len(touched)
                yield from rec(c + 1, new_next, picked + 1, mask | bit)
                for i in touched:
                    counts[i] -= 1
                allowance += len(touched)
        if new_next < k:
            yield from rec(new_next + 1, new_next + 1, picked + 1, mask | (1 << new_next))

    yield from rec(0, used, 0, 0)


def _search(
    order,
    partners,
    suffix_fresh,
    t: int,
    k: int,
    assign: list[int],
    used: int,
    pos: int,
    meter: _Meter,
) -> bool:
    if pos == len(order):
        return True
    constraints = [(assign[j], limit) for j, limit in partners[pos]]
    # colors introduced through this position must leave room for the
    # fresh colors the remaining positions are guaranteed to need
    k_eff = k - suffix_fresh[pos + 1]
    for mask in _candidate_sets(k_eff, t, used, constraints, meter):
        meter.step()
        assign[pos] = mask
        new_used = max(used, mask.bit_length())
        if _search(order, partners, suffix_fresh, t, k, assign, new_used, pos + 1, meter):
            return True
    assign[pos] = 0
    return False


def _witness_from(order, assign, t: int, k: int) -> ToneColoring:
    rows: list[list[int]] = [[] for _ in order]
    for i, v in enumerate(order):
        mask = assign[i]
        rows[v] = [c for c in range(k) if (mask >> c) & 1]
    return ToneColoring(t, k, rows)


def _chunk_worker(args):
    """Search the subtree below one fixed second-vertex candidate set.

    Top-level so it pickles for process pools; returns
    (status, assignment rows or None, nodes used).
    """
    graph, t, k, pos1_mask, node_cap, max_millis = args
    order, partners, suffix_fresh = _prepare(graph, t)
    assign = [0] * len(order)
    assign[0] = (1 << t) - 1
    assign[1] = pos1_mask
    used = max(t, pos1_mask.bit_length())
    deadline = time.monotonic() + max_millis / 1000.0 if max_millis is not None else None
    meter = _Meter(node_cap if node_cap is not None else float("inf"), deadline)
    try:
        found = _search(order, partners, suffix_fresh, t, k, assign, used, 2, meter)
    except _BudgetExhausted:
        return (TIMEOUT, None, meter.nodes)
    if found:
        wit = _witness_from(order, assign, t, k)
        return (FEASIBLE, wit.assignment, meter.nodes)
    return (INFEASIBLE, None, meter.nodes)


def feasible(
    graph: Graph,
    t: int,
    k: int,
    budget: Optional[SearchBudget] = None,
    workers: int = 1,
) -> FeasibilityResult:
    """Decide whether graph admits a t-tone coloring with k colors.

    Feasible results carry a verified witness; Infeasible is exhaustive
    under the completeness-preserving symmetry breaking described in the
    module docstring. Timeout never fabricates either verdict.
    """
    if t < 1:
        raise ValueError("t must be >= 1")
    if k < t:
        raise ValueError(f"k={k} < t={t}: each vertex needs t distinct colors")
    budget = budget or SearchBudget()
    start = time.monotonic()
    if graph.n == 0:
        return FeasibilityResult(FEASIBLE, ToneColoring(t, k, []), SearchStats())
    if workers > 1 and graph.n >= 2:
        result = _feasible_parallel(graph, t, k, budget, workers)
    else:
        order, partners, suffix_fresh = _prepare(graph, t)
        assign = [0] * len(order)
        node_cap = budget.max_nodes if budget.max_nodes is not None else float("inf")
        deadline = (
            start + budget.max_millis / 1000.0 if budget.max_millis is not None else None
        )
        meter = _Meter(node_cap, deadline)
        try:
            found = _search(order, partners, suffix_fresh, t, k, assign, 0, 0, meter)
        except _BudgetExhausted:
            stats = SearchStats(nodes=meter.nodes, budget_exhausted=True)
            result = FeasibilityResult(TIMEOUT, None, stats)
        else:
            witness = _witness_from(order, assign, t, k) if found else None
            stats = SearchStats(nodes=meter.nodes)
            result = FeasibilityResult(FEASIBLE if found else INFEASIBLE, witness, stats)
    result.stats.elapsed_ms = (time.monotonic() - start) * 1000.0
    if result.status == FEASIBLE:
        report = verify(graph, result.witness)
        if not report.valid:
            raise AssertionError("search produced an invalid witness")
    return result


def _feasible_parallel(graph, t, k, budget, workers) -> FeasibilityResult:
    """Split the first free branching level across worker processes.

    One job per candidate set of the second search position; the merge
    scans results in candidate order, so the outcome and witness are
    reproducible for a fixed worker count. The jobs cover the whole
    candidate list, preserving completeness.
    """
    order, partners, suffix_fresh = _prepare(graph, t)
    root_mask = (1 << t) - 1
    constraints = [(root_mask, limit) for j, limit in partners[1] if j == 0]
    pos1 = list(_candidate_sets(k - suffix_fresh[2], t, t, constraints))
    if not pos1:
        return FeasibilityResult(INFEASIBLE, None, SearchStats(nodes=1))
    per_node_cap = (
        max(1, budget.max_nodes // len(pos1)) if budget.max_nodes is not None else None
    )
    jobs = [(graph, t, k, mask, per_node_cap, budget.max_millis) for mask in pos1]
    ctx = multiprocessing.get_context("fork")
    with ctx.Pool(processes=min(workers, len(jobs))) as pool:
        results = pool.map(_chunk_worker, jobs)
    total_nodes = sum(r[2] for r in results) + len(pos1)
    for status, rows, _ in results:
        if status == FEASIBLE:
            wit = ToneColoring(t, k, rows)
            return FeasibilityResult(FEASIBLE, wit, SearchStats(nodes=total_nodes))
    if any(r[0] == TIMEOUT for r in results):
        return FeasibilityResult(
            TIMEOUT, None, SearchStats(nodes=total_nodes, budget_exhausted=True)
        )
    return FeasibilityResult(INFEASIBLE, None, SearchStats(nodes=total_nodes))


def greedy_clique_size(graph: Graph) -> int:
    """Size of a greedily grown clique (max degree first, lowest index ties)."""
    if graph.n == 0:
        return 0
    degs = graph.degrees
    seed = min(range(graph.n), key=lambda v: (-degs[v], v))
    clique = [seed]
    common = set(graph.adjacency[seed])
    while common:
        nxt = min(common, key=lambda v: (-degs[v], v))
        clique.append(nxt)
        common &= set(graph.adjacency[nxt])
    return len(clique)


def starting_lower_bound(graph: Graph, t: int) -> int:
    """max of the closed-form lower bounds: degree, per-component pairsum,
    and t times a greedy clique size."""
    best = t if graph.n else 0
    if graph.n and graph.max_degree >= 1 and t >= 2:
        best = max(best, bounds.degree_lower_bound(graph.max_degree, t))
    for comp in connected_components(graph):
        sub = graph.induced_subgraph(comp)
        best = max(best, bounds.pairsum_bound(sub, t).value)
    best = max(best, t * greedy_clique_size(graph))
    return best


def _trivial_coloring(graph: Graph, t: int) -> ToneColoring:
    """Pairwise disjoint t-sets; valid on any graph with t*n colors."""
    rows = [list(range(v * t, (v + 1) * t)) for v in range(graph.n)]
    return ToneColoring(t, t * graph.n, rows)


def tau_exact(
    graph: Graph,
    t: int,
    budget: Optional[SearchBudget] = None,
    k_max: Optional[int] = None,
    workers: int = 1,
) -> SolveOutcome:
    """Compute the t-tone chromatic number by incrementing k from the best
    closed-form lower bound until the decision search finds a coloring.

    Exact outcomes carry the witness; the infeasibility of value-1 is
    either search-proved (when the loop visited it) or implied by the
    starting lower bound. On budget exhaustion the outcome is the honest
    bracket with the trivial disjoint coloring as upper witness.
    """
    if t < 1:
        raise ValueError("t must be >= 1")
    if graph.n == 0:
        raise ValueError("empty graph")
    budget = budget or SearchBudget()
    start = time.monotonic()
    total_nodes = 0
    k = starting_lower_bound(graph, t)
    while k_max is None or k <= k_max:
        sub_budget = budget
        if budget.max_nodes is not None:
            remaining = budget.max_nodes - total_nodes
            if remaining <= 0:
                break
            sub_budget = replace(budget, max_nodes=remaining)
        if budget.max_millis is not None:
            remaining_ms = budget.max_millis - (time.monotonic() - start) * 1000.0
            if remaining_ms <= 0:
                break
            sub_budget = replace(sub_budget, max_millis=remaining_ms)
        res = feasible(graph, t, k, sub_budget, workers=workers)
        total_nodes += res.stats.nodes
        elapsed = (time.monotonic() - start) * 1000.0
        if res.status == FEASIBLE:
            stats = SearchStats(nodes=total_nodes, elapsed_ms=elapsed)
            return SolveOutcome(EXACT, k, k, k, res.witness, stats)
        if res.status == TIMEOUT:
            stats = SearchStats(nodes=total_nodes, elapsed_ms=elapsed, budget_exhausted=True)
            return SolveOutcome(
                TIMEOUT, None, k, t * graph.n, _trivial_coloring(graph, t), stats
            )
        k += 1
    elapsed = (time.monotonic() - start) * 1000.0
    if k_max is not None and k > k_max:
        stats = SearchStats(nodes=total_nodes, elapsed_ms=elapsed)
        return SolveOutcome(LOWER_ONLY, k, k, None, None, stats)
    stats = SearchStats(nodes=total_nodes, elapsed_ms=elapsed, budget_exhausted=True)
    return SolveOutcome(TIMEOUT, None, k, t * graph.n, _trivial_coloring(graph, t), stats)


def brute_force_tau(graph: Graph, t: int, k_max: int) -> Optional[int]:
    """Independent oracle: smallest feasible k <= k_max by plain enumeration.

    Vertices are taken in natural index order, candidate sets come from
    itertools.combinations, and the only pruning is rejecting a partial
    assignment as soon as one pair violates its distance constraint. No
    ordering heuristics, no symmetry breaking, no shared solver machinery.
    Intended for tiny instances.
    """
    if t < 1 or graph.n == 0:
        raise ValueError("need t >= 1 and a nonempty graph")
    dist = _plain_distances(graph, cap=t)
    for k in range(t, k_max + 1):
        if _bf_extend(graph, t, k, dist, {}, 0):
            return k
    return None


def _plain_distances(graph: Graph, cap: int) -> dict[tuple[int, int], int]:
    """Dict of pair distances <= cap via BFS straight off the edge set."""
    adj: dict[int, set[int]] = {v: set() for v in range(graph.n)}
    for u, v in graph.edges:
        adj[u].add(v)
        adj[v].add(u)
    out: dict[tuple[int, int], int] = {}
    for s in range(graph.n):
        depth = {s: 0}
        frontier = [s]
        for d in range(1, cap + 1):
            nxt = []
            for u in frontier:
                for w in adj[u]:
                    if w not in depth:
                        depth[w] = d
                        nxt.append(w)
            frontier = nxt
        for v, d in depth.items():
            if s < v:
                out[(s, v)] = d
    return out


def _bf_extend(graph, t, k, dist, assigned: dict[int, frozenset], v: int) -> bool:
    if v == graph.n:
        return True
    for combo in combinations(range(k), t):
        s = frozenset(combo)
        ok = True
        for w, sw in assigned.items():
            d = dist.get((min(v, w), max(v, w)))
            if d is not None and len(s & sw) >= d:
                ok = False
                break
        if ok:
            assigned[v] = s
            if _bf_extend(graph, t, k, dist, assigned, v + 1):
                return True
            del assigned[v]
    return False
