"""Closed-form bounds and exact formulas for the t-tone chromatic number.

All square roots and ceilings are evaluated with integer arithmetic
(math.isqrt). Floating point is never consulted: an off-by-one at a
perfect square such as sqrt(121) would silently corrupt whole tables.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence

from .graphs import Graph, all_pairs_distances_capped, is_connected


@dataclass(frozen=True)
class BoundReport:
    """One formula's verdict: a value with its kind, or why it doesn't apply."""

    value: Optional[int]
    kind: str  # "lower" | "exact" | "upper"
    source: str
    applicable: bool = True
    reason: str = ""

    def __post_init__(self):
        if self.kind not in ("lower", "exact", "upper"):
            raise ValueError(f"bad bound kind {self.kind!r}")
        if not self.applicable and not self.reason:
            raise ValueError("inapplicable bound needs a reason")


def ceil_half_sum_sqrt(a: int, radicand: int) -> int:
    """ceil((a + sqrt(radicand)) / 2) in exact integer arithmetic."""
    if radicand < 0:
        raise ValueError("negative radicand")
    s = math.isqrt(radicand)
    if s * s == radicand:
        return (a + s + 1) // 2
    # s < sqrt(radicand) < s+1, so the ceiling is floor((a+s)/2) + 1.
    return (a + s) // 2 + 1


def degree_lower_bound(delta: int, t: int) -> int:
    """Lower bound from a max-degree vertex: its t colors are banned on all
    neighbors and no two neighbors may share two colors, so delta*C(t,2)
    distinct color pairs must fit into C(k-t, 2)."""
    if t < 2:
        raise ValueError("degree lower bound requires t >= 2")
    if delta < 1:
        raise ValueError("delta must be >= 1")
    return ceil_half_sum_sqrt(2 * t + 1, 1 + 4 * t * (t - 1) * delta)


def tree2tone_formula(delta: int) -> int:
    """Exact 2-tone chromatic number of any tree with max degree delta."""
    if delta < 1:
        raise ValueError("delta must be >= 1")
    return ceil_half_sum_sqrt(5, 8 * delta + 1)


def path_formula(n: int, t: int) -> int:
    """Exact t-tone chromatic number of the n-vertex path."""
    if n < 1 or t < 1:
        raise ValueError("need n >= 1 and t >= 1")
    return sum(max(0, t - math.comb(i, 2)) for i in range(n))


def distance_deficiency(graph: Graph) -> tuple[int, int]:
    """(sum over unordered pairs of d(u,v)-1, diameter) for connected graphs."""
    if graph.n == 0:
        raise ValueError("empty graph")
    dist = all_pairs_distances_capped(graph, cap=max(1, graph.n))
    total = 0
    diameter = 0
    for u in range(graph.n):
        for v in range(u + 1, graph.n):
            d = dist.get(u, v)
            if d >= dist.sentinel:
                raise ValueError("graph is disconnected; diameter undefined")
            total += d - 1
            diameter = max(diameter, d)
    return total, diameter


def pairsum_bound(graph: Graph, t: int) -> BoundReport:
    """tn minus the pair deficiency; exact once t >= (n-1)(D-1)."""
    if t < 1:
        raise ValueError("t must be >= 1")
    if not is_connected(graph):
        raise ValueError("pairsum bound requires a connected graph")
    deficiency, diameter = distance_deficiency(graph)
    value = t * graph.n - deficiency
    threshold = (graph.n - 1) * (diameter - 1)
    if t >= threshold:
        return BoundReport(value, "exact", "pairsum")
    return BoundReport(
        value,
        "lower",
        "pairsum",
        applicable=True,
        reason=f"equality needs t >= {threshold}",
    )


def star_formula(k: int, t: int) -> BoundReport:
    """(k+1)t - C(k,2), exact for stars once t >= k."""
    if k < 1 or t < 1:
        raise ValueError("need k >= 1 and t >= 1")
    if t < k:
        return BoundReport(
            None,
            "exact",
            "star_formula",
            applicable=False,
            reason=f"needs t >= k (got t={t}, k={k}); use the exact solver",
        )
    return BoundReport((k + 1) * t - math.comb(k, 2), "exact", "star_formula")


class MultipartiteLower(NamedTuple):
    real_value: float
    integer_value: int


def min_palette_for_pairs(t: int, a: int) -> int:
    """Smallest c with C(c,2) >= C(t,2)*a, solved exactly.

    Within one part all pairs are at distance 2, so no color pair may
    repeat: a vertices each burn C(t,2) distinct pairs.
    """
    need = math.comb(t, 2) * a
    # c*(c-1) >= 2*need; start from the integer sqrt and walk up.
    c = max(t, math.isqrt(2 * need))
    while math.comb(c, 2) < need:
        c += 1
    return c


def multipartite_lower(parts: Sequence[int], t: int) -> MultipartiteLower:
    """Lower bound for complete multipartite graphs.

    Parts must use pairwise disjoint palettes, so the bound is the sum of
    per-part requirements: the real-valued sum(sqrt(t(t-1)a_i))
    and an exact integer refinement from the same pair counting.
    """
    if t < 2:
        raise ValueError("multipartite lower bound requires t >= 2")
    if not parts or any(a < 1 for a in parts):
        raise ValueError("part sizes must be positive")
    real_value = sum(math.sqrt(t * (t - 1) * a) for a in parts)
    integer_value = sum(min_palette_for_pairs(t, a) for a in parts)
    return MultipartiteLower(real_value, integer_value)
