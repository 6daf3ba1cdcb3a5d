#!/usr/bin/env python3
"""Sparse random graph sweep: lower/upper sandwich across seeds.

For G(n, c/n) the interesting quantity is how close the cheap upper
bounds get to sqrt(t(t-1) * max_degree). Emits one JSON row per seed,
ready for external plotting.

Usage: python scripts/gnp_experiment.py [--n 2000] [--c 2.0] [--t 2]
       [--seeds 20] [-o rows.jsonl]
"""

import argparse
import json
import math
import sys

from tonelab.bounds import degree_lower_bound
from tonelab.coloring import colors_used
from tonelab.constructions import greedy_heuristic_coloring, two_tone_via_decomposition
from tonelab.graphs import build_gnp


def run_seed(n: int, c: float, t: int, seed: int) -> dict:
    graph = build_gnp(n, c / n, seed)
    delta = graph.max_degree
    lower = degree_lower_bound(delta, t) if delta >= 1 and t >= 2 else t
    cap = max(t, lower)
    coloring = None
    while coloring is None:
        coloring = greedy_heuristic_coloring(graph, t, cap)
        cap += 1
    upper = colors_used(coloring)
    decomp_upper = None
    if t == 2:
        decomp, _ = two_tone_via_decomposition(graph)
        decomp_upper = colors_used(decomp)
        upper = min(upper, decomp_upper)
    ratio = upper / math.sqrt(t * (t - 1) * delta) if delta and t >= 2 else None
    return {
        "seed": seed,
        "edges": graph.m,
        "max_degree": delta,
        "lower": lower,
        "upper": upper,
        "decomp_upper": decomp_upper,
        "ratio": round(ratio, 6) if ratio is not None else None,
    }


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=2000)
    parser.add_argument("--c", type=float, default=2.0)
    parser.add_argument("--t", type=int, default=2)
    parser.add_argument("--seeds", type=int, default=20)
    parser.add_argument("-o", "--output", help="write JSON lines here instead of stdout")
    args = parser.parse_args()

    out = open(args.output, "w") if args.output else sys.stdout
    worst = 0.0
    for seed in range(args.seeds):
        row = run_seed(args.n, args.c, args.t, seed)
        assert row["lower"] <= row["upper"]
        if row["ratio"] is not None:
            worst = max(worst, row["ratio"])
        print(json.dumps(row, sort_keys=True), file=out)
    if args.output:
        out.close()
    print(f"# {args.seeds} seeds, worst upper/sqrt ratio {worst:.3f}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
