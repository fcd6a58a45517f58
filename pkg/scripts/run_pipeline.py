#!/usr/bin/env python3
"""Run the decomposition pipeline on complete graphs and print stage stats.

Usage:
    python scripts/run_pipeline.py [--sizes 9,21,51] [--seeds 5] [--eps 0.05]
"""

from __future__ import annotations

import argparse
import time

from hamdeck.decompose import run_pipeline
from hamdeck.graphs import complete_graph
from hamdeck.partition import default_params
from hamdeck.walecki import verify_decomposition


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", default="9,21,51", help="comma-separated odd n")
    parser.add_argument("--seeds", type=int, default=5)
    parser.add_argument("--eps", type=float, default=0.05)
    parser.add_argument("--max-steps", type=int, default=None)
    args = parser.parse_args()

    sizes = [int(s) for s in args.sizes.split(",")]
    print(f"{'n':>4} {'seed':>4} {'rot':>4} {'done':>4} {'att':>4} {'d0':>4} {'time':>8}")
    for n in sizes:
        g = complete_graph(n)
        subtotal = 0.0
        for seed in range(args.seeds):
            params = default_params(g, seed=seed, eps=args.eps, max_steps=args.max_steps)
            t0 = time.perf_counter()
            run = run_pipeline(g, params, seed=seed)
            dt = time.perf_counter() - t0
            subtotal += dt
            assert verify_decomposition(g, run.decomposition).ok
            d0 = run.partition_stats.get("core_degree", "-")
            print(
                f"{n:>4} {seed:>4} {run.rotation_cycles:>4} "
                f"{run.completed_cycles:>4} {run.attempts:>4} {d0:>4} {dt:>7.2f}s"
            )
        print(f"{'':>4} subtotal {subtotal:.2f}s")


if __name__ == "__main__":
    main()
