"""PageRank timing and peak memory on a synthetic random graph.

    python scripts/bench_pagerank.py --nodes 1000000 --links 10000000 --json

Targets are skewed towards a few popular nodes, and about 5% of nodes get no
out-links, so the dangling path is exercised. Prints one JSON object when
``--json`` is given, otherwise a short human-readable summary.
"""

import argparse
import json
import os
import resource
import sys
import time

import numpy as np

from unirank.graph import DirectedGraph
from unirank.rank import RankConfig, pagerank


def synthetic_edges(n: int, links: int, seed: int):
    """Exactly ``links`` distinct non-loop (src, dst) pairs."""
    rng = np.random.default_rng(seed)
    active = np.flatnonzero(rng.random(n) >= 0.05)
    keys = np.empty(0, dtype=np.int64)
    while keys.size < links:
        m = int((links - keys.size) * 1.01) + 16
        src = active[rng.integers(0, active.size, m)]
        # mix of uniform and popularity-skewed targets
        skewed = (n * rng.random(m) ** 3).astype(np.int64)
        dst = np.where(rng.random(m) < 0.5, rng.integers(0, n, m), skewed)
        keys = np.union1d(keys, (src * n + dst)[src != dst])
    keys = rng.choice(keys, links, replace=False)
    return np.divmod(keys, n)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--nodes", type=int, default=1_000_000)
    ap.add_argument("--links", type=int, default=10_000_000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--tolerance", type=float, default=1e-12)
    ap.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args(argv)

    t0 = time.perf_counter()
    src, dst = synthetic_edges(args.nodes, args.links, args.seed)
    graph, report = DirectedGraph.from_edges(src, dst, args.nodes)
    del src, dst
    t1 = time.perf_counter()
    result = pagerank(graph, RankConfig(tolerance=args.tolerance, workers=args.workers))
    t2 = time.perf_counter()

    out = {
        "nodes": graph.node_count,
        "links": graph.link_count,
        "duplicates_dropped": report.duplicates_dropped,
        "self_loops_dropped": report.self_loops_dropped,
        "workers": args.workers,
        "cpus": os.cpu_count(),
        "build_seconds": round(t1 - t0, 3),
        "pagerank_seconds": round(t2 - t1, 3),
        "iterations": result.iterations,
        "residual": result.residual,
        "converged": result.residual <= args.tolerance,
        "stagnated": result.stagnated,
        # ru_maxrss is in KiB on Linux
        "peak_rss_mb": round(resource.getrusage(resource.RUSAGE_SELF).ru_maxrss / 1024, 1),
    }
    if args.json:
        print(json.dumps(out))
    else:
        for k, v in out.items():
            print(f"{k:>20}: {v}")
    return 0 if out["converged"] else 1


if __name__ == "__main__":
    sys.exit(main())
