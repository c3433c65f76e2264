"""Planted threshold instances: wall time and optimum against the number of flips.

    python scripts/bench_planted.py -n 40 -r 4 8 12 16 --seeds 3 --workers 3
"""
from __future__ import annotations

import argparse
import csv
import sys
from concurrent.futures import ProcessPoolExecutor

from threshold_edit.generators import gen_instance
from threshold_edit.problem import Instance
from threshold_edit.solver import SolverConfig, TimeLimitExceeded, solve_with_report

FIELDS = ("seed", "n", "r", "kernel", "partitions", "engines", "optimum", "seconds")


def run(job):
    seed, n, r, limit = job
    g, _ = gen_instance(seed, n, r)
    try:
        rep = solve_with_report(Instance(g, r), SolverConfig(time_limit=limit))
    except TimeLimitExceeded:
        return dict(seed=seed, n=n, r=r, kernel="-", partitions="-", engines="-", optimum="timeout", seconds=limit)
    engines = " ".join(f"{e}:{c}" for e, c in sorted(rep.engines.items()))
    return dict(seed=seed, n=n, r=r, kernel=rep.kernel_vertices, partitions=rep.partitions,
                engines=engines, optimum=rep.optimum, seconds=round(rep.seconds, 2))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("-n", type=int, default=40)
    ap.add_argument("-r", type=int, nargs="+", default=[4, 8, 12, 16])
    ap.add_argument("--seeds", type=int, default=1)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--time-limit", type=float, default=600.0)
    args = ap.parse_args()
    jobs = [(s, args.n, r, args.time_limit) for r in args.r for s in range(args.seeds)]
    with ProcessPoolExecutor(args.workers) as pool:
        rows = list(pool.map(run, jobs))
    out = csv.DictWriter(sys.stdout, FIELDS, delimiter="\t")
    out.writeheader()
    out.writerows(rows)


if __name__ == "__main__":
    main()
