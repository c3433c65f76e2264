"""Cross-check the two exact core engines and the oracle on random instances.

Prints one line per disagreement and a summary; exits non-zero on any.
"""
from __future__ import annotations

import argparse
import random
import sys

from threshold_edit.generators import random_instance_graph
from threshold_edit.oracle import optimum
from threshold_edit.problem import Instance
from threshold_edit.solver import SolverConfig, solve


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=100)
    ap.add_argument("--max-n", type=int, default=10)
    ap.add_argument("--max-k", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    bad = 0
    for idx in range(args.count):
        target = rng.choice(("threshold", "chain"))
        variant = rng.choice(("edit", "complete", "delete"))
        g = random_instance_graph(rng, rng.randint(1, args.max_n), target)
        inst = Instance(g, rng.randint(0, args.max_k), target, variant)
        want = optimum(inst)
        got = {}
        for engine in ("subexp", "peel"):
            f = solve(inst, SolverConfig(engine=engine))
            got[engine] = None if f is None else len(f)
        if any(v != want for v in got.values()):
            bad += 1
            print(f"#{idx} {target}/{variant} n={g.n} k={inst.k}: oracle {want}, {got}")
    print(f"{args.count - bad}/{args.count} instances agree")
    sys.exit(1 if bad else 0)


if __name__ == "__main__":
    main()
