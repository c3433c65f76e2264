"""Command-line front end.

Exit codes: 0 yes/success, 1 no-instance or rejected, 2 usage or parse
error, 3 time limit exceeded.
"""
from __future__ import annotations

import argparse
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .formats import (
    ParseError,
    SolutionFile,
    parse_cnf,
    parse_graph,
    parse_instance,
    parse_solution,
    serialize_graph,
    serialize_instance,
    serialize_layout,
    serialize_solution,
)
from .generators import gen_instance
from .graph import VARIANTS, ContractError, Graph, GraphInputError, complement, mask_of
from .kernel import kernelize
from .oracle import brute_force_oracle
from .problem import CHORDAL, TARGETS, Instance, verify_solution
from .recognition import (
    CHAIN,
    THRESHOLD,
    compute_split_partition,
    is_chordal,
    recognize,
    two_coloring,
)
from .reductions import (
    bipartite_chain_to_chain,
    bipartite_chain_to_cobipartite_chordal,
    cobipartite_to_chordal,
    sat_to_threshold_editing,
    split_te_to_bipartite_chain,
)
from .solver import ENGINES, SolverConfig, TimeLimitExceeded, solve_with_report

OK, NO, USAGE, TIMEOUT = 0, 1, 2, 3
THREADS_ENV = "THRESHOLD_EDIT_THREADS"
REDUCTIONS = ("sat2te", "ste2bce", "bce2ce", "bce2cce", "cce2chordal")


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _emit(text: str, path: str | None) -> None:
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def _instance(args) -> Instance:
    return parse_instance(_read(args.graph), args.k, args.target, args.variant)


def _sides(g: Graph) -> tuple[int, int]:
    colors, conflict = two_coloring(g)
    if conflict is not None:
        raise UsageError("graph is not bipartite")
    side_a = mask_of(v for v in range(g.n) if colors[v] == 0)
    return side_a, g.all_mask & ~side_a


# --- subcommands -------------------------------------------------------------------


def cmd_recognize(args) -> int:
    g = parse_graph(_read(args.graph))
    if args.target == CHORDAL:
        res = is_chordal(g)
        print("yes" if res.yes else "no chordless-cycle " + " ".join(map(str, res.cycle)))
        return OK if res.yes else NO
    res = recognize(g, args.target)
    if res.yes:
        print("yes")
        if res.partition is not None:
            for i, (c, x) in enumerate(res.partition.fragments()):
                print(f"level {i} C {' '.join(map(str, sorted(c)))} | I {' '.join(map(str, sorted(x)))}")
        return OK
    obs = res.obstruction
    print(f"no {obs.kind} " + " ".join(map(str, obs.vertices)))
    return NO


def cmd_kernelize(args) -> int:
    inst = _instance(args)
    if inst.target == CHORDAL:
        raise UsageError("kernelize covers threshold and chain targets")
    kr = kernelize(inst)
    if kr.no_instance:
        print("NO")
        return NO
    red = kr.instance
    text = serialize_graph(red.graph, (
        f"instance k={red.k} target={red.target} variant={red.variant}",
        "kept " + " ".join(map(str, kr.kept)),
    ))
    _emit(text, args.output)
    if args.output:
        print(f"kernel {red.graph.n} vertices, k={red.k}")
    return OK


def _write_solution(inst: Instance, edits, args) -> int:
    if edits is None:
        print("NO")
        return NO
    sol = SolutionFile.from_edits(inst.graph, edits, inst.target, inst.variant)
    _emit(serialize_solution(sol), args.output)
    if args.output:
        print(f"optimum {len(edits)}")
    return OK


def cmd_solve(args) -> int:
    inst = _instance(args)
    if inst.target == CHORDAL:
        raise UsageError("solve covers threshold and chain targets")
    cfg = SolverConfig(kernelize=not args.no_kernel, time_limit=args.time_limit, engine=args.engine)
    start = time.monotonic()
    try:
        report = solve_with_report(inst, cfg)
    except TimeLimitExceeded:
        print(f"time limit exceeded after {time.monotonic() - start:.1f}s (n={inst.graph.n}, k={inst.k})",
              file=sys.stderr)
        return TIMEOUT
    return _write_solution(inst, report.edits, args)


def cmd_oracle(args) -> int:
    inst = _instance(args)
    if inst.target == CHORDAL:
        raise UsageError("the oracle covers threshold and chain targets")
    return _write_solution(inst, brute_force_oracle(inst), args)


def cmd_verify(args) -> int:
    g = parse_graph(_read(args.graph))
    sol = parse_solution(_read(args.solution))
    k = sol.k_used if args.k is None else args.k
    problems = sol.sign_problems(g)
    if problems:
        print("rejected: sign: " + problems[0])
        return NO
    verdict = verify_solution(Instance(g, k, sol.target, sol.variant), sol.edit_set())
    print("accepted" if verdict else f"rejected: {verdict.reason}")
    return OK if verdict else NO


def cmd_reduce(args) -> int:
    if args.name == "sat2te":
        inst, layout = sat_to_threshold_editing(parse_cnf(_read(args.input)))
        if args.layout:
            Path(args.layout).write_text(serialize_layout(layout))
        _emit(serialize_instance(inst), args.output)
        return OK
    if args.k is None:
        raise UsageError(f"reduce {args.name} needs -k")
    g = parse_graph(_read(args.input))
    if args.name == "ste2bce":
        part = compute_split_partition(g)
        if part is None:
            raise UsageError("graph is not split")
        inst = split_te_to_bipartite_chain(g, part, args.k)
    elif args.name == "bce2ce":
        inst = bipartite_chain_to_chain(g, _sides(g), args.k)
    elif args.name == "bce2cce":
        inst = bipartite_chain_to_cobipartite_chordal(g, _sides(g), args.k)
    else:
        inst = cobipartite_to_chordal(g, _sides(complement(g)), args.k)
    _emit(serialize_instance(inst), args.output)
    return OK


def cmd_gen(args) -> int:
    g, r = gen_instance(args.seed, args.n, args.r, args.target)
    _emit(serialize_instance(Instance(g, r, args.target)), args.output)
    return OK


def _bench_one(job: tuple[int, int, int, str, float | None]) -> tuple:
    seed, n, r, target, limit = job
    g, _ = gen_instance(seed, n, r, target)
    try:
        rep = solve_with_report(Instance(g, r, target), SolverConfig(time_limit=limit))
    except TimeLimitExceeded:
        return seed, n, r, "timeout", limit, "-", "-"
    engines = ",".join(f"{e}:{c}" for e, c in sorted(rep.engines.items())) or "-"
    return seed, n, r, rep.optimum, round(rep.seconds, 2), rep.partitions, engines


def cmd_bench(args) -> int:
    jobs = [(seed, args.n, r, args.target, args.time_limit)
            for r in args.r for seed in range(args.seed, args.seed + args.seeds)]
    workers = args.workers or int(os.environ.get(THREADS_ENV, "1"))
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            rows = list(pool.map(_bench_one, jobs))
    else:
        rows = [_bench_one(j) for j in jobs]
    print("seed\tn\tr\toptimum\tseconds\tpartitions\tengines")
    for row in rows:
        print("\t".join(map(str, row)))
    return OK


# --- parser ----------------------------------------------------------------------


def _instance_args(p: argparse.ArgumentParser, targets=(THRESHOLD, CHAIN)) -> None:
    p.add_argument("graph", help="graph file, '-' for stdin")
    p.add_argument("--target", choices=targets, default=None)
    p.add_argument("--variant", choices=VARIANTS, default=None)
    p.add_argument("-k", type=int, default=None, help="budget (defaults to the instance comment)")
    p.add_argument("-o", "--output", default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="threshold-edit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("recognize", help="class membership with witness")
    p.add_argument("graph")
    p.add_argument("--target", choices=TARGETS, default=THRESHOLD)
    p.set_defaults(func=cmd_recognize)

    p = sub.add_parser("kernelize", help="polynomial kernel")
    _instance_args(p)
    p.set_defaults(func=cmd_kernelize)

    p = sub.add_parser("solve", help="exact solver")
    _instance_args(p)
    p.add_argument("--time-limit", type=float, default=None)
    p.add_argument("--engine", choices=ENGINES, default="auto")
    p.add_argument("--no-kernel", action="store_true")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("oracle", help="brute-force reference solver")
    _instance_args(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("verify", help="check a solution file")
    p.add_argument("graph")
    p.add_argument("solution")
    p.add_argument("-k", type=int, default=None, help="budget (defaults to k_used)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("reduce", help="hardness reductions")
    p.add_argument("name", choices=REDUCTIONS)
    p.add_argument("input")
    p.add_argument("-k", type=int, default=None)
    p.add_argument("-o", "--output", default=None)
    p.add_argument("--layout", default=None, help="sat2te: write the gadget layout here")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("gen", help="planted instance")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-r", type=int, required=True)
    p.add_argument("--target", choices=(THRESHOLD, CHAIN), default=THRESHOLD)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="planted scaling table")
    p.add_argument("-n", type=int, default=40)
    p.add_argument("-r", type=lambda s: [int(t) for t in s.split(",")], default=[4, 8, 12, 16])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--seeds", type=int, default=1)
    p.add_argument("--target", choices=(THRESHOLD, CHAIN), default=THRESHOLD)
    p.add_argument("--time-limit", type=float, default=600.0)
    p.add_argument("--workers", type=int, default=None, help=f"default from ${THREADS_ENV} or 1")
    p.set_defaults(func=cmd_bench)
    return parser


def run_cli(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    try:
        return args.func(args)
    except (UsageError, ParseError, GraphInputError, ContractError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
