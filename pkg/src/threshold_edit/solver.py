"""Exact solver pipeline for threshold and chain editing, completion and deletion."""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

from .graph import COMPLETE, DELETE, EditSet, Graph, apply_edits, bits, norm_pair
from .kernel import kernelize
from .peel import peel_split_threshold
from .problem import Instance, verify_solution
from .recognition import CHAIN, THRESHOLD, complete_side, in_family
from .subexp import (
    bipartition_cost,
    cheap_radius,
    enumerate_bipartitions,
    enumerate_split_partitions,
    solve_split_threshold,
    split_cost,
)


class TimeLimitExceeded(RuntimeError):
    """Raised when a solve call runs past its deadline."""


ENGINES = ("auto", "subexp", "peel")
# above this many splitting-pair guesses per core call, auto switches to peel
AUTO_GUESS_LIMIT = 200_000


@dataclass
class SolverConfig:
    kernelize: bool = True
    memo: bool = True
    time_limit: float | None = None
    engine: str = "auto"

    def __post_init__(self):
        if self.engine not in ENGINES:
            raise ValueError(f"unknown engine {self.engine!r}")


def guess_estimate(clique_size: int, indep_size: int, k: int) -> int:
    """Rough count of splitting-pair guesses at the top level of the core."""
    r = min(cheap_radius(k), k)

    def patches(m: int) -> int:
        return sum(math.comb(m, j) for j in range(min(r, m) + 1))

    return clique_size * indep_size * patches(clique_size) * patches(indep_size)


def _core(h: Graph, clique: int, indep: int, k: int, variant: str,
          cfg: SolverConfig, report: SolveReport) -> tuple[int, frozenset] | None:
    engine = cfg.engine
    if engine == "auto":
        est = guess_estimate(clique.bit_count(), indep.bit_count(), k)
        engine = "subexp" if est <= AUTO_GUESS_LIMIT else "peel"
    report.engines[engine] = report.engines.get(engine, 0) + 1
    if engine == "peel":
        return peel_split_threshold(h, clique, indep, k, variant)
    return solve_split_threshold(h, clique, indep, k, variant, cfg.memo)


@dataclass
class SolveReport:
    edits: EditSet | None
    kernel_vertices: int
    partitions: int = 0
    seconds: float = 0.0
    no_instance_by_kernel: bool = False
    notes: list[str] = field(default_factory=list)
    engines: dict[str, int] = field(default_factory=dict)

    @property
    def optimum(self) -> int | None:
        return None if self.edits is None else len(self.edits)


def _part_edits(g: Graph, clique: int, indep: int) -> list[tuple[int, int]]:
    """Pairs inside the parts that must change: missing clique edges, independent-side edges."""
    out = []
    for v in bits(clique):
        for w in bits(clique & ~g.adj[v] & ~((1 << (v + 1)) - 1)):
            out.append((v, w))
    for v in bits(indep):
        for w in bits(indep & g.adj[v] & ~((1 << (v + 1)) - 1)):
            out.append((v, w))
    return out


class _Deadline:
    def __init__(self, limit: float | None):
        self.end = None if limit is None else time.monotonic() + limit

    def check(self) -> None:
        if self.end is not None and time.monotonic() > self.end:
            raise TimeLimitExceeded("time limit exceeded")


def _solve_threshold(g: Graph, k: int, variant: str, cfg: SolverConfig,
                     deadline: _Deadline, report: SolveReport) -> frozenset | None:
    best = None
    budget = k
    for clique, indep in enumerate_split_partitions(g, k):
        deadline.check()
        forced = split_cost(g, clique, indep)
        if forced > budget:
            break
        if variant == COMPLETE and g.edges_within(indep):
            continue
        if variant == DELETE and forced - g.edges_within(indep):
            continue
        report.partitions += 1
        part = _part_edits(g, clique, indep)
        h = apply_edits(g, EditSet.of(part))
        core = _core(h, clique, indep, budget - forced, variant, cfg, report)
        if core is None:
            continue
        best = frozenset(part) | core[1]
        budget = len(best) - 1
        if budget < 0:
            break
    return best


def _solve_chain(g: Graph, k: int, variant: str, cfg: SolverConfig,
                 deadline: _Deadline, report: SolveReport) -> frozenset | None:
    best = None
    budget = k
    for side_a, side_b in enumerate_bipartitions(g, k):
        deadline.check()
        forced = bipartition_cost(g, side_a, side_b)
        if forced > budget:
            break
        if variant == COMPLETE and forced:
            continue
        report.partitions += 1
        part = _part_edits(g, 0, side_a) + _part_edits(g, 0, side_b)
        # side A becomes a clique for free; only A x B pairs are charged
        h = complete_side(apply_edits(g, EditSet.of(part)), side_a)
        core = _core(h, side_a, side_b, budget - forced, variant, cfg, report)
        if core is None:
            continue
        best = frozenset(part) | core[1]
        budget = len(best) - 1
        if budget < 0:
            break
    return best


def _solve_plain(inst: Instance, cfg: SolverConfig, deadline: _Deadline,
                 report: SolveReport) -> frozenset | None:
    g = inst.graph
    if in_family(g, inst.target):
        return frozenset()
    if inst.target == THRESHOLD:
        return _solve_threshold(g, inst.k, inst.variant, cfg, deadline, report)
    return _solve_chain(g, inst.k, inst.variant, cfg, deadline, report)


def solve_with_report(inst: Instance, config: SolverConfig | None = None) -> SolveReport:
    cfg = config or SolverConfig()
    if inst.target not in (THRESHOLD, CHAIN):
        raise ValueError("solve covers threshold and chain targets")
    start = time.monotonic()
    deadline = _Deadline(cfg.time_limit)
    work, kept = inst, list(range(inst.graph.n))
    report = SolveReport(None, inst.graph.n)
    if cfg.kernelize:
        kr = kernelize(inst)
        report.kernel_vertices = kr.instance.graph.n
        if kr.no_instance:
            report.no_instance_by_kernel = True
            report.seconds = time.monotonic() - start
            return report
        work, kept = kr.instance, list(kr.kept)
    found = _solve_plain(work, cfg, deadline, report)
    if found is not None:
        lifted = EditSet.of((kept[a], kept[b]) for a, b in found).with_variant(inst.variant)
        verdict = verify_solution(inst, lifted)
        if not verdict:
            report.notes.append(f"kernel lift rejected ({verdict.reason}); solving unreduced")
            plain = _solve_plain(inst.with_graph(inst.graph, len(lifted)), cfg, deadline, report)
            lifted = None if plain is None else EditSet(plain, inst.variant)
        report.edits = lifted
    report.seconds = time.monotonic() - start
    if report.edits is not None and not verify_solution(inst, report.edits):
        raise AssertionError("solver produced an invalid edit set")
    return report


def solve(inst: Instance, config: SolverConfig | None = None) -> EditSet | None:
    """Minimum edit set of size at most ``inst.k``, or None for a no-instance."""
    return solve_with_report(inst, config).edits
