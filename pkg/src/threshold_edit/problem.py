"""Problem instances and solution verification."""
from __future__ import annotations

from dataclasses import dataclass

from .graph import (
    COMPLETE,
    DELETE,
    EDIT,
    VARIANTS,
    ContractError,
    EditSet,
    Graph,
    apply_edits,
    check_variant,
)
from .recognition import CHAIN, THRESHOLD, find_obstruction, is_chordal

CHORDAL = "chordal"
TARGETS = (THRESHOLD, CHAIN, CHORDAL)


@dataclass(frozen=True)
class Instance:
    graph: Graph
    k: int
    target: str = THRESHOLD
    variant: str = EDIT

    def __post_init__(self) -> None:
        if self.k < 0:
            raise ContractError("budget must be non-negative")
        if self.target not in TARGETS:
            raise ContractError(f"unknown target {self.target!r}")
        if self.variant not in VARIANTS:
            raise ContractError(f"unknown variant {self.variant!r}")

    def with_graph(self, g: Graph, k: int | None = None) -> "Instance":
        return Instance(g, self.k if k is None else k, self.target, self.variant)


@dataclass(frozen=True)
class Verdict:
    accepted: bool
    reason: str = ""
    witness: tuple[int, ...] | None = None

    def __bool__(self) -> bool:
        return self.accepted


def in_target(g: Graph, target: str) -> tuple[bool, tuple[int, ...] | None]:
    if target == CHORDAL:
        res = is_chordal(g)
        return res.yes, res.cycle
    obs = find_obstruction(g, target)
    return obs is None, (obs.vertices if obs else None)


def verify_solution(inst: Instance, f: EditSet) -> Verdict:
    g = inst.graph
    if len(f) > inst.k:
        return Verdict(False, f"budget: {len(f)} edits exceed k={inst.k}")
    for u, v in f:
        if not (0 <= u < g.n and 0 <= v < g.n):
            return Verdict(False, f"range: pair ({u}, {v}) outside the graph")
    reason = check_variant(g, f, inst.variant)
    if reason:
        return Verdict(False, f"variant purity: {reason}")
    ok, witness = in_target(apply_edits(g, EditSet(f.pairs)), inst.target)
    if not ok:
        return Verdict(False, f"class: result is not a {inst.target} graph", witness)
    return Verdict(True, "accepted")


def allowed_pair(g: Graph, u: int, v: int, variant: str) -> bool:
    if variant == COMPLETE:
        return not g.has_edge(u, v)
    if variant == DELETE:
        return g.has_edge(u, v)
    return True
