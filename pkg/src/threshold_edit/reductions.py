"""Hardness-reduction instance generators.

3-CNF formulas become split graphs for threshold editing; split threshold
editing becomes bipartite chain editing; bipartite chain editing becomes
chain editing, and via side completion, (cobipartite) chordal editing.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product

from .graph import ContractError, EditSet, Graph, apply_edits, bits, mask_of, norm_pair
from .problem import CHORDAL, Instance
from .recognition import CHAIN, SplitPartition, complete_side, is_threshold

Assignment = tuple[bool, ...]


@dataclass(frozen=True)
class CnfFormula:
    num_vars: int
    clauses: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "clauses", tuple(tuple(c) for c in self.clauses))
        if self.num_vars < 0:
            raise ValueError("negative variable count")
        for c in self.clauses:
            if not c:
                raise ValueError("empty clause")
            if len(c) > 3:
                raise ValueError(f"clause {c} has more than 3 literals")
            for lit in c:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise ValueError(f"literal {lit} out of range")

    def satisfies(self, alpha: Assignment) -> bool:
        if len(alpha) != self.num_vars:
            raise ValueError("assignment length differs from variable count")
        return all(any(alpha[abs(l) - 1] == (l > 0) for l in c) for c in self.clauses)

    def satisfying_assignments(self):
        for alpha in product((False, True), repeat=self.num_vars):
            if self.satisfies(alpha):
                yield alpha

    def is_satisfiable(self) -> bool:
        return next(self.satisfying_assignments(), None) is not None


@dataclass(frozen=True)
class VariableGadget:
    a: int
    b: int
    bot: int
    top: int
    c: int
    d: int

    def ordered(self, value: bool | None = None) -> tuple[int, ...]:
        """Clique order of the gadget; ``value`` decides whether top precedes bottom."""
        mid = (self.top, self.bot) if value else (self.bot, self.top)
        return (self.a, self.b) + mid + (self.c, self.d)


@dataclass(frozen=True)
class GadgetLayout:
    formula: CnfFormula
    variables: tuple[VariableGadget, ...]
    clause_vertices: tuple[int, ...]
    enforcement: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]  # (prefix, vertices)
    isolated: tuple[int, ...]
    k: int

    @property
    def clique(self) -> tuple[int, ...]:
        return tuple(v for gad in self.variables for v in gad.ordered())

    @property
    def n(self) -> int:
        return (len(self.clique) + len(self.clause_vertices) + len(self.isolated)
                + sum(len(vs) for _, vs in self.enforcement))


def _check_tautology(phi: CnfFormula) -> None:
    for c in phi.clauses:
        if any(-l in c for l in c):
            raise ContractError(f"tautological clause {c}")


def sat_to_threshold_editing(phi: CnfFormula) -> tuple[Instance, GadgetLayout]:
    _check_tautology(phi)
    if not phi.clauses:
        return Instance(Graph.empty(0), 0), GadgetLayout(phi, (), (), (), (), 0)
    nv = phi.num_vars
    k = len(phi.clauses) * (3 * nv - 1)
    gadgets = tuple(VariableGadget(*range(6 * x, 6 * x + 6)) for x in range(nv))
    nxt = 6 * nv
    clause_vs = tuple(range(nxt, nxt + len(phi.clauses)))
    nxt += len(phi.clauses)
    edges = list(combinations(range(6 * nv), 2))
    for v, clause in zip(clause_vs, phi.clauses):
        nb = []
        for x, gad in enumerate(gadgets):
            lits = [l for l in clause if abs(l) == x + 1]
            if lits:
                nb += [gad.b, gad.top if lits[0] > 0 else gad.bot, gad.d]
            else:
                nb += [gad.b, gad.c, gad.d]
        assert len(nb) == 3 * nv
        edges += [(v, u) for u in nb]
    # one prefix per boundary of the partial order; top and bottom stay unordered
    enforcement = []
    prefix: list[int] = []
    for gad in gadgets:
        for step in ((gad.a,), (gad.b,), (gad.bot, gad.top), (gad.c,), (gad.d,)):
            prefix += step
            members = tuple(range(nxt, nxt + k + 1))
            nxt += k + 1
            enforcement.append((tuple(prefix), members))
            edges += [(w, u) for w in members for u in prefix]
    isolated = tuple(range(nxt, nxt + 4 * (k + 1)))
    nxt += 4 * (k + 1)
    layout = GadgetLayout(phi, gadgets, clause_vs, tuple(enforcement), isolated, k)
    return Instance(Graph.from_edges(nxt, edges), k), layout


def gadget_graph(layout: GadgetLayout) -> Graph:
    return sat_to_threshold_editing(layout.formula)[0].graph


def assignment_to_solution(layout: GadgetLayout, alpha: Assignment) -> EditSet:
    phi = layout.formula
    if not phi.satisfies(alpha):
        raise ContractError("assignment does not satisfy the formula")
    if not phi.clauses:
        return EditSet.of(())
    g = gadget_graph(layout)
    order = [v for gad, val in zip(layout.variables, alpha) for v in gad.ordered(val)]
    pos = {v: i for i, v in enumerate(order)}
    edits = []
    for v, clause in zip(layout.clause_vertices, phi.clauses):
        lit = min((l for l in clause if alpha[abs(l) - 1] == (l > 0)), key=abs)
        gad = layout.variables[abs(lit) - 1]
        cut = pos[gad.top if lit > 0 else gad.bot]
        want = mask_of(order[: cut + 1])
        have = g.adj[v] & mask_of(order)
        edits += [norm_pair(v, u) for u in bits(want ^ have)]
    return EditSet.of(edits)


def extract_assignment(layout: GadgetLayout, f: EditSet) -> Assignment:
    """Assignment read off the clique order of the edited gadget graph."""
    phi = layout.formula
    if not phi.clauses:
        return next(phi.satisfying_assignments())
    g = gadget_graph(layout)
    if len(f) > layout.k:
        raise ContractError(f"edit set of size {len(f)} exceeds k = {layout.k}")
    h = apply_edits(g, f)
    if not is_threshold(h).yes:
        raise ContractError("edit set does not produce a threshold graph")
    fixed: list[bool | None] = []
    for gad in layout.variables:
        db, dt = h.degree(gad.bot), h.degree(gad.top)
        fixed.append(None if db == dt else db < dt)
    free = [i for i, val in enumerate(fixed) if val is None]
    for choice in product((False, True), repeat=len(free)):
        alpha = list(fixed)
        for i, val in zip(free, choice):
            alpha[i] = val
        if phi.satisfies(tuple(alpha)):
            return tuple(alpha)
    raise ContractError("clique order does not decode to a satisfying assignment")


def split_te_to_bipartite_chain(g: Graph, part: SplitPartition, k: int) -> Instance:
    """Drop the clique edges; the bipartition is (C, I)."""
    if not part.is_realized(g):
        raise ContractError("partition is not a realized split partition")
    c = mask_of(part.clique)
    return Instance(Graph.from_edges(g.n, [(u, v) for u, v in g.edges()
                                           if not (c >> u & 1 and c >> v & 1)]), k, CHAIN)


def bipartite_chain_to_chain(g: Graph, bipart: tuple[int, int], k: int) -> Instance:
    """Append k+1 vertices universal to B (ids n..n+k) and k+1 universal to A."""
    side_a, side_b = bipart
    n = g.n
    new_a = range(n, n + k + 1)
    new_b = range(n + k + 1, n + 2 * k + 2)
    edges = list(g.edges())
    edges += [(x, y) for x in new_a for y in list(bits(side_b)) + list(new_b)]
    edges += [(y, x) for y in new_b for x in bits(side_a)]
    return Instance(Graph.from_edges(n + 2 * k + 2, edges), k, CHAIN)


def bipartite_chain_to_cobipartite_chordal(g: Graph, bipart: tuple[int, int], k: int) -> Instance:
    side_a, side_b = bipart
    return Instance(complete_side(complete_side(g, side_a), side_b), k, CHORDAL)


def cobipartite_to_chordal(g: Graph, bipart: tuple[int, int], k: int) -> Instance:
    """Frame each clique side and pin its edges with simplicial pendants.

    Each side gains k+1 vertices adjacent to everything on both sides.
    Every edge inside a side (original or frame) then receives k+1
    pendants adjacent to exactly its two ends, so deleting it costs more
    than k.  Output ids: originals, A-frame, B-frame, then pendants.
    """
    side_a, side_b = bipart
    n = g.n
    frame_a = list(range(n, n + k + 1))
    frame_b = list(range(n + k + 1, n + 2 * k + 2))
    everyone = list(range(n + 2 * k + 2))
    edges = set(g.edges())
    for x in frame_a + frame_b:
        edges |= {norm_pair(x, y) for y in everyone if y != x}
    nxt = n + 2 * k + 2
    for side, frame in ((side_a, frame_a), (side_b, frame_b)):
        members = list(bits(side)) + frame
        for u, v in combinations(members, 2):
            if norm_pair(u, v) not in edges:
                raise ContractError("side is not a clique")
            for p in range(nxt, nxt + k + 1):
                edges |= {(u, p), (v, p)}
            nxt += k + 1
    return Instance(Graph.from_edges(nxt, sorted(edges)), k, CHORDAL)


def cobipartite_to_chordal_size(n: int, size_a: int, size_b: int, k: int) -> int:
    frame = k + 1
    pairs = (size_a + frame) * (size_a + frame - 1) // 2 + (size_b + frame) * (size_b + frame - 1) // 2
    return n + 2 * frame + frame * pairs
