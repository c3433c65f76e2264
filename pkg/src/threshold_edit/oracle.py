"""Exact reference solver by bounded branching on obstructions."""
from __future__ import annotations

from itertools import combinations

from .graph import ContractError, EditSet, Graph, norm_pair
from .problem import CHORDAL, Instance, allowed_pair
from .recognition import find_obstruction


def _toggle(g: Graph, u: int, v: int) -> Graph:
    adj = list(g.adj)
    adj[u] ^= 1 << v
    adj[v] ^= 1 << u
    return Graph(g.n, tuple(adj))


def _search(base: Graph, cur: Graph, inst: Instance, budget: int,
            chosen: frozenset, frozen: frozenset) -> frozenset | None:
    obs = find_obstruction(cur, inst.target)
    if obs is None:
        return chosen
    if budget == 0:
        return None
    pairs = [norm_pair(a, b) for a, b in combinations(sorted(obs.vertices), 2)]
    options = [p for p in pairs
               if p not in chosen and p not in frozen and allowed_pair(base, *p, inst.variant)]
    banned = set(frozen)
    for p in options:
        res = _search(base, _toggle(cur, *p), inst, budget - 1, chosen | {p}, frozenset(banned))
        if res is not None:
            return res
        # later branches never edit p: every solution containing p was covered here
        banned.add(p)
    return None


def brute_force_oracle(inst: Instance) -> EditSet | None:
    """Minimum edit set of size at most ``inst.k`` or None.

    Iterative deepening over the budget; each node finds one obstruction
    and branches on the pairs inside it that the variant allows.
    """
    if inst.target == CHORDAL:
        raise ContractError("the oracle covers threshold and chain targets only")
    g = inst.graph
    for d in range(inst.k + 1):
        res = _search(g, g, inst, d, frozenset(), frozenset())
        if res is not None:
            return EditSet(res, inst.variant)
    return None


def optimum(inst: Instance) -> int | None:
    res = brute_force_oracle(inst)
    return None if res is None else len(res)
