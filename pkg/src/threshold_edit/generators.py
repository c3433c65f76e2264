"""Random graph and planted-instance generators (deterministic per seed)."""
from __future__ import annotations

import random
from itertools import combinations

from .graph import EditSet, Graph, apply_edits
from .recognition import CHAIN, THRESHOLD, compute_split_partition


def random_graph(rng: random.Random, n: int, p: float = 0.5) -> Graph:
    return Graph.from_edges(n, [e for e in combinations(range(n), 2) if rng.random() < p])


def creation_sequence_graph(ops: list[bool]) -> Graph:
    """Threshold graph where ``ops[i]`` says vertex ``i`` arrives universal."""
    edges = []
    for v, universal in enumerate(ops):
        if universal:
            edges.extend((u, v) for u in range(v))
    return Graph.from_edges(len(ops), edges)


def random_threshold(rng: random.Random, n: int, p_universal: float = 0.5) -> Graph:
    ops = [rng.random() < p_universal for _ in range(n)]
    perm = list(range(n))
    rng.shuffle(perm)
    g = creation_sequence_graph(ops)
    return Graph.from_edges(n, [(perm[u], perm[v]) for u, v in g.edges()])


def random_chain(rng: random.Random, n: int, p_universal: float = 0.5) -> Graph:
    """Chain graph: a random threshold graph with its clique side emptied."""
    g = random_threshold(rng, n, p_universal)
    part = compute_split_partition(g)
    clique = part.clique
    return Graph.from_edges(n, [(u, v) for u, v in g.edges() if not (u in clique and v in clique)])


def random_split(rng: random.Random, n: int, p: float = 0.5) -> Graph:
    size_c = rng.randint(0, n)
    edges = [(u, v) for u, v in combinations(range(size_c), 2)]
    for c in range(size_c):
        for x in range(size_c, n):
            if rng.random() < p:
                edges.append((c, x))
    perm = list(range(n))
    rng.shuffle(perm)
    return Graph.from_edges(n, [(perm[u], perm[v]) for u, v in edges])


def random_bipartite(rng: random.Random, n: int, p: float = 0.5) -> tuple[Graph, int, int]:
    size_a = rng.randint(0, n)
    edges = [(a, b) for a in range(size_a) for b in range(size_a, n) if rng.random() < p]
    side_a = (1 << size_a) - 1
    return Graph.from_edges(n, edges), side_a, ((1 << n) - 1) & ~side_a


def gen_instance(seed: int, n: int, r: int, target: str = THRESHOLD) -> tuple[Graph, int]:
    """Planted instance: a member of the target class with ``r`` pair flips."""
    if r > n * (n - 1) // 2:
        raise ValueError("more flips than vertex pairs")
    rng = random.Random(seed)
    base = random_threshold(rng, n) if target == THRESHOLD else random_chain(rng, n)
    pairs = list(combinations(range(n), 2))
    flips = rng.sample(pairs, r)
    return apply_edits(base, EditSet.of(flips)), r


def random_instance_graph(rng: random.Random, n: int, target: str) -> Graph:
    """Mixture used by randomized tests: near-class graphs and uniform ones."""
    mode = rng.random()
    if mode < 0.4:
        base = random_threshold(rng, n) if target == THRESHOLD else random_chain(rng, n)
        pairs = list(combinations(range(n), 2))
        flips = rng.sample(pairs, min(len(pairs), rng.randint(0, 4)))
        return apply_edits(base, EditSet.of(flips))
    return random_graph(rng, n, rng.choice((0.25, 0.5, 0.75)))

