"""Recognition of threshold, chain, split and chordal graphs.

Every negative answer carries a certificate: an induced obstruction for
threshold and chain graphs, an induced cycle of length at least four for
chordal graphs.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations

from .graph import (
    INCOMPARABLE,
    ContractError,
    Graph,
    bits,
    mask_of,
    nesting_compare,
)

THRESHOLD = "threshold"
CHAIN = "chain"
FAMILIES = (THRESHOLD, CHAIN)

C3, C4, C5, P4, TWO_K2 = "C3", "C4", "C5", "P4", "2K2"
FAMILY_KINDS = {THRESHOLD: (C4, P4, TWO_K2), CHAIN: (C3, C5, TWO_K2)}


@dataclass(frozen=True)
class Obstruction:
    """Induced forbidden subgraph.

    Vertices are listed in path or cycle order; for 2K2 the edges are
    ``(v0, v1)`` and ``(v2, v3)``.
    """

    vertices: tuple[int, ...]
    kind: str


def _ordered(g: Graph, vs: tuple[int, ...], kind: str) -> tuple[int, ...]:
    if kind == TWO_K2:
        a = vs[0]
        b = next(v for v in vs if v != a and g.has_edge(a, v))
        rest = [v for v in vs if v not in (a, b)]
        return (a, b, rest[0], rest[1])
    if kind == P4:
        ends = [v for v in vs if (g.adj[v] & mask_of(vs)).bit_count() == 1]
        start = min(ends)
    else:
        start = min(vs)
    order = [start]
    local = mask_of(vs)
    prev = -1
    while len(order) < len(vs):
        cur = order[-1]
        nxt = min(w for w in bits(g.adj[cur] & local) if w != prev and w not in order)
        prev = cur
        order.append(nxt)
    return tuple(order)


def classify(g: Graph, vs: tuple[int, ...]) -> str | None:
    """Name of the small obstruction induced by ``vs``, if it is one."""
    local = mask_of(vs)
    degs = sorted((g.adj[v] & local).bit_count() for v in vs)
    edges = sum(degs) // 2
    if len(vs) == 3:
        return C3 if edges == 3 else None
    if len(vs) == 4:
        if degs == [2, 2, 2, 2]:
            return C4
        if degs == [1, 1, 2, 2]:
            return P4
        if degs == [1, 1, 1, 1]:
            return TWO_K2
        return None
    if len(vs) == 5 and degs == [2, 2, 2, 2, 2]:
        return C5
    return None


def make_obstruction(g: Graph, vs) -> Obstruction:
    vs = tuple(sorted(vs))
    kind = classify(g, vs)
    if kind is None:
        raise ContractError(f"vertices {vs} do not induce an obstruction")
    return Obstruction(_ordered(g, vs, kind), kind)


def is_obstruction(g: Graph, vs, family: str) -> bool:
    return classify(g, tuple(vs)) in FAMILY_KINDS[family]


@dataclass(frozen=True)
class ThresholdPartition:
    """Ordered levels ``(C_i, I_i)`` stored as bitmask pairs.

    A clique vertex of level ``i`` is adjacent to an independent vertex of
    level ``j`` exactly when ``j >= i``.
    """

    levels: tuple[tuple[int, int], ...]
    transfer: int | None = None

    def __len__(self) -> int:
        return len(self.levels)

    @property
    def clique_mask(self) -> int:
        m = 0
        for c, _ in self.levels:
            m |= c
        return m

    @property
    def independent_mask(self) -> int:
        m = 0
        for _, i in self.levels:
            m |= i
        return m

    def fragments(self) -> list[tuple[frozenset[int], frozenset[int]]]:
        return [(frozenset(bits(c)), frozenset(bits(i))) for c, i in self.levels]

    def level_of(self) -> dict[int, int]:
        out = {}
        for idx, (c, i) in enumerate(self.levels):
            for v in bits(c | i):
                out[v] = idx
        return out

    def to_graph(self, n: int) -> Graph:
        """Rebuild the graph dictated by the adjacency law."""
        cmask = self.clique_mask
        adj = [0] * n
        for a, (c, _) in enumerate(self.levels):
            upper_i = 0
            for _, i in self.levels[a:]:
                upper_i |= i
            for v in bits(c):
                adj[v] |= (cmask & ~(1 << v)) | upper_i
                for x in bits(upper_i):
                    adj[x] |= 1 << v
        return Graph(n, tuple(adj))


def validate_partition(g: Graph, part: ThresholdPartition) -> list[str]:
    """Return the list of violated partition invariants (empty if valid)."""
    problems = []
    seen = 0
    t = len(part.levels)
    for idx, (c, i) in enumerate(part.levels):
        if (c | i) & seen or c & i:
            problems.append(f"level {idx} overlaps earlier fragments")
        seen |= c | i
        extremal = idx in (0, t - 1)
        if (not c or not i) and not extremal:
            problems.append(f"empty fragment at interior level {idx}")
        if not c and not i:
            problems.append(f"level {idx} is empty")
    if seen != g.all_mask:
        problems.append("fragments do not cover the vertex set")
    if problems:
        return problems
    if part.to_graph(g.n) != g:
        problems.append("adjacency law does not reproduce the graph")
    return problems


def partition_from_split(g: Graph, clique: int, indep: int) -> ThresholdPartition | None:
    """Levels for a split partition whose neighborhoods are nested.

    Clique vertices are grouped by their neighborhood in ``indep`` and
    ordered from largest to smallest.  Returns None when the neighborhoods
    are not nested or the sides are not a clique and an independent set.
    """
    groups: dict[int, int] = {}
    for v in bits(clique):
        if (g.adj[v] | (1 << v)) & clique != clique:
            return None
        key = g.adj[v] & indep
        groups[key] = groups.get(key, 0) | (1 << v)
    for x in bits(indep):
        if g.adj[x] & indep:
            return None
    keys = sorted(groups, key=lambda k: -k.bit_count())
    for a, b in zip(keys, keys[1:]):
        if b & ~a:
            return None
    levels = []
    covered = 0
    for idx, key in enumerate(keys):
        below = keys[idx + 1] if idx + 1 < len(keys) else 0
        levels.append([groups[key], key & ~below])
        covered |= key
    bottom = indep & ~covered
    if bottom:
        levels.insert(0, [0, bottom])
    if not levels and indep:
        levels.append([0, indep])
    part = ThresholdPartition(tuple((c, i) for c, i in levels))
    if part.to_graph(g.n) != g:
        return None
    return part


def split_degree_partition(g: Graph) -> tuple[int, int]:
    """Degree-sequence candidate split partition (clique mask, rest mask)."""
    order = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
    m = 0
    for i, v in enumerate(order, start=1):
        if g.degree(v) >= i - 1:
            m = i
    clique = mask_of(order[:m])
    return clique, g.all_mask & ~clique


@dataclass(frozen=True)
class SplitPartition:
    clique: frozenset[int]
    indep: frozenset[int]

    @property
    def clique_mask(self) -> int:
        return mask_of(self.clique)

    @property
    def indep_mask(self) -> int:
        return mask_of(self.indep)

    @classmethod
    def from_masks(cls, c: int, i: int) -> "SplitPartition":
        return cls(frozenset(bits(c)), frozenset(bits(i)))

    def is_realized(self, g: Graph) -> bool:
        c, i = self.clique_mask, self.indep_mask
        return g.edges_within(i) == 0 and all(
            (g.adj[v] | (1 << v)) & c == c for v in bits(c)
        )


def compute_split_partition(g: Graph) -> SplitPartition | None:
    clique, rest = split_degree_partition(g)
    part = SplitPartition.from_masks(clique, rest)
    return part if part.is_realized(g) else None


@dataclass(frozen=True)
class Recognition:
    """Result of a recognition call.

    ``partition`` is set on yes-answers and ``obstruction`` on no-answers.
    For chain graphs ``bipartition`` holds the two side masks and the
    partition treats side A as the clique side.
    """

    yes: bool
    partition: ThresholdPartition | None = None
    obstruction: Obstruction | None = None
    bipartition: tuple[int, int] | None = None

    def __bool__(self) -> bool:
        return self.yes


def _threshold_witness(g: Graph) -> Obstruction | None:
    order = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
    for a in range(len(order)):
        u = order[a]
        for v in order[a + 1:]:
            res = nesting_compare(g, u, v)
            if res.relation == INCOMPARABLE:
                u2, v2 = res.witnesses
                return make_obstruction(g, (u, v, u2, v2))
    return None


def is_threshold(g: Graph) -> Recognition:
    obs = _threshold_witness(g)
    if obs is not None:
        return Recognition(False, obstruction=obs)
    clique, rest = split_degree_partition(g)
    part = partition_from_split(g, clique, rest)
    if part is None:
        raise AssertionError("nested graph without a threshold partition")
    return Recognition(True, partition=part)


def two_coloring(g: Graph) -> tuple[list[int], tuple[int, int] | None]:
    """BFS colouring; returns colours and a monochromatic edge if any."""
    color = [-1] * g.n
    bad = None
    for root in range(g.n):
        if color[root] >= 0:
            continue
        color[root] = 0
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for w in bits(g.adj[v]):
                if color[w] < 0:
                    color[w] = 1 - color[v]
                    queue.append(w)
                elif color[w] == color[v] and bad is None:
                    bad = (v, w)
    return color, bad


def shortest_odd_cycle(g: Graph) -> list[int] | None:
    best = None
    for root in range(g.n):
        dist = [-1] * g.n
        parent = [-1] * g.n
        dist[root] = 0
        queue = deque([root])
        found = None
        while queue and found is None:
            v = queue.popleft()
            for w in bits(g.adj[v]):
                if dist[w] < 0:
                    dist[w] = dist[v] + 1
                    parent[w] = v
                    queue.append(w)
                elif dist[w] == dist[v] and v < w:
                    found = (v, w)
                    break
        if found is None:
            continue
        length = 2 * dist[found[0]] + 1
        if best is not None and length >= len(best):
            continue
        left, right = [found[0]], [found[1]]
        while parent[left[-1]] >= 0:
            left.append(parent[left[-1]])
        while parent[right[-1]] >= 0:
            right.append(parent[right[-1]])
        cycle = left[::-1] + right[:-1]
        if len(set(cycle)) == len(cycle) == length:
            best = cycle
    return best


def _chain_witness(g: Graph) -> tuple[Obstruction | None, tuple[int, int] | None]:
    color, bad = two_coloring(g)
    if bad is not None:
        cycle = shortest_odd_cycle(g)
        if len(cycle) in (3, 5):
            return make_obstruction(g, cycle), None
        return make_obstruction(g, (cycle[0], cycle[1], cycle[3], cycle[4])), None
    side_a = mask_of(v for v in range(g.n) if color[v] == 0)
    side_b = g.all_mask & ~side_a
    a_list = sorted(bits(side_a), key=lambda v: (-g.degree(v), v))
    for idx, u in enumerate(a_list):
        for v in a_list[idx + 1:]:
            extra_u = g.adj[u] & ~g.adj[v]
            extra_v = g.adj[v] & ~g.adj[u]
            if extra_u and extra_v:
                u2, v2 = next(bits(extra_u)), next(bits(extra_v))
                return make_obstruction(g, (u, v, u2, v2)), None
    return None, (side_a, side_b)


def is_chain(g: Graph) -> Recognition:
    obs, sides = _chain_witness(g)
    if obs is not None:
        return Recognition(False, obstruction=obs)
    side_a, side_b = sides
    part = chain_partition(g, side_a, side_b)
    return Recognition(True, partition=part, bipartition=sides)


def complete_side(g: Graph, side: int) -> Graph:
    """Return ``g`` with the vertex set ``side`` made into a clique."""
    adj = list(g.adj)
    for v in bits(side):
        adj[v] |= side & ~(1 << v)
    return Graph(g.n, tuple(adj))


def chain_partition(g: Graph, side_a: int, side_b: int) -> ThresholdPartition | None:
    """Chain decomposition as the threshold partition of ``g`` with side A completed."""
    return partition_from_split(complete_side(g, side_a), side_a, side_b)


def naive_find_obstruction(g: Graph, family: str) -> Obstruction | None:
    """Exhaustive scan in lexicographic order of sorted vertex tuples."""
    sizes = (4,) if family == THRESHOLD else (3, 4, 5)
    kinds = FAMILY_KINDS[family]
    for size in sizes:
        for vs in combinations(range(g.n), size):
            kind = classify(g, vs)
            if kind in kinds:
                return Obstruction(_ordered(g, vs, kind), kind)
    return None


def find_obstruction(g: Graph, family: str, naive: bool = False) -> Obstruction | None:
    if family not in FAMILIES:
        raise ContractError(f"unknown family {family!r}")
    if naive:
        return naive_find_obstruction(g, family)
    if family == THRESHOLD:
        return _threshold_witness(g)
    return _chain_witness(g)[0]


def in_family(g: Graph, family: str) -> bool:
    return find_obstruction(g, family) is None


def recognize(g: Graph, family: str) -> Recognition:
    return is_threshold(g) if family == THRESHOLD else is_chain(g)


def mcs_order(g: Graph) -> list[int]:
    """Maximum cardinality search visiting order."""
    weight = [0] * g.n
    done = 0
    order = []
    for _ in range(g.n):
        v = max((u for u in range(g.n) if not done >> u & 1), key=lambda u: (weight[u], -u))
        order.append(v)
        done |= 1 << v
        for w in bits(g.adj[v] & ~done):
            weight[w] += 1
    return order


def _path_avoiding(g: Graph, src: int, dst: int, allowed: int) -> list[int] | None:
    parent = {src: -1}
    queue = deque([src])
    while queue:
        v = queue.popleft()
        if v == dst:
            path = [v]
            while parent[path[-1]] >= 0:
                path.append(parent[path[-1]])
            return path[::-1]
        for w in bits(g.adj[v] & allowed):
            if w not in parent:
                parent[w] = v
                queue.append(w)
    return None


def chordless_cycle(g: Graph) -> list[int] | None:
    """Some induced cycle of length at least four, if one exists."""
    for v in range(g.n):
        nbrs = list(bits(g.adj[v]))
        for p, w in combinations(nbrs, 2):
            if g.has_edge(p, w):
                continue
            allowed = g.all_mask & ~g.closed(v) | (1 << p) | (1 << w)
            path = _path_avoiding(g, p, w, allowed)
            if path is not None:
                return [v] + path
    return None


@dataclass(frozen=True)
class ChordalResult:
    yes: bool
    cycle: tuple[int, ...] | None = None

    def __bool__(self) -> bool:
        return self.yes


def is_chordal(g: Graph) -> ChordalResult:
    order = mcs_order(g)
    pos = {v: i for i, v in enumerate(order)}
    for v in order:
        earlier = [w for w in bits(g.adj[v]) if pos[w] < pos[v]]
        if len(earlier) < 2:
            continue
        parent = max(earlier, key=lambda w: pos[w])
        rest = mask_of(earlier) & ~(1 << parent)
        if rest & ~g.adj[parent]:
            cycle = chordless_cycle(g)
            if cycle is None:
                raise AssertionError("elimination check failed without a cycle")
            return ChordalResult(False, tuple(cycle))
    return ChordalResult(True)
