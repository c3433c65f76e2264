"""Exact split threshold editing by branch and bound over peeling orders.

With the split partition fixed, a threshold graph can be taken apart by
repeatedly removing a clique vertex adjacent to every remaining
independent vertex, or an independent vertex with no remaining clique
neighbor.  Removing a vertex early pays for the C x I pairs that violate
this, so the minimum total over all orders is the optimum.  The search
peels free vertices eagerly, breaks symmetry among twins, and memoizes
lower bounds per remaining set.
"""
from __future__ import annotations

from .graph import COMPLETE, DELETE, Graph, bits, norm_pair

INF = 1 << 60


class PeelSearch:
    def __init__(self, g: Graph, clique: int, indep: int, variant: str):
        self.g = g
        self.cm = clique
        self.im = indep
        self.variant = variant
        self.lb: dict[int, int] = {}
        self.nodes = 0
        # a vertex may be skipped while a lower-id twin on its side remains
        self.twin_before = [0] * g.n
        last: dict[tuple[int, int], int] = {}
        for v in bits(clique | indep):
            side = clique if clique >> v & 1 else indep
            key = (side, g.adj[v] & (clique | indep) & ~(1 << v) if side == indep else g.adj[v] & indep)
            if key in last:
                self.twin_before[v] = 1 << last[key]
            last[key] = v

    def peel_cost(self, v: int, rest: int) -> int:
        if self.cm >> v & 1:
            cost = (rest & self.im & ~self.g.adj[v]).bit_count()
            return INF if cost and self.variant == DELETE else cost
        cost = (rest & self.cm & self.g.adj[v]).bit_count()
        return INF if cost and self.variant == COMPLETE else cost

    def peel_edits(self, v: int, rest: int) -> list[tuple[int, int]]:
        if self.cm >> v & 1:
            return [norm_pair(v, x) for x in bits(rest & self.im & ~self.g.adj[v])]
        return [norm_pair(v, c) for c in bits(rest & self.cm & self.g.adj[v])]

    def lower_bound(self, rest: int) -> int:
        """Vertex-disjoint packing of incomparable independent pairs."""
        cs = rest & self.cm
        used = 0
        count = 0
        xs = list(bits(rest & self.im))
        for a, x in enumerate(xs):
            if used >> x & 1:
                continue
            nx = self.g.adj[x] & cs & ~used
            for y in xs[a + 1:]:
                if used >> y & 1:
                    continue
                ny = self.g.adj[y] & cs & ~used
                only_x, only_y = nx & ~ny, ny & ~nx
                if only_x and only_y:
                    c1 = only_x & -only_x
                    c2 = only_y & -only_y
                    used |= (1 << x) | (1 << y) | c1 | c2
                    count += 1
                    break
        return count

    def _settle(self, rest: int) -> int:
        changed = True
        while changed:
            changed = False
            for v in bits(rest):
                if self.peel_cost(v, rest) == 0:
                    rest &= ~(1 << v)
                    changed = True
        return rest

    def search(self, rest: int, budget: int) -> tuple[int, list[tuple[int, int]]] | None:
        """Cheapest completion of the peeling of ``rest`` within ``budget``."""
        self.nodes += 1
        rest = self._settle(rest)
        if not rest & self.cm or not rest & self.im:
            return 0, []
        if budget <= 0:
            return None
        known = self.lb.get(rest, 0)
        if known > budget:
            return None
        if self.lower_bound(rest) > budget:
            self.lb[rest] = max(known, budget + 1)
            return None
        moves = []
        for v in bits(rest):
            if self.twin_before[v] & rest:
                continue
            c = self.peel_cost(v, rest)
            if c <= budget:
                moves.append((c, v))
        moves.sort()
        best = None
        for c, v in moves:
            limit = (best[0] - 1 if best else budget) - c
            if limit < 0:
                break
            sub = self.search(rest & ~(1 << v), limit)
            if sub is not None:
                best = (c + sub[0], self.peel_edits(v, rest) + sub[1])
        if best is None:
            self.lb[rest] = max(known, budget + 1)
        return best


def peel_split_threshold(g: Graph, clique: int, indep: int, k: int,
                         variant: str) -> tuple[int, frozenset] | None:
    """Minimum C x I edit set of size at most ``k`` (parts already repaired)."""
    res = PeelSearch(g, clique, indep, variant).search(clique | indep, k)
    return None if res is None else (res[0], frozenset(res[1]))
