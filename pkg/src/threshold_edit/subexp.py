"""Subexponential search for split threshold editing.

The search works on a graph whose split partition ``(C, I)`` is fixed and
only pairs in C x I may change.  Vertices are labelled cheap or expensive;
a cheap vertex is incident to at most ``ceil(2 sqrt k)`` solution edits.
``unbreak`` handles segments without a splitting pair, and ``solve``
guesses a splitting pair, cuts the vertex set into blocks U, X and R and
recurses on R.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations, permutations, product

from .graph import COMPLETE, DELETE, EditSet, Graph, bits, mask_of, norm_pair

INF = 1 << 60


def cheap_radius(k: int) -> int:
    """Edit radius of a cheap vertex, ``ceil(2 sqrt k)``; 0 when k = 0."""
    return math.ceil(2 * math.sqrt(k)) if k > 0 else 0


def max_expensive(k: int) -> int:
    """Upper bound on the number of expensive vertices of a size-k solution.

    Each expensive vertex carries more than ``cheap_radius(k)`` edits and
    each edit touches two vertices.
    """
    r = cheap_radius(k)
    return min(r, (2 * k) // (r + 1))


def subsets_upto(mask: int, size: int):
    """All sub-masks of ``mask`` with at most ``size`` bits, smallest first."""
    items = list(bits(mask))
    for s in range(min(size, len(items)) + 1):
        for combo in combinations(items, s):
            yield mask_of(combo)


@dataclass(frozen=True)
class CostLabels:
    expensive: frozenset[int] = frozenset()

    @property
    def mask(self) -> int:
        return mask_of(self.expensive)

    def is_cheap(self, v: int) -> bool:
        return v not in self.expensive


@dataclass(frozen=True)
class BlockDecomposition:
    """Blocks produced by one splitting-pair guess (all bitmasks)."""

    u: int
    v: int
    upper: int
    middle: int
    lower: int


# --- split partitions --------------------------------------------------------


def split_cost(g: Graph, clique: int, indep: int) -> int:
    """Edits needed inside the parts: missing clique edges plus independent-side edges."""
    size = clique.bit_count()
    return size * (size - 1) // 2 - g.edges_within(clique) + g.edges_within(indep)


def _potential_of_size(g: Graph, order: list[int], size: int, k: int):
    """Clique sides of exactly ``size`` vertices with split cost at most ``k``.

    In a split graph within ``k`` edits, a clique vertex keeps degree at
    least ``size - 1`` and an independent one at most ``size``; a vertex
    moves at most ``k`` in degree, which pins the far-off ones.
    """
    n = len(order)
    deg = [g.degree(v) for v in range(g.n)]

    def rec(idx: int, clique: int, indep: int, cost: int):
        taken = clique.bit_count()
        if taken > size or taken + (n - idx) < size:
            return
        if idx == n:
            yield clique, indep
            return
        v = order[idx]
        add_c = (clique & ~g.adj[v]).bit_count()
        if cost + add_c <= k and deg[v] + k >= size - 1:
            yield from rec(idx + 1, clique | (1 << v), indep, cost + add_c)
        add_i = (indep & g.adj[v]).bit_count()
        if cost + add_i <= k and deg[v] - k <= size:
            yield from rec(idx + 1, clique, indep | (1 << v), cost + add_i)

    yield from rec(0, 0, 0, 0)


def enumerate_split_partitions(g: Graph, k: int) -> list[tuple[int, int]]:
    """Every split partition ``(clique_mask, indep_mask)`` of split cost at most ``k``.

    Vertices are decided in decreasing degree order, so the high-degree
    seed of each clique size is explored first; branches whose forced
    intra-part edits exceed ``k`` or whose degrees cannot reach the side
    are cut.  No other partition can belong to a solution.
    """
    order = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
    out: list[tuple[int, int]] = []
    for size in range(g.n + 1):
        out.extend(_potential_of_size(g, order, size, k))
    out.sort(key=lambda p: (split_cost(g, *p), p[0]))
    return out


# --- bipartitions ------------------------------------------------------------


def bipartition_cost(g: Graph, side_a: int, side_b: int) -> int:
    return g.edges_within(side_a) + g.edges_within(side_b)


def _canonical(side_a: int, side_b: int) -> tuple[int, int]:
    return (side_a, side_b) if side_a & 1 or not side_b & 1 else (side_b, side_a)


def _small_side_bipartitions(g: Graph, k: int, limit: int):
    """Bipartitions with a side of at most ``limit`` vertices and cost at most ``k``."""
    n = g.n
    order = list(range(n))

    def rec(idx: int, a: int, b: int, cost: int):
        if min(a.bit_count(), b.bit_count()) > limit:
            return
        if idx == n:
            yield a, b
            return
        v = order[idx]
        ca = (a & g.adj[v]).bit_count()
        if cost + ca <= k:
            yield from rec(idx + 1, a | (1 << v), b, cost + ca)
        cb = (b & g.adj[v]).bit_count()
        if cost + cb <= k:
            yield from rec(idx + 1, a, b | (1 << v), cost + cb)

    yield from rec(0, 0, 0, 0)


def _guessed_bipartitions(g: Graph, k: int):
    """Bipartitions from guessing the cheap boundary vertices of both sides.

    Guesses a cheap lowest vertex ``va`` of A and a cheap highest vertex
    ``vb`` of B, their neighborhoods within the cheap radius, the
    expensive sets below ``va`` and above ``vb`` with their levels, and
    places every remaining vertex on the side that is cheaper for it.
    """
    radius = min(cheap_radius(k), k)
    cap = max_expensive(k)
    full = g.all_mask
    for va in range(g.n):
        for vb in range(g.n):
            if va == vb:
                continue
            for pa in subsets_upto(full & ~(1 << va), radius):
                na = g.adj[va] ^ pa
                for pb in subsets_upto(full & ~(1 << vb), min(radius, k - pa.bit_count())):
                    nb = g.adj[vb] ^ pb
                    if na & nb or (na >> vb & 1) != (nb >> va & 1):
                        continue
                    known_b = na | (1 << vb)
                    known_a = nb | (1 << va)
                    if known_a & known_b:
                        continue
                    z = full & ~(known_a | known_b)
                    yield from _place_rest(g, na, nb, known_a, known_b, z, cap)


def _place_rest(g: Graph, na: int, nb: int, known_a: int, known_b: int, z: int, cap: int):
    for ax in subsets_upto(nb, cap):
        for bx in subsets_upto(na, cap - ax.bit_count()):
            xs = list(bits(ax)) + list(bits(bx))
            slots = len(xs) + 1
            for placement in product(range(slots), repeat=len(xs)):
                lev = dict(zip(xs, placement))
                side_a, side_b = known_a, known_b
                for w in bits(z):
                    to_a = min(
                        sum((g.adj[w] >> b & 1) != (lev[b] >= s) for b in bits(bx)) for s in range(slots)
                    ) + (g.adj[w] & (known_b & ~bx)).bit_count() + (g.adj[w] & known_a).bit_count()
                    to_b = min(
                        sum((g.adj[w] >> a & 1) != (lev[a] <= s) for a in bits(ax)) for s in range(slots)
                    ) + (g.adj[w] & (known_a & ~ax)).bit_count() + (g.adj[w] & known_b).bit_count()
                    if to_a <= to_b:
                        side_a |= 1 << w
                    else:
                        side_b |= 1 << w
                yield side_a, side_b


def enumerate_bipartitions(g: Graph, k: int, small_factor: float = 5.0) -> list[tuple[int, int]]:
    """Candidate bipartitions ``(A, B)`` with at most ``k`` edges inside the sides.

    Bipartitions with a side of at most ``small_factor * sqrt k`` vertices
    are listed exhaustively; the rest come from the boundary-guessing
    scheme.  Each bipartition appears once, oriented so that vertex 0 lies
    in A.
    """
    limit = math.floor(small_factor * math.sqrt(k))
    seen = set()
    out = []

    def emit(a: int, b: int) -> None:
        key = _canonical(a, b)
        if key not in seen and bipartition_cost(g, *key) <= k:
            seen.add(key)
            out.append(key)

    for a, b in _small_side_bipartitions(g, k, limit):
        emit(a, b)
    if g.n > 2 * limit:
        for a, b in _guessed_bipartitions(g, k):
            if min(a.bit_count(), b.bit_count()) > limit:
                emit(a, b)
    out.sort(key=lambda p: (bipartition_cost(g, *p), p[0]))
    return out


# --- fixed-partition search --------------------------------------------------


class SplitCore:
    """Search state for one split partition and one expensive-label guess.

    ``g`` must already have the clique side complete and the independent
    side empty.  Costs count C x I pairs only, and an edit forbidden by the
    variant makes the branch infeasible.
    """

    def __init__(self, g: Graph, clique: int, indep: int, variant: str,
                 expensive: int = 0, radius: int = 0, memo: bool = True):
        self.g = g
        self.cm = clique
        self.im = indep
        self.variant = variant
        self.exp = expensive
        self.radius = radius
        self.memo: dict[int, tuple] | None = {} if memo else None
        self.calls = 0

    # cost helpers
    def _pair_cost(self, c: int, x: int, want: bool) -> int:
        have = bool(self.g.adj[c] >> x & 1)
        if have == want:
            return 0
        if (want and self.variant == DELETE) or (not want and self.variant == COMPLETE):
            return INF
        return 1

    def complete_cost(self, side_c: int, side_i: int) -> int:
        cost = sum((side_i & ~self.g.adj[c]).bit_count() for c in bits(side_c))
        return INF if cost and self.variant == DELETE else cost

    def empty_cost(self, side_c: int, side_i: int) -> int:
        cost = sum((side_i & self.g.adj[c]).bit_count() for c in bits(side_c))
        return INF if cost and self.variant == COMPLETE else cost

    def complete_edits(self, side_c: int, side_i: int) -> list[tuple[int, int]]:
        return [norm_pair(c, x) for c in bits(side_c) for x in bits(side_i & ~self.g.adj[c])]

    def empty_edits(self, side_c: int, side_i: int) -> list[tuple[int, int]]:
        return [norm_pair(c, x) for c in bits(side_c) for x in bits(side_i & self.g.adj[c])]

    def nested(self, s: int) -> bool:
        cs = s & self.cm
        nbhds = sorted(((self.g.adj[x] & cs) for x in bits(s & self.im)), key=int.bit_count)
        return all(a & ~b == 0 for a, b in zip(nbhds, nbhds[1:]))

    # unbreakable segments
    def unbreak(self, s: int, budget: int) -> tuple[int, frozenset] | None:
        """Optimal edits for ``s`` assuming no splitting pair inside it."""
        if budget < 0:
            return None
        cs, is_ = s & self.cm, s & self.im
        ec, ei = cs & self.exp, is_ & self.exp
        cc, ci = cs & ~self.exp, is_ & ~self.exp
        base = self.complete_cost(cc, ci)
        if base > budget:
            return None
        exp_c, exp_i = list(bits(ec)), list(bits(ei))
        if not exp_c and not exp_i:
            return base, frozenset(self.complete_edits(cc, ci))
        slots = len(exp_c) + len(exp_i) + 1
        cheap_c, cheap_i = list(bits(cc)), list(bits(ci))
        best = None
        for placement in product(range(slots), repeat=len(exp_c) + len(exp_i)):
            lev_c = placement[:len(exp_c)]
            lev_i = placement[len(exp_c):]
            ee = 0
            for c, lc in zip(exp_c, lev_c):
                for x, lx in zip(exp_i, lev_i):
                    ee += self._pair_cost(c, x, lx >= lc)
            if base + ee > budget:
                continue
            # cost of a cheap clique vertex at level a, cheap independent at level b
            cost_c = [[sum(self._pair_cost(c, x, lx >= a) for x, lx in zip(exp_i, lev_i))
                       for a in range(slots)] for c in cheap_c]
            cost_i = [[sum(self._pair_cost(e, x, le <= b) for e, le in zip(exp_c, lev_c))
                       for b in range(slots)] for x in cheap_i]
            for t in range(slots):
                total = base + ee
                pick_c, pick_i = [], []
                for row in cost_c:
                    a = min(range(t + 1), key=lambda a: (row[a], a))
                    pick_c.append(a)
                    total += row[a]
                for row in cost_i:
                    b = min(range(t, slots), key=lambda b: (row[b], b))
                    pick_i.append(b)
                    total += row[b]
                if total <= budget and (best is None or total < best[0]):
                    best = (total, lev_c, lev_i, pick_c, pick_i)
        if best is None:
            return None
        total, lev_c, lev_i, pick_c, pick_i = best
        level = dict(zip(exp_c, lev_c)) | dict(zip(exp_i, lev_i))
        level |= dict(zip(cheap_c, pick_c)) | dict(zip(cheap_i, pick_i))
        edits = []
        for c in bits(cs):
            for x in bits(is_):
                want = level[x] >= level[c]
                if bool(self.g.adj[c] >> x & 1) != want:
                    edits.append(norm_pair(c, x))
        if len(edits) != total:
            raise AssertionError("unbreak cost bookkeeping mismatch")
        return total, frozenset(edits)

    # small middle block
    def middle(self, x_mask: int, budget: int) -> tuple[int, frozenset] | None:
        """Optimal C x I edits inside ``x_mask`` by enumerating creation orders."""
        xc, xi = list(bits(x_mask & self.cm)), list(bits(x_mask & self.im))
        if not xc or not xi:
            return (0, frozenset()) if budget >= 0 else None
        best = None
        seen = set()
        for perm in permutations(xc + xi):
            pos = {v: p for p, v in enumerate(perm)}
            # an independent vertex sees the clique vertices created after it
            key = tuple(mask_of(c for c in xc if pos[c] > pos[x]) for x in xi)
            if key in seen:
                continue
            seen.add(key)
            cost = 0
            for x, nb in zip(xi, key):
                for c in xc:
                    cost += self._pair_cost(c, x, bool(nb >> c & 1))
            if cost <= budget and (best is None or cost < best[0]):
                edits = frozenset(norm_pair(c, x) for x, nb in zip(xi, key) for c in xc
                                  if bool(nb >> c & 1) != bool(self.g.adj[c] >> x & 1))
                best = (cost, edits)
        return best

    def _patches(self, side: int, nb: int, size: int):
        if self.variant == COMPLETE:
            side &= ~nb
        elif self.variant == DELETE:
            side &= nb
        return subsets_upto(side, size)

    def blocks(self, s: int, u: int, v: int, nu: int, nv: int, x_mask: int) -> BlockDecomposition:
        cs, is_ = s & self.cm, s & self.im
        lower = nu | (is_ & ~(x_mask | nv))
        upper = s & ~(lower | x_mask)
        return BlockDecomposition(u, v, upper, x_mask, lower)

    def cross_cost(self, b: BlockDecomposition) -> int:
        cm, im = self.cm, self.im
        r, x, u = b.lower, b.middle, b.upper
        return (self.complete_cost(cm & r, im & (x | u)) + self.complete_cost(cm & x, im & u)
                + self.empty_cost(cm & u, im & (x | r)) + self.empty_cost(cm & x, im & r))

    def cross_edits(self, b: BlockDecomposition) -> list[tuple[int, int]]:
        cm, im = self.cm, self.im
        r, x, u = b.lower, b.middle, b.upper
        return (self.complete_edits(cm & r, im & (x | u)) + self.complete_edits(cm & x, im & u)
                + self.empty_edits(cm & u, im & (x | r)) + self.empty_edits(cm & x, im & r))

    def solve(self, s: int, budget: int) -> tuple[int, frozenset] | None:
        """Minimum edits for ``s`` if at most ``budget``, else None."""
        self.calls += 1
        if budget < 0:
            return None
        if not s & self.cm or not s & self.im or self.nested(s):
            return 0, frozenset()
        if self.memo is not None and s in self.memo:
            kind, val = self.memo[s]
            if kind == "exact":
                return val if val[0] <= budget else None
            if budget <= val:
                return None
        best = self.unbreak(s, budget)
        limit = best[0] - 1 if best else budget
        cs, is_ = s & self.cm, s & self.im
        tried = set()
        for u in bits(is_ & ~self.exp):
            for v in bits(cs & ~self.exp):
                if limit < 0:
                    break
                nbu = self.g.adj[u] & cs
                nbv = self.g.adj[v] & is_
                for pu in self._patches(cs, nbu, min(self.radius, limit)):
                    nu = nbu ^ pu
                    if nu >> v & 1:
                        continue
                    for pv in self._patches(is_, nbv, min(self.radius, limit)):
                        nv = nbv ^ pv
                        if nv >> u & 1:
                            continue
                        free_c = cs & self.exp & ~nu & ~(1 << v)
                        free_i = is_ & self.exp & ~nv & ~(1 << u)
                        for xc in subsets_upto(free_c, free_c.bit_count()):
                            for xi in subsets_upto(free_i, free_i.bit_count()):
                                blk = self.blocks(s, u, v, nu, nv, xc | xi)
                                key = (blk.lower, blk.middle)
                                if key in tried:
                                    continue
                                tried.add(key)
                                cand = self._evaluate(blk, limit)
                                if cand is not None:
                                    best = cand
                                    limit = cand[0] - 1
        if self.memo is not None:
            self.memo[s] = ("exact", best) if best is not None else ("bound", budget)
        return best

    def _evaluate(self, blk: BlockDecomposition, limit: int) -> tuple[int, frozenset] | None:
        cost = self.cross_cost(blk)
        if cost > limit:
            return None
        mid = self.middle(blk.middle, limit - cost)
        if mid is None:
            return None
        cost += mid[0]
        up = self.unbreak(blk.upper, limit - cost)
        if up is None:
            return None
        cost += up[0]
        low = self.solve(blk.lower, limit - cost)
        if low is None:
            return None
        cost += low[0]
        edits = frozenset(self.cross_edits(blk)) | mid[1] | up[1] | low[1]
        return cost, edits


def label_guesses(vertices: int, k: int):
    """Expensive-label sets to try, smallest first."""
    return subsets_upto(vertices, max_expensive(k))


def solve_split_threshold(g: Graph, clique: int, indep: int, k: int, variant: str,
                          memo: bool = True, labels: CostLabels | None = None
                          ) -> tuple[int, frozenset] | None:
    """Minimum C x I edit set of size at most ``k`` (parts already repaired).

    Tries every expensive-label guess unless ``labels`` is given.
    """
    radius = cheap_radius(k)
    guesses = [labels.mask] if labels is not None else label_guesses(g.all_mask, k)
    best = None
    budget = k
    for exp in guesses:
        core = SplitCore(g, clique, indep, variant, exp, radius, memo)
        res = core.solve(g.all_mask, budget)
        if res is not None and (best is None or res[0] < best[0]):
            best = res
            budget = res[0] - 1
            if budget < 0:
                break
    return best


def unbreak_alg(g: Graph, clique: int, indep: int, k: int, labels: CostLabels,
                variant: str) -> EditSet | None:
    core = SplitCore(g, clique, indep, variant, labels.mask, cheap_radius(k))
    res = core.unbreak(g.all_mask, k)
    return None if res is None else EditSet(res[1], variant)


def solve_alg(g: Graph, clique: int, indep: int, k: int, s: int, labels: CostLabels,
              variant: str, memo: bool = True) -> EditSet | None:
    core = SplitCore(g, clique, indep, variant, labels.mask, cheap_radius(k), memo)
    res = core.solve(s, k)
    return None if res is None else EditSet(res[1], variant)
