"""Polynomial kernel: twin rule plus irrelevant-vertex rule.

Both rules only delete vertices, so a kernel is always an induced subgraph
of the input with the same budget.  The caller gets the surviving original
ids alongside the reduced graph.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

from .graph import FALSE_TWIN, TRUE_TWIN, Graph, bits, induced_subgraph, mask_of, twin_classes
from .problem import Instance
from .recognition import (
    CHAIN,
    FAMILY_KINDS,
    THRESHOLD,
    Obstruction,
    ThresholdPartition,
    classify,
    is_chain,
    is_threshold,
    make_obstruction,
)

IMPORTANT = "important"
OUTLYING = "outlying"
REGULAR = "regular"


def threshold_kernel_bound(k: int) -> int:
    return 336 * k * k + 388 * k + 92


def chain_kernel_bound(k: int) -> int:
    """Chain analogue of the threshold bound.

    Modulator 5k, realised sets 10k+2, hence at most 40k+8 important
    levels; with 4k+4 outlying levels of at most 4k+4 vertices each this
    gives (44k+12)(4k+4) important or outlying vertices, at most 40k+9
    non-large strips of at most 16k+12 vertices, plus 10k^2+12k+2 isolated
    vertices of G-X.
    """
    return 826 * k * k + 860 * k + 158


def modulator_bound(k: int, family: str) -> int:
    return 4 * k if family == THRESHOLD else 5 * k


def strip_threshold(k: int) -> int:
    return 16 * k + 13


# --- twin rule -------------------------------------------------------------


def twin_rule_step(g: Graph, k: int, family: str = THRESHOLD) -> int | None:
    """A vertex removable by the twin rule, or None.

    For chains only false-twin classes qualify: three true twins form a
    triangle, so a large true-twin class is handled by
    ``oversized_true_twins`` instead.
    """
    tc = twin_classes(g)
    for members, kind in zip(tc.members, tc.kinds):
        if len(members) > 2 * k + 2 and (family == THRESHOLD or kind == FALSE_TWIN):
            return max(members)
    return None


def oversized_true_twins(g: Graph, k: int) -> tuple[int, ...] | None:
    """A true-twin class above 2k+2; any k edits leave three of them a triangle."""
    tc = twin_classes(g)
    for members, kind in zip(tc.members, tc.kinds):
        if kind == TRUE_TWIN and len(members) > 2 * k + 2:
            return members
    return None


def apply_twin_rule(g: Graph, k: int, family: str = THRESHOLD) -> tuple[Graph, list[int]]:
    """Exhaustive twin rule; returns the reduced graph and kept original ids."""
    ids = list(range(g.n))
    while True:
        v = twin_rule_step(g, k, family)
        if v is None:
            return g, ids
        g, keep = induced_subgraph(g, (u for u in range(g.n) if u != v))
        ids = [ids[i] for i in keep]


# --- modulator -------------------------------------------------------------


@dataclass(frozen=True)
class Modulator:
    x: int
    family: str
    packing: tuple[tuple[int, ...], ...] = ()

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(bits(self.x))

    def __len__(self) -> int:
        return self.x.bit_count()


@dataclass(frozen=True)
class NoInstance:
    obstruction: Obstruction
    reason: str = ""

    def __bool__(self) -> bool:
        return False


def _pattern(g: Graph, vs: tuple[int, ...]) -> int:
    pat = 0
    for idx, (a, b) in enumerate(combinations(vs, 2)):
        if g.adj[a] >> b & 1:
            pat |= 1 << idx
    return pat


@lru_cache(maxsize=None)
def _obstruction_patterns(size: int, family: str) -> frozenset[int]:
    pairs = list(combinations(range(size), 2))
    out = set()
    for pat in range(1 << len(pairs)):
        g = Graph.from_edges(size, [pairs[i] for i in range(len(pairs)) if pat >> i & 1])
        if classify(g, tuple(range(size))) in FAMILY_KINDS[family]:
            out.add(pat)
    return frozenset(out)


@lru_cache(maxsize=None)
def _destroyable(size: int, family: str, pat: int, inner: int) -> bool:
    """Whether toggling some pairs among positions ``inner`` kills the pattern."""
    obs = _obstruction_patterns(size, family)
    allowed = 0
    for idx, (a, b) in enumerate(combinations(range(size), 2)):
        if inner >> a & 1 and inner >> b & 1:
            allowed |= 1 << idx
    sub = allowed
    while sub:
        if pat ^ sub not in obs:
            return True
        sub = (sub - 1) & allowed
    return False


def _threshold_obstruction_sets(g: Graph) -> list[tuple[int, ...]]:
    """Vertex sets of all induced C4, P4 and 2K2, sorted.

    Each is an incomparable pair u, v with a in N(u) - N[v] and b in
    N(v) - N[u], and every such quadruple induces one of the three.
    """
    found = set()
    for u in range(g.n):
        for v in range(u + 1, g.n):
            only_u = g.adj[u] & ~g.adj[v] & ~(1 << v)
            only_v = g.adj[v] & ~g.adj[u] & ~(1 << u)
            if only_u and only_v:
                for a in bits(only_u):
                    for b in bits(only_v):
                        found.add(tuple(sorted((u, v, a, b))))
    return sorted(found)


def obstruction_subsets(g: Graph, family: str):
    """All obstructions in lexicographic order, smaller sizes first."""
    if family == THRESHOLD:
        for vs in _threshold_obstruction_sets(g):
            yield vs, _pattern(g, vs)
        return
    sizes = (3, 4, 5)
    for size in sizes:
        obs = _obstruction_patterns(size, family)
        for vs in combinations(range(g.n), size):
            pat = _pattern(g, vs)
            if pat in obs:
                yield vs, pat


def build_modulator(g: Graph, k: int, family: str) -> Modulator | NoInstance:
    """Greedy obstruction packing.

    An obstruction is absorbed into X whenever no edit set inside its
    intersection with X destroys it.
    """
    x = 0
    packing = []
    bound = modulator_bound(k, family)
    for vs, pat in obstruction_subsets(g, family):
        inner = 0
        for pos, v in enumerate(vs):
            if x >> v & 1:
                inner |= 1 << pos
        if inner.bit_count() >= 2 and _destroyable(len(vs), family, pat, inner):
            continue
        x |= mask_of(vs)
        packing.append(vs)
        if x.bit_count() > bound:
            return NoInstance(make_obstruction(g, vs), f"modulator exceeds {bound}")
    return Modulator(x, family, tuple(packing))


def modulator_is_valid(g: Graph, mod: Modulator) -> bool:
    """Every obstruction can be destroyed by edits inside X (exhaustive check)."""
    for vs, pat in obstruction_subsets(g, mod.family):
        inner = 0
        for pos, v in enumerate(vs):
            if mod.x >> v & 1:
                inner |= 1 << pos
        if inner.bit_count() < 2 or not _destroyable(len(vs), mod.family, pat, inner):
            return False
    return True


# --- level classification --------------------------------------------------


@dataclass(frozen=True)
class LevelClassification:
    important: tuple[bool, ...]
    outlying: tuple[bool, ...]
    strips: tuple[tuple[int, int], ...]
    strip_sizes: tuple[int, ...]
    central: tuple[tuple[int, ...], ...]
    f: int
    r: int
    k: int

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(
            IMPORTANT if imp else OUTLYING if out else REGULAR
            for imp, out in zip(self.important, self.outlying)
        )

    @property
    def large(self) -> tuple[bool, ...]:
        return tuple(s >= strip_threshold(self.k) for s in self.strip_sizes)


def _extreme_fragments(frags: list[int], g: Graph, x: int) -> set[int]:
    lo: dict[int, int] = {}
    hi: dict[int, int] = {}
    for idx, frag in enumerate(frags):
        for v in bits(frag):
            y = g.adj[v] & x
            lo.setdefault(y, idx)
            hi[y] = idx
    return set(lo.values()) | set(hi.values())


def realized_sets(g: Graph, x: int, part: ThresholdPartition) -> dict[int, list[int]]:
    """Map every realized set Y to the level indices of the vertices realizing it."""
    out: dict[int, list[int]] = {}
    for idx, (c, i) in enumerate(part.levels):
        for v in bits(c | i):
            out.setdefault(g.adj[v] & x, []).append(idx)
    return out


def classify_decomposition(g: Graph, x: int, part: ThresholdPartition, k: int,
                           aside: int = 0) -> LevelClassification:
    """Label the levels of a partition of G-X given in the ids of ``g``.

    ``aside`` lists vertices excluded from the partition (the isolated
    vertices of G-X in the chain case).
    """
    levels = part.levels
    t = len(levels)
    covered = 0
    for c, i in levels:
        covered |= c | i
    if covered & (x | aside) or covered | x | aside != g.all_mask:
        raise ValueError("partition does not cover exactly V(G) minus X")
    imp_c = _extreme_fragments([c for c, _ in levels], g, x)
    imp_i = _extreme_fragments([i for _, i in levels], g, x)
    important = tuple(idx in imp_c or idx in imp_i for idx in range(t))
    need = 2 * k + 2
    f, acc = t - 1, 0
    for idx, (c, _) in enumerate(levels):
        acc += c.bit_count()
        if acc >= need:
            f = idx
            break
    r, acc = 0, 0
    for idx in range(t - 1, -1, -1):
        acc += levels[idx][1].bit_count()
        if acc >= need:
            r = idx
            break
    outlying = tuple(idx <= f or idx >= r for idx in range(t))
    strips = []
    idx = 0
    while idx < t:
        if important[idx] or outlying[idx]:
            idx += 1
            continue
        start = idx
        while idx + 1 < t and not important[idx + 1] and not outlying[idx + 1]:
            idx += 1
        strips.append((start, idx))
        idx += 1
    sizes, central = [], []
    for a, b in strips:
        sizes.append(sum((levels[j][0] | levels[j][1]).bit_count() for j in range(a, b + 1)))
        found = []
        for j in range(a, b + 1):
            for side in (0, 1):
                below = sum(levels[h][side].bit_count() for h in range(a, j))
                above = sum(levels[h][side].bit_count() for h in range(j + 1, b + 1))
                if below >= need and above >= need:
                    found.extend(bits(levels[j][side]))
        central.append(tuple(sorted(found)))
    return LevelClassification(important, outlying, tuple(strips), tuple(sizes),
                               tuple(central), f, r, k)


def _lift_partition(part: ThresholdPartition, ids: list[int]) -> ThresholdPartition:
    def lift(mask: int) -> int:
        return mask_of(ids[v] for v in bits(mask))

    return ThresholdPartition(tuple((lift(c), lift(i)) for c, i in part.levels))


def decomposition_outside(g: Graph, x: int, family: str) -> tuple[ThresholdPartition, int]:
    """Partition of G-X (ids of ``g``) and the set of vertices set aside.

    For chains, vertices isolated in G-X are set aside and the partition
    covers the rest.
    """
    aside = 0
    rest = g.all_mask & ~x
    if family == CHAIN:
        aside = mask_of(v for v in bits(rest) if not g.adj[v] & rest)
        rest &= ~aside
    sub, ids = induced_subgraph(g, bits(rest))
    rec = is_threshold(sub) if family == THRESHOLD else is_chain(sub)
    if not rec.yes:
        raise AssertionError("graph outside the modulator is not in the class")
    return _lift_partition(rec.partition, ids), aside


def find_irrelevant_vertex(g: Graph, k: int, family: str,
                           mod: Modulator | None = None) -> int | NoInstance | None:
    if mod is None:
        mod = build_modulator(g, k, family)
    if isinstance(mod, NoInstance):
        return mod
    if g.n < strip_threshold(k):
        return None
    part, aside = decomposition_outside(g, mod.x, family)
    cls = classify_decomposition(g, mod.x, part, k, aside)
    for size, cand in zip(cls.strip_sizes, cls.central):
        if size >= strip_threshold(k) and cand:
            return cand[0]
    return None


def apply_irrelevant_vertex_rule(g: Graph, k: int, family: str) -> tuple[Graph, list[int]] | NoInstance | None:
    v = find_irrelevant_vertex(g, k, family)
    if v is None or isinstance(v, NoInstance):
        return v
    return induced_subgraph(g, (u for u in range(g.n) if u != v))


# --- kernel ----------------------------------------------------------------


@dataclass(frozen=True)
class KernelResult:
    instance: Instance
    kept: tuple[int, ...]
    no_instance: bool = False
    removed: tuple[int, ...] = field(default=())


def kernelize(inst: Instance) -> KernelResult:
    """Apply both rules until neither fires.

    A proven no-instance is returned as ``(H, 0)`` where H is the induced
    obstruction that overflowed the modulator.
    """
    family = inst.target
    if family not in (THRESHOLD, CHAIN):
        raise ValueError("kernelization covers threshold and chain targets")
    g, k = inst.graph, inst.k
    ids = list(range(g.n))
    removed = []
    while True:
        g, keep = apply_twin_rule(g, k, family)
        lost = set(ids) - {ids[i] for i in keep}
        removed.extend(sorted(lost))
        ids = [ids[i] for i in keep]
        twins = oversized_true_twins(g, k) if family == CHAIN else None
        mod = build_modulator(g, k, family) if twins is None else None
        if twins is not None or isinstance(mod, NoInstance):
            vs = twins[:3] if twins is not None else mod.obstruction.vertices
            h, local = induced_subgraph(g, vs)
            return KernelResult(inst.with_graph(h, 0), tuple(ids[i] for i in local), True,
                                tuple(sorted(set(range(inst.graph.n)) - {ids[i] for i in local})))
        v = find_irrelevant_vertex(g, k, family, mod)
        if v is None:
            return KernelResult(inst.with_graph(g, k), tuple(ids), False, tuple(removed))
        removed.append(ids[v])
        g, keep = induced_subgraph(g, (u for u in range(g.n) if u != v))
        ids = [ids[i] for i in keep]
