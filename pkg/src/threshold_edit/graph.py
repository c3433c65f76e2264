"""Immutable simple graphs, edit sets, twin classes and neighborhood nesting.

Vertices are the integers ``0..n-1``.  Adjacency is kept as one Python
integer bitmask per vertex, which makes subset tests and set differences
single big-int operations.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

EDIT = "edit"
COMPLETE = "complete"
DELETE = "delete"
VARIANTS = (EDIT, COMPLETE, DELETE)


class GraphInputError(ValueError):
    """Raised for malformed input such as out-of-range vertex ids."""


class ContractError(ValueError):
    """Raised when an operation's precondition on its arguments fails."""


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def norm_pair(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on ``0..n-1`` with bitmask adjacency."""

    n: int
    adj: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.adj) != self.n:
            raise GraphInputError("adjacency length does not match n")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]] = ()) -> "Graph":
        if n < 0:
            raise GraphInputError("negative vertex count")
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphInputError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphInputError(f"self-loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj))

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, (0,) * n)

    @classmethod
    def complete(cls, n: int) -> "Graph":
        full = (1 << n) - 1
        return cls(n, tuple(full & ~(1 << v) for v in range(n)))

    @property
    def all_mask(self) -> int:
        return (1 << self.n) - 1

    @property
    def m(self) -> int:
        return sum(a.bit_count() for a in self.adj) // 2

    def vertices(self) -> range:
        return range(self.n)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def neighbors(self, v: int) -> frozenset[int]:
        return frozenset(bits(self.adj[v]))

    def closed(self, v: int) -> int:
        """Closed neighborhood N[v] as a bitmask."""
        return self.adj[v] | (1 << v)

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for u in range(self.n):
            for v in bits(self.adj[u] >> (u + 1)):
                out.append((u, u + 1 + v))
        return out

    def max_degree(self) -> int:
        return max((a.bit_count() for a in self.adj), default=0)

    def edges_within(self, mask: int) -> int:
        """Number of edges with both endpoints in ``mask``."""
        return sum((self.adj[v] & mask).bit_count() for v in bits(mask)) // 2


@dataclass(frozen=True)
class EditSet:
    """A set of unordered vertex pairs, applied by symmetric difference."""

    pairs: frozenset[tuple[int, int]] = frozenset()
    variant: str | None = None

    @classmethod
    def of(cls, pairs: Iterable[tuple[int, int]], variant: str | None = None) -> "EditSet":
        normed = set()
        for u, v in pairs:
            if u == v:
                raise GraphInputError(f"self-pair ({u}, {v}) in edit set")
            normed.add(norm_pair(u, v))
        if variant is not None and variant not in VARIANTS:
            raise GraphInputError(f"unknown variant {variant!r}")
        return cls(frozenset(normed), variant)

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(sorted(self.pairs))

    def __contains__(self, pair: object) -> bool:
        if not isinstance(pair, tuple) or len(pair) != 2:
            return False
        return norm_pair(*pair) in self.pairs

    def union(self, other: "EditSet") -> "EditSet":
        return EditSet(self.pairs | other.pairs, self.variant)

    def touched(self) -> set[int]:
        return {x for p in self.pairs for x in p}

    def incident(self, v: int) -> int:
        return sum(1 for p in self.pairs if v in p)

    def with_variant(self, variant: str | None) -> "EditSet":
        return EditSet(self.pairs, variant)


def check_variant(g: Graph, f: EditSet, variant: str | None) -> str | None:
    """Return a reason string if ``f`` breaks variant purity against ``g``."""
    if variant == COMPLETE:
        for u, v in f:
            if g.has_edge(u, v):
                return f"completion edit ({u}, {v}) deletes an existing edge"
    elif variant == DELETE:
        for u, v in f:
            if not g.has_edge(u, v):
                return f"deletion edit ({u}, {v}) adds a missing edge"
    return None


def apply_edits(g: Graph, f: EditSet | Iterable[tuple[int, int]]) -> Graph:
    """Return ``g`` with every pair of ``f`` toggled."""
    if not isinstance(f, EditSet):
        f = EditSet.of(f)
    for u, v in f.pairs:
        if not (0 <= u < g.n and 0 <= v < g.n):
            raise GraphInputError(f"edit ({u}, {v}) out of range for n={g.n}")
    reason = check_variant(g, f, f.variant)
    if reason:
        raise ContractError(reason)
    adj = list(g.adj)
    for u, v in f.pairs:
        adj[u] ^= 1 << v
        adj[v] ^= 1 << u
    return Graph(g.n, tuple(adj))


def edit_difference(g: Graph, h: Graph) -> EditSet:
    """The edit set turning ``g`` into ``h`` (same vertex set)."""
    if g.n != h.n:
        raise ContractError("graphs differ in vertex count")
    pairs = []
    for u in range(g.n):
        for v in bits((g.adj[u] ^ h.adj[u]) >> (u + 1)):
            pairs.append((u, u + 1 + v))
    return EditSet.of(pairs)


def complement(g: Graph) -> Graph:
    full = g.all_mask
    return Graph(g.n, tuple(full & ~a & ~(1 << v) for v, a in enumerate(g.adj)))


def induced_subgraph(g: Graph, s: Iterable[int]) -> tuple[Graph, list[int]]:
    """Induced subgraph on ``s``.

    Returns the relabelled graph together with ``old_ids`` where
    ``old_ids[i]`` is the original id of new vertex ``i``.  New ids follow
    the increasing order of the original ids.
    """
    old_ids = sorted(set(s))
    for v in old_ids:
        if not 0 <= v < g.n:
            raise GraphInputError(f"vertex {v} out of range for n={g.n}")
    pos = {v: i for i, v in enumerate(old_ids)}
    adj = []
    for v in old_ids:
        a = 0
        for w in bits(g.adj[v]):
            if w in pos:
                a |= 1 << pos[w]
        adj.append(a)
    return Graph(len(old_ids), tuple(adj)), old_ids


def remove_vertex(g: Graph, v: int) -> tuple[Graph, list[int]]:
    return induced_subgraph(g, (u for u in range(g.n) if u != v))


TRUE_TWIN = "true"
FALSE_TWIN = "false"


@dataclass(frozen=True)
class TwinClasses:
    """Partition of the vertices into twin classes.

    ``class_of[v]`` is the id of the class of ``v``; ``members[c]`` lists
    the vertices of class ``c`` and ``kinds[c]`` is ``"true"`` or
    ``"false"``.
    """

    class_of: tuple[int, ...]
    members: tuple[tuple[int, ...], ...]
    kinds: tuple[str, ...]

    def of(self, v: int) -> tuple[int, ...]:
        return self.members[self.class_of[v]]


def twin_classes(g: Graph) -> TwinClasses:
    """Twin classes via grouping on open and closed neighborhood masks.

    The class of ``v`` is the larger of its true-twin and false-twin
    classes, with the false-twin class chosen on ties.
    """
    by_closed: dict[int, list[int]] = {}
    by_open: dict[int, list[int]] = {}
    for v in range(g.n):
        by_closed.setdefault(g.closed(v), []).append(v)
        by_open.setdefault(g.adj[v], []).append(v)
    class_of = [-1] * g.n
    members: list[tuple[int, ...]] = []
    kinds: list[str] = []
    for v in range(g.n):
        if class_of[v] >= 0:
            continue
        ttc = by_closed[g.closed(v)]
        ftc = by_open[g.adj[v]]
        group, kind = (ttc, TRUE_TWIN) if len(ttc) > len(ftc) else (ftc, FALSE_TWIN)
        cid = len(members)
        for u in group:
            class_of[u] = cid
        members.append(tuple(group))
        kinds.append(kind)
    return TwinClasses(tuple(class_of), tuple(members), tuple(kinds))


U_UNDER_V = "u_under_v"
V_UNDER_U = "v_under_u"
BOTH = "both"
INCOMPARABLE = "incomparable"


@dataclass(frozen=True)
class Nesting:
    relation: str
    witnesses: tuple[int, int] | None = None


def nesting_compare(g: Graph, u: int, v: int) -> Nesting:
    """Compare N(u) with N[v] and N(v) with N[u].

    ``u_under_v`` means N(u) is contained in N[v].  When neither inclusion
    holds the result carries ``(u2, v2)`` with u2 in N(u) minus N[v] and v2
    in N(v) minus N[u]; the four vertices then induce C4, P4 or 2K2.
    """
    if u == v:
        raise ContractError("nesting_compare needs two distinct vertices")
    extra_u = g.adj[u] & ~g.closed(v)
    extra_v = g.adj[v] & ~g.closed(u)
    if not extra_u and not extra_v:
        return Nesting(BOTH)
    if not extra_u:
        return Nesting(U_UNDER_V)
    if not extra_v:
        return Nesting(V_UNDER_U)
    return Nesting(INCOMPARABLE, (next(bits(extra_u)), next(bits(extra_v))))
