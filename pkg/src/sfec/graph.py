"""Undirected cost-labelled multigraphs and the node-set algebra built on them.

Node sets are stored as integer bitmasks over a fixed ground set ``[0, n)``;
bit ``i`` set means node ``i`` is a member.  Everything here is immutable.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, Sequence


class GraphError(ValueError):
    """Malformed graph data or an invalid query against a graph."""


@dataclass(frozen=True, slots=True)
class NodeSet:
    """Subset of ``[0, n)``; complement is taken relative to ``n``."""

    mask: int
    n: int

    def __post_init__(self) -> None:
        if self.n < 0 or self.mask < 0 or self.mask >> self.n:
            raise GraphError(f"mask {self.mask:#b} does not fit in {self.n} nodes")

    @classmethod
    def of(cls, n: int, nodes: Iterable[int]) -> NodeSet:
        mask = 0
        for v in nodes:
            if not 0 <= v < n:
                raise GraphError(f"node {v} outside [0, {n})")
            mask |= 1 << v
        return cls(mask, n)

    @classmethod
    def full(cls, n: int) -> NodeSet:
        return cls((1 << n) - 1, n)

    def __iter__(self) -> Iterator[int]:
        m, i = self.mask, 0
        while m:
            if m & 1:
                yield i
            m >>= 1
            i += 1

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __contains__(self, v: object) -> bool:
        return isinstance(v, int) and v >= 0 and bool(self.mask >> v & 1)

    def __bool__(self) -> bool:
        return self.mask != 0

    def _check(self, other: NodeSet) -> None:
        if other.n != self.n:
            raise GraphError("node sets over different ground sets")

    def __or__(self, other: NodeSet) -> NodeSet:
        self._check(other)
        return NodeSet(self.mask | other.mask, self.n)

    def __and__(self, other: NodeSet) -> NodeSet:
        self._check(other)
        return NodeSet(self.mask & other.mask, self.n)

    def __sub__(self, other: NodeSet) -> NodeSet:
        self._check(other)
        return NodeSet(self.mask & ~other.mask, self.n)

    def complement(self) -> NodeSet:
        return NodeSet(((1 << self.n) - 1) & ~self.mask, self.n)

    def issubset(self, other: NodeSet) -> bool:
        self._check(other)
        return self.mask & ~other.mask == 0

    def is_proper(self) -> bool:
        """Nonempty and not the whole ground set."""
        return 0 < self.mask < (1 << self.n) - 1

    def sort_key(self) -> tuple[int, ...]:
        return tuple(self)

    def __lt__(self, other: NodeSet) -> bool:
        return self.sort_key() < other.sort_key()

    def __repr__(self) -> str:
        return "{" + ",".join(map(str, self)) + "}"


def mask_key(mask: int) -> tuple[int, ...]:
    """Canonical ordering key for raw masks: sorted member tuple."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def sorted_masks(masks: Iterable[int]) -> list[int]:
    return sorted(masks, key=mask_key)


def minimal_masks(masks: Iterable[int]) -> list[int]:
    """Inclusion-minimal distinct masks, in canonical order."""
    uniq = sorted(set(masks), key=lambda m: m.bit_count())
    kept: list[int] = []
    for m in uniq:
        if not any(k & ~m == 0 for k in kept):
            kept.append(m)
    return sorted_masks(kept)


@dataclass(frozen=True, slots=True)
class Edge:
    id: int
    u: int
    v: int
    cost: Fraction

    @property
    def ends(self) -> int:
        return (1 << self.u) | (1 << self.v)


@dataclass(frozen=True)
class Multigraph:
    """Node count plus an ordered edge list; edge ids equal list positions."""

    n: int
    edges: tuple[Edge, ...] = field(default=())

    def __post_init__(self) -> None:
        if self.n < 1:
            raise GraphError("graph needs at least one node")
        for pos, e in enumerate(self.edges):
            if e.id != pos:
                raise GraphError(f"edge at position {pos} has id {e.id}")
            if not (0 <= e.u < self.n and 0 <= e.v < self.n):
                raise GraphError(f"edge {e.id} endpoint outside [0, {self.n})")
            if e.u == e.v:
                raise GraphError(f"edge {e.id} is a self-loop")
            if e.cost < 0:
                raise GraphError(f"edge {e.id} has negative cost")

    @classmethod
    def build(cls, n: int, triples: Iterable[Sequence]) -> Multigraph:
        """From ``(u, v)`` or ``(u, v, cost)`` items; cost defaults to 1."""
        edges = []
        for i, t in enumerate(triples):
            cost = Fraction(t[2]) if len(t) > 2 else Fraction(1)
            edges.append(Edge(i, int(t[0]), int(t[1]), cost))
        return cls(n, tuple(edges))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def end_masks(self) -> tuple[int, ...]:
        return tuple(e.ends for e in self.edges)

    @cached_property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def check_edge_ids(self, edge_ids: Iterable[int]) -> list[int]:
        ids = sorted(set(edge_ids))
        for i in ids:
            if not 0 <= i < len(self.edges):
                raise GraphError(f"unknown edge id {i}")
        return ids

    def crossing_mask(self, s: int) -> int:
        """Bitmask of edge ids with exactly one endpoint in ``s``."""
        out = 0
        for i, ends in enumerate(self.end_masks):
            x = s & ends
            if x and x != ends:
                out |= 1 << i
        return out

    def total_cost(self, edge_ids: Iterable[int]) -> Fraction:
        return sum((self.edges[i].cost for i in edge_ids), Fraction(0))


def crosses(ends: int, s: int) -> bool:
    x = s & ends
    return x != 0 and x != ends


def _component_masks(n: int, pairs: Iterable[tuple[int, int]]) -> list[int]:
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in pairs:
        ru, rv = find(u), find(v)
        if ru != rv:
            if ru < rv:
                parent[rv] = ru
            else:
                parent[ru] = rv
    blocks: dict[int, int] = {}
    for v in range(n):
        r = find(v)
        blocks[r] = blocks.get(r, 0) | (1 << v)
    # roots are block minima, so dict order is already sorted by min element
    return list(blocks.values())


def component_masks(g: Multigraph, edge_ids: Iterable[int]) -> list[int]:
    edges = g.edges
    return _component_masks(g.n, ((edges[i].u, edges[i].v) for i in edge_ids))


def components(g: Multigraph, edge_ids: Iterable[int]) -> list[NodeSet]:
    """Connected components of ``(V, edge_ids)``, ordered by minimum element."""
    ids = g.check_edge_ids(edge_ids)
    return [NodeSet(m, g.n) for m in component_masks(g, ids)]


def cut_degree(g: Multigraph, edge_ids: Iterable[int], s: NodeSet) -> int:
    """Number of selected edges with exactly one end in ``s`` (with multiplicity)."""
    if s.n != g.n:
        raise GraphError("node set and graph disagree on n")
    if not s.is_proper():
        raise GraphError("cut degree is only defined for proper nonempty sets")
    ids = g.check_edge_ids(edge_ids)
    ends = g.end_masks
    return sum(1 for i in ids if crosses(ends[i], s.mask))


def _max_flow(n: int, pairs: Iterable[tuple[int, int]], src: int, dst: int) -> tuple[int, int]:
    """Unit-capacity undirected max flow via BFS augmentation.

    Returns ``(value, reach)`` where ``reach`` is the mask of nodes reachable
    from ``src`` in the final residual network.
    """
    if src == dst:
        raise GraphError("source and sink coincide")
    cap = [dict() for _ in range(n)]
    for u, v in pairs:
        cap[u][v] = cap[u].get(v, 0) + 1
        cap[v][u] = cap[v].get(u, 0) + 1
    value = 0
    while True:
        prev = [-1] * n
        prev[src] = src
        queue = deque([src])
        while queue and prev[dst] < 0:
            x = queue.popleft()
            for y, c in cap[x].items():
                if c > 0 and prev[y] < 0:
                    prev[y] = x
                    queue.append(y)
        if prev[dst] < 0:
            reach = 0
            for v in range(n):
                if prev[v] >= 0:
                    reach |= 1 << v
            return value, reach
        y = dst
        while y != src:
            x = prev[y]
            cap[x][y] -= 1
            cap[y][x] = cap[y].get(x, 0) + 1
            y = x
        value += 1


def _pairs(g: Multigraph) -> list[tuple[int, int]]:
    return [(e.u, e.v) for e in g.edges]


def max_flow_value(g: Multigraph, u: int, v: int) -> int:
    """Maximum number of edge-disjoint u-v paths."""
    return _max_flow(g.n, _pairs(g), u, v)[0]


def min_source_side_cut(g: Multigraph, u: int, v: int) -> NodeSet:
    """The inclusion-minimal minimum cut side containing ``u`` and not ``v``."""
    return NodeSet(_max_flow(g.n, _pairs(g), u, v)[1], g.n)
