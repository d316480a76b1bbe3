"""Two-phase primal-dual algorithm for covering a set family by edges.

Phase 1 grows the duals of all current residual cores at the same rate until
an edge outside the partial solution becomes tight, then adds that edge.
Phase 2 scans the added edges newest-first and drops every edge whose
removal keeps the family covered.  All arithmetic is exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .families import FamilyOracle, FamilySpec
from .graph import Multigraph, NodeSet, crosses


class Infeasible(Exception):
    """No edge set covers the family."""


class NoCandidateEdge(Infeasible):
    """No edge outside the current solution crosses any active core."""


class NotACover(ValueError):
    pass


@dataclass
class DualState:
    raised: dict[int, Fraction]
    load: list[Fraction]

    @classmethod
    def empty(cls, m: int) -> DualState:
        return cls({}, [Fraction(0)] * m)

    def total(self) -> Fraction:
        return sum(self.raised.values(), Fraction(0))

    def raise_cores(self, g: Multigraph, cores: Sequence[int], eps: Fraction) -> None:
        if not eps:
            return
        for c in cores:
            self.raised[c] = self.raised.get(c, Fraction(0)) + eps
        for i, ends in enumerate(g.end_masks):
            k = sum(1 for c in cores if crosses(ends, c))
            if k:
                self.load[i] += eps * k


@dataclass(frozen=True)
class IterationRecord:
    cores: tuple[NodeSet, ...]
    epsilon: Fraction
    tight_edge: int


@dataclass
class SolveResult:
    added: list[int]
    final_edges: list[int]
    cost: Fraction
    dual_total: Fraction
    duals: dict[NodeSet, Fraction]
    history: list[IterationRecord] = field(default_factory=list)

    @property
    def survivors(self) -> list[bool]:
        keep = set(self.final_edges)
        return [e in keep for e in self.added]


def compute_epsilon(
    g: Multigraph, dual: DualState, cores: Iterable[NodeSet | int], edge_ids: Iterable[int]
) -> tuple[Fraction, int]:
    """Smallest uniform raise that makes an edge outside ``edge_ids`` tight.

    Ties go to the lowest edge id.  Raises ``NoCandidateEdge`` when no such
    edge crosses any core.
    """
    core_masks = [c.mask if isinstance(c, NodeSet) else c for c in cores]
    chosen = set(edge_ids)
    best: tuple[Fraction, int] | None = None
    for i, ends in enumerate(g.end_masks):
        if i in chosen:
            continue
        k = sum(1 for c in core_masks if crosses(ends, c))
        if not k:
            continue
        slack = (g.edges[i].cost - dual.load[i]) / k
        if best is None or slack < best[0]:
            best = (slack, i)
    if best is None:
        raise NoCandidateEdge("active cores cannot be covered by any remaining edge")
    return best


def reverse_delete(g: Multigraph, spec: FamilySpec | FamilyOracle, added: Sequence[int]) -> list[int]:
    """Drop edges newest-first while coverage survives; returns kept edges in addition order."""
    oracle = spec if isinstance(spec, FamilyOracle) else FamilyOracle(spec, g)
    current = list(added)
    if not oracle.is_covered(current):
        raise NotACover("edge list does not cover the family")
    for i in range(len(added) - 1, -1, -1):
        trial = [e for e in current if e != added[i]]
        if oracle.is_covered(trial):
            current = trial
    return current


def solve(g: Multigraph, spec: FamilySpec) -> SolveResult:
    oracle = FamilyOracle(spec, g)
    dual = DualState.empty(g.m)
    added: list[int] = []
    history: list[IterationRecord] = []
    while True:
        cores = oracle.core_masks(added)
        if not cores:
            break
        try:
            eps, edge = compute_epsilon(g, dual, cores, added)
        except NoCandidateEdge as exc:
            raise Infeasible(
                f"iteration {len(history)}: no edge covers cores "
                + ", ".join(repr(NodeSet(c, g.n)) for c in cores)
            ) from exc
        dual.raise_cores(g, cores, eps)
        added.append(edge)
        history.append(IterationRecord(tuple(NodeSet(c, g.n) for c in cores), eps, edge))
    final = reverse_delete(g, oracle, added)
    return SolveResult(
        added=added,
        final_edges=sorted(final),
        cost=g.total_cost(final),
        dual_total=dual.total(),
        duals={NodeSet(m, g.n): y for m, y in dual.raised.items()},
        history=history,
    )
