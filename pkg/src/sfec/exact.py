"""Brute-force ground truth for small instances.

The family is expanded to its members, each member becomes the bitmask of
edges crossing it, and a cover is an edge set hitting every such mask.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable

from .families import FamilySpec, member_masks
from .graph import Multigraph
from .primal_dual import Infeasible

EXACT_EDGE_LIMIT = 22


class TooManyEdges(ValueError):
    pass


@dataclass(frozen=True)
class ExactResult:
    optimum_cost: Fraction
    witness_edges: tuple[int, ...]


def requirement_masks(g: Multigraph, spec: FamilySpec) -> list[int]:
    """Edge masks that every cover must hit, with implied (superset) masks dropped."""
    masks = {g.crossing_mask(s) for s in member_masks(spec, g.n)}
    kept: list[int] = []
    for m in sorted(masks, key=int.bit_count):
        if not any(k & ~m == 0 for k in kept):
            kept.append(m)
    return kept


def _covers(req: list[int], chosen: int) -> bool:
    return all(r & chosen for r in req)


def optimal_cover(g: Multigraph, spec: FamilySpec, *, method: str = "bnb") -> ExactResult:
    """Minimum-cost cover; ties go to the lexicographically smallest sorted id tuple.

    ``method="bnb"`` is a depth-first include/exclude search in edge-id order;
    ``method="enumerate"`` scans every subset (slow, used as a cross-check).
    """
    if g.m > EXACT_EDGE_LIMIT:
        raise TooManyEdges(f"m={g.m} exceeds exact-solver limit {EXACT_EDGE_LIMIT}")
    spec.validate(g.n)
    req = requirement_masks(g, spec)
    if any(r == 0 for r in req):
        raise Infeasible("some member is crossed by no edge")
    if method == "enumerate":
        return _enumerate(g, req)
    if method != "bnb":
        raise ValueError(f"unknown method {method!r}")
    return _branch_and_bound(g, req)


def _enumerate(g: Multigraph, req: list[int]) -> ExactResult:
    costs = [e.cost for e in g.edges]
    best: tuple[Fraction, tuple[int, ...]] | None = None
    for size in range(g.m + 1):
        for combo in combinations(range(g.m), size):
            chosen = 0
            for i in combo:
                chosen |= 1 << i
            if not _covers(req, chosen):
                continue
            key = (sum((costs[i] for i in combo), Fraction(0)), combo)
            if best is None or key < best:
                best = key
    assert best is not None  # the full edge set covers once no mask is empty
    return ExactResult(best[0], best[1])


def _branch_and_bound(g: Multigraph, req: list[int]) -> ExactResult:
    m = g.m
    costs = [e.cost for e in g.edges]
    # suffix[i]: mask of edges with id >= i
    suffix = [((1 << m) - 1) & ~((1 << i) - 1) for i in range(m + 1)]
    best: list = [None]

    def dfs(i: int, chosen: int, cost: Fraction, picked: tuple[int, ...], open_req: list[int]) -> None:
        b = best[0]
        if b is not None and cost > b[0]:
            return
        if not open_req:
            key = (cost, picked)
            if b is None or key < b:
                best[0] = key
            return
        if i == m:
            return
        rest = suffix[i]
        for r in open_req:
            if not r & rest:
                return
        bit = 1 << i
        dfs(i + 1, chosen | bit, cost + costs[i], picked + (i,), [r for r in open_req if not r & bit])
        # skipping edge i is only sound if every open requirement can still be met
        if all(r & suffix[i + 1] for r in open_req):
            dfs(i + 1, chosen, cost, picked, open_req)

    dfs(0, 0, Fraction(0), (), req)
    cost, picked = best[0]
    return ExactResult(cost, picked)


def covers(g: Multigraph, spec: FamilySpec, edge_ids: Iterable[int]) -> bool:
    chosen = 0
    for i in g.check_edge_ids(edge_ids):
        chosen |= 1 << i
    return _covers(requirement_masks(g, spec), chosen)


def is_minimal_cover(g: Multigraph, spec: FamilySpec, edge_ids: Iterable[int]) -> bool:
    """Covers the family, and no single-edge removal still does."""
    ids = g.check_edge_ids(edge_ids)
    req = requirement_masks(g, spec)
    chosen = 0
    for i in ids:
        chosen |= 1 << i
    if not _covers(req, chosen):
        return False
    return not any(_covers(req, chosen & ~(1 << i)) for i in ids)
