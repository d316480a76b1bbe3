"""Post-hoc verification of a solver run.

Every check re-derives its facts from the instance and the recorded trace;
nothing trusts the solver's bookkeeping.  Witness construction and the core
laws enumerate the family, so they need ``n <= 16``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Mapping

from .exact import covers, is_minimal_cover
from .families import FamilySpec, member_masks
from .graph import Multigraph, NodeSet, crosses, minimal_masks, sorted_masks
from .primal_dual import DualState, SolveResult


class MalformedHistory(ValueError):
    pass


class NoWitness(ValueError):
    """Some edge of the cover has no witness set, so the cover is not minimal."""


class NotSemiUncrossable(ValueError):
    """A crossing witness pair admits no size-decreasing replacement."""


def replay_duals(g: Multigraph, result: SolveResult) -> tuple[DualState, list[str]]:
    """Rebuild the dual solution from the trace; also returns tightness violations."""
    dual = DualState.empty(g.m)
    problems: list[str] = []
    seen: set[int] = set()
    for idx, rec in enumerate(result.history):
        if rec.epsilon < 0:
            raise MalformedHistory(f"iteration {idx}: negative epsilon")
        if not 0 <= rec.tight_edge < g.m:
            raise MalformedHistory(f"iteration {idx}: unknown edge {rec.tight_edge}")
        if rec.tight_edge in seen:
            raise MalformedHistory(f"iteration {idx}: edge {rec.tight_edge} added twice")
        seen.add(rec.tight_edge)
        masks = [c.mask for c in rec.cores]
        if not any(crosses(g.end_masks[rec.tight_edge], c) for c in masks):
            problems.append(f"iteration {idx}: edge {rec.tight_edge} crosses no active core")
        dual.raise_cores(g, masks, rec.epsilon)
        if dual.load[rec.tight_edge] != g.edges[rec.tight_edge].cost:
            problems.append(
                f"iteration {idx}: edge {rec.tight_edge} added with load "
                f"{dual.load[rec.tight_edge]} != cost {g.edges[rec.tight_edge].cost}"
            )
    return dual, problems


def check_dual_feasible(g: Multigraph, result: SolveResult) -> bool:
    return not dual_feasibility_problems(g, result)


def dual_feasibility_problems(g: Multigraph, result: SolveResult) -> list[str]:
    try:
        dual, problems = replay_duals(g, result)
    except MalformedHistory as exc:
        return [str(exc)]
    for i, e in enumerate(g.edges):
        if dual.load[i] > e.cost:
            problems.append(f"edge {i}: load {dual.load[i]} exceeds cost {e.cost}")
    recorded = {s.mask: y for s, y in result.duals.items() if y}
    if recorded != {m: y for m, y in dual.raised.items() if y}:
        problems.append("recorded duals differ from the replayed trace")
    if result.dual_total != dual.total():
        problems.append(f"dual total {result.dual_total} != replayed {dual.total()}")
    if any(y < 0 for y in result.duals.values()):
        problems.append("negative dual value")
    return problems


def check_ratio(result: SolveResult) -> bool:
    return result.cost <= 2 * result.dual_total


def _addition_index(result: SolveResult) -> dict[int, int]:
    return {rec.tight_edge: idx for idx, rec in enumerate(result.history)}


def iteration_sums(g: Multigraph, result: SolveResult) -> list[tuple[int, int]]:
    """Per iteration: (sum of survivor-degrees of the cores, 2|cores| - 1)."""
    when = _addition_index(result)
    final = list(result.final_edges)
    out = []
    for idx, rec in enumerate(result.history):
        later = [g.end_masks[e] for e in final if when.get(e, -1) >= idx]
        total = sum(1 for c in rec.cores for ends in later if crosses(ends, c.mask))
        out.append((total, 2 * len(rec.cores) - 1))
    return out


def check_iteration_inequality(g: Multigraph, spec: FamilySpec, result: SolveResult) -> bool:
    if any(e not in _addition_index(result) for e in result.final_edges):
        return False
    return all(lhs <= rhs for lhs, rhs in iteration_sums(g, result))


def _edge_mask(ids: Iterable[int]) -> int:
    m = 0
    for i in ids:
        m |= 1 << i
    return m


def residual_member_masks(spec: FamilySpec, g: Multigraph, edge_ids: Iterable[int]) -> list[int]:
    imask = _edge_mask(edge_ids)
    return [s for s in member_masks(spec, g.n) if not g.crossing_mask(s) & imask]


def core_law_violation(spec: FamilySpec, g: Multigraph, edge_ids: Iterable[int]) -> tuple[int, int] | None:
    """First (core, member) pair of the residual family that neither nests nor is disjoint."""
    members = residual_member_masks(spec, g, edge_ids)
    cores = minimal_masks(members)
    for c in cores:
        for s in members:
            if c & s and c & ~s:
                return c, s
    return None


def check_core_laws(spec: FamilySpec, g: Multigraph, edge_ids: Iterable[int]) -> bool:
    """Each residual core is inside or disjoint from each residual member.

    Pairwise disjointness of cores is the special case where the member is
    itself a core.
    """
    return core_law_violation(spec, g, edge_ids) is None


@dataclass
class WitnessAssignment:
    """``method`` is ``"uncrossing"`` or ``"search"`` (exhaustive fallback)."""

    n: int
    sets: dict[int, NodeSet]
    steps: int = 0
    method: str = "uncrossing"

    def family(self) -> list[NodeSet]:
        return [self.sets[e] for e in sorted(self.sets)]

    def size(self) -> int:
        return sum(len(s) for s in self.sets.values())

    def is_laminar(self) -> bool:
        return _first_crossing(self.sets) is None


def _first_crossing(sets: Mapping[int, NodeSet]) -> tuple[int, int] | None:
    edges = sorted(sets)
    for i, e in enumerate(edges):
        a = sets[e].mask
        for f in edges[i + 1 :]:
            b = sets[f].mask
            if a & b and a & ~b and b & ~a:
                return e, f
    return None


def build_laminar_witness(
    g: Multigraph,
    spec: FamilySpec,
    edge_ids: Iterable[int],
    initial: Mapping[int, NodeSet] | None = None,
    *,
    start: str = "smallest",
    fallback: bool = True,
) -> WitnessAssignment:
    """Witness sets for a minimal cover, uncrossed until they form a laminar family.

    Starts from ``initial`` (validated) or, per edge, the smallest (or with
    ``start="largest"`` the largest) witness, ties in canonical order.  Each
    step replaces one set of a crossing pair by its intersection or one of its
    differences, preferring the intersection, and only when that strictly
    shrinks the total size.

    Strict shrinking can stall on a semi-uncrossable family: when ``A`` is the
    witness of ``e``, ``B`` of ``f``, ``e`` lies inside ``B`` and ``f`` inside
    ``A``, the only valid move may be ``B -> A - B`` with ``|A - B| >= |B|``.
    With ``fallback`` the assignment is then found by exhaustive search over
    per-edge witness sets; ``NotSemiUncrossable`` means no laminar witness
    family exists at all (or, without ``fallback``, that uncrossing stalled).
    """
    ids = g.check_edge_ids(edge_ids)
    imask = _edge_mask(ids)
    members = member_masks(spec, g.n)
    in_family = set(members)

    def crossing(s: int) -> int:
        return g.crossing_mask(s) & imask

    sets: dict[int, NodeSet] = {}
    if initial is not None:
        if set(initial) != set(ids):
            raise NoWitness("initial assignment must cover exactly the given edges")
        for e, s in initial.items():
            if s.mask not in in_family or crossing(s.mask) != 1 << e:
                raise NoWitness(f"{s!r} is not a witness set for edge {e}")
            sets[e] = s
    else:
        if start not in ("smallest", "largest"):
            raise ValueError(f"unknown start {start!r}")
        options = _witness_options(g, members, imask)
        for e in ids:
            if not options.get(e):
                raise NoWitness(f"edge {e} has no witness set; the cover is not minimal")
            pick = options[e][0] if start == "smallest" else max(options[e], key=int.bit_count)
            sets[e] = NodeSet(pick, g.n)

    steps = 0
    while (pair := _first_crossing(sets)) is not None:
        e, f = pair
        a, b = sets[e].mask, sets[f].mask
        for x in (a & b, a & ~b, b & ~a):
            if x not in in_family:
                continue
            c = crossing(x)
            target = next((h for h in (e, f) if c == 1 << h and x.bit_count() < len(sets[h])), None)
            if target is not None:
                sets[target] = NodeSet(x, g.n)
                steps += 1
                break
        else:
            stalled = f"witnesses {sets[e]!r} (edge {e}) and {sets[f]!r} (edge {f}) cannot be uncrossed"
            if not fallback:
                raise NotSemiUncrossable(stalled)
            found = _search_laminar(ids, _witness_options(g, members, imask))
            if found is None:
                raise NotSemiUncrossable(f"{stalled}, and no laminar witness family exists")
            return WitnessAssignment(g.n, {e: NodeSet(m, g.n) for e, m in found.items()}, steps, "search")
    return WitnessAssignment(g.n, sets, steps)


def _witness_options(g: Multigraph, members: Iterable[int], imask: int) -> dict[int, list[int]]:
    """Per edge, its witness sets ordered by size, then canonically."""
    options: dict[int, list[int]] = {}
    for s in sorted(members, key=lambda m: m.bit_count()):
        c = g.crossing_mask(s) & imask
        if c and c & (c - 1) == 0:
            options.setdefault(c.bit_length() - 1, []).append(s)
    return options


def _search_laminar(ids: list[int], options: Mapping[int, list[int]]) -> dict[int, int] | None:
    """Backtracking over per-edge witness sets; fewest options first."""
    order = sorted(ids, key=lambda e: (len(options.get(e, ())), e))
    chosen: list[int] = []

    def laminar_with(x: int) -> bool:
        return all(not (x & y and x & ~y and y & ~x) for y in chosen)

    def dfs(i: int) -> bool:
        if i == len(order):
            return True
        for x in options.get(order[i], ()):
            if laminar_with(x):
                chosen.append(x)
                if dfs(i + 1):
                    return True
                chosen.pop()
        return False

    if not dfs(0):
        return None
    return dict(zip(order, chosen))


def witness_problems(g: Multigraph, spec: FamilySpec, edge_ids: Iterable[int], w: WitnessAssignment) -> list[str]:
    ids = g.check_edge_ids(edge_ids)
    imask = _edge_mask(ids)
    in_family = set(member_masks(spec, g.n))
    problems = []
    if sorted(w.sets) != ids:
        problems.append("assignment does not match the cover")
    for e, s in w.sets.items():
        if s.mask not in in_family:
            problems.append(f"edge {e}: {s!r} is not a member")
        if g.crossing_mask(s.mask) & imask != 1 << e:
            problems.append(f"edge {e}: {s!r} is not crossed by exactly that edge")
    if not w.is_laminar():
        problems.append("assignment is not laminar")
    return problems


@dataclass
class CheckOutcome:
    passed: bool
    detail: Any = None

    def to_json(self) -> dict:
        return {"passed": self.passed, "detail": self.detail}


@dataclass
class Certificate:
    checks: dict[str, CheckOutcome] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks.values())

    def failed(self) -> list[str]:
        return [name for name, c in self.checks.items() if not c.passed]

    def to_json(self) -> dict:
        return {"passed": self.passed, "checks": {k: v.to_json() for k, v in self.checks.items()}}


def certify(g: Multigraph, spec: FamilySpec, result: SolveResult) -> Certificate:
    """Run every check against one solver result."""
    cert = Certificate()
    checks = cert.checks

    problems = dual_feasibility_problems(g, result)
    checks["dual_feasible"] = CheckOutcome(not problems, problems or None)

    checks["ratio"] = CheckOutcome(
        check_ratio(result), {"cost": str(result.cost), "dual_total": str(result.dual_total)}
    )

    final = list(result.final_edges)
    consistent = result.cost == g.total_cost(final) and set(final) <= set(result.added)
    checks["cost_consistent"] = CheckOutcome(consistent)
    checks["covers"] = CheckOutcome(covers(g, spec, final))
    checks["minimal_cover"] = CheckOutcome(is_minimal_cover(g, spec, final))

    sums = iteration_sums(g, result)
    bad = [i for i, (lhs, rhs) in enumerate(sums) if lhs > rhs]
    ok = check_iteration_inequality(g, spec, result)
    checks["iteration_inequality"] = CheckOutcome(ok, {"violations": bad} if bad or not ok else None)

    law_fail = None
    core_fail = None
    for idx, rec in enumerate(result.history):
        prefix = result.added[:idx]
        v = core_law_violation(spec, g, prefix)
        if v is not None and law_fail is None:
            law_fail = {"iteration": idx, "core": sorted(NodeSet(v[0], g.n)), "member": sorted(NodeSet(v[1], g.n))}
        expected = minimal_masks(residual_member_masks(spec, g, prefix))
        if sorted_masks(c.mask for c in rec.cores) != expected and core_fail is None:
            core_fail = {"iteration": idx}
    checks["core_laws"] = CheckOutcome(law_fail is None, law_fail)
    checks["recorded_cores"] = CheckOutcome(core_fail is None, core_fail)

    try:
        w = build_laminar_witness(g, spec, final, start="largest")
        wp = witness_problems(g, spec, final, w)
        checks["laminar_witness"] = CheckOutcome(
            not wp,
            wp
            or {
                "method": w.method,
                "steps": w.steps,
                "sets": {str(e): sorted(s) for e, s in sorted(w.sets.items())},
            },
        )
    except (NoWitness, NotSemiUncrossable) as exc:
        checks["laminar_witness"] = CheckOutcome(False, str(exc))
    return cert
