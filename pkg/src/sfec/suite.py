"""Randomized evidence for the problem-combination table and the ratio bound.

Each table cell pairs two problem kinds with an expected class of their union:
``"+*"`` always uncrossable, ``"+"`` semi-uncrossable but not uncrossable in
general, ``"-"`` not semi-uncrossable in general.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from .certify import certify
from .exact import optimal_cover
from .families import FamilySpec, Union
from .family_props import CombinationVerdict, search_combination
from .generators import KINDS, make_rng, random_connected_graph, random_family
from .graph import Multigraph
from .primal_dual import solve

SF, TJ, P2P, KCF_, TKCF_, SNA_, SP = (
    "steiner_forest",
    "t_join",
    "gp2p",
    "kcf",
    "tkcf",
    "sna",
    "st_path",
)

# (row, column, expected) for the upper triangle plus the st-path probe row.
COMBINATION_TABLE: tuple[tuple[str, str, str], ...] = (
    (SF, SF, "+*"), (SF, TJ, "+*"), (SF, P2P, "+*"), (SF, KCF_, "+"), (SF, TKCF_, "+"), (SF, SNA_, "-"),
    (TJ, TJ, "+*"), (TJ, P2P, "+*"), (TJ, KCF_, "+"), (TJ, TKCF_, "+"), (TJ, SNA_, "-"),
    (P2P, P2P, "+*"), (P2P, KCF_, "+"), (P2P, TKCF_, "+"), (P2P, SNA_, "-"),
    (KCF_, KCF_, "+*"), (KCF_, TKCF_, "+"), (KCF_, SNA_, "+"),
    (TKCF_, TKCF_, "-"), (TKCF_, SNA_, "-"),
    (SNA_, SNA_, "-"),
    (SP, SF, "+*"), (SP, TJ, "+*"), (SP, P2P, "+*"), (SP, KCF_, "+"), (SP, TKCF_, "+"), (SP, SNA_, "-"),
)

EXPECTED_STATUS = {
    "+*": "always_uncrossable",
    "+": "always_semi_uncrossable",
    "-": "counterexample",
}


def cell_matches(expected: str, verdict: CombinationVerdict) -> bool:
    """A "+" cell also needs at least one union that is not uncrossable."""
    if verdict.status != EXPECTED_STATUS[expected]:
        return False
    return expected != "+" or verdict.not_uncrossable > 0


def positive_cells() -> list[tuple[str, str]]:
    return [(a, b) for a, b, mark in COMBINATION_TABLE if mark != "-"]


def audit_groups() -> list[tuple[str, ...]]:
    """Single kinds plus every positive table cell."""
    return [(k,) for k in KINDS] + [tuple(c) for c in positive_cells()]


def random_case(
    group: tuple[str, ...], seed: int, trial: int, *, max_nodes: int = 8, max_edges: int = 14
) -> tuple[Multigraph, FamilySpec]:
    """Connected graph (so feasible for every kind) with costs 1..10 and a family."""
    rng = make_rng(seed, "audit", "|".join(group), trial)
    n = rng.randint(3, max_nodes)
    m = rng.randint(n - 1, max(n - 1, max_edges))
    g = random_connected_graph(rng, n, m)
    specs = [random_family(rng, kind, n) for kind in group]
    spec = specs[0] if len(specs) == 1 else Union(tuple(specs))
    return g, spec


@dataclass
class CaseOutcome:
    group: tuple[str, ...]
    trial: int
    cost: Fraction
    dual_total: Fraction
    optimum: Fraction
    certificate_failures: list[str] = field(default_factory=list)
    witness_by_search: bool = False

    @property
    def ratio_ok(self) -> bool:
        return self.cost <= 2 * self.optimum and self.cost <= 2 * self.dual_total

    @property
    def weak_duality_ok(self) -> bool:
        return self.dual_total <= self.optimum

    @property
    def ratio(self) -> Fraction:
        return self.cost / self.optimum if self.optimum else Fraction(1)


@dataclass
class AuditReport:
    outcomes: list[CaseOutcome]
    solve_exact_seconds: float
    certify_seconds: float

    def worst_ratio(self) -> Fraction:
        return max((o.ratio for o in self.outcomes), default=Fraction(1))


def run_case(
    group: tuple[str, ...], seed: int, trial: int, *, with_certificate: bool = True, max_nodes: int = 8
) -> tuple[CaseOutcome, float, float]:
    g, spec = random_case(group, seed, trial, max_nodes=max_nodes)
    t0 = time.perf_counter()
    result = solve(g, spec)
    opt = optimal_cover(g, spec).optimum_cost
    t1 = time.perf_counter()
    failures: list[str] = []
    by_search = False
    if with_certificate:
        cert = certify(g, spec, result)
        failures = cert.failed()
        detail = cert.checks["laminar_witness"].detail
        by_search = isinstance(detail, dict) and detail.get("method") == "search"
    t2 = time.perf_counter()
    outcome = CaseOutcome(group, trial, result.cost, result.dual_total, opt, failures, by_search)
    return outcome, t1 - t0, t2 - t1


def ratio_audit(
    groups: list[tuple[str, ...]] | None = None,
    trials: int = 200,
    seed: int = 1,
    *,
    with_certificate: bool = True,
    max_nodes: int = 8,
) -> AuditReport:
    outcomes = []
    t_solve = t_cert = 0.0
    for group in groups if groups is not None else audit_groups():
        for trial in range(trials):
            o, a, b = run_case(group, seed, trial, with_certificate=with_certificate, max_nodes=max_nodes)
            outcomes.append(o)
            t_solve += a
            t_cert += b
    return AuditReport(outcomes, t_solve, t_cert)


@dataclass
class CellReport:
    row: str
    column: str
    expected: str
    verdict: CombinationVerdict
    worst_ratio: Fraction | None = None

    @property
    def ok(self) -> bool:
        return cell_matches(self.expected, self.verdict)

    def to_json(self) -> dict:
        return {
            "row": self.row,
            "column": self.column,
            "expected": self.expected,
            "matches": self.ok,
            "worst_ratio": None if self.worst_ratio is None else str(self.worst_ratio),
            **self.verdict.to_json(),
        }


def iter_suite(seed: int = 1, trials: int = 200, max_nodes: int = 8, ratio_trials: int | None = None) -> Iterator[CellReport]:
    """Search every table cell; positive cells also get a solve-vs-exact audit."""
    for row, col, mark in COMBINATION_TABLE:
        verdict = search_combination(row, col, trials=trials, seed=seed, max_nodes=max_nodes)
        worst = None
        if mark != "-":
            audit = ratio_audit(
                [(row, col)], trials=ratio_trials or trials, seed=seed, with_certificate=False, max_nodes=max_nodes
            )
            worst = audit.worst_ratio()
        yield CellReport(row, col, mark, verdict, worst)
