from __future__ import annotations

import dataclasses
from fractions import Fraction

import pytest

from sfec.certify import (
    NotSemiUncrossable,
    NoWitness,
    build_laminar_witness,
    certify,
    check_core_laws,
    check_dual_feasible,
    check_iteration_inequality,
    check_ratio,
    iteration_sums,
    witness_problems,
)
from sfec.families import KCF, Explicit, STPath, SteinerForest
from sfec.generators import KINDS, make_rng, random_connected_graph, random_family
from sfec.graph import Multigraph, NodeSet, cut_degree
from sfec.primal_dual import solve

from . import oracles
from .faults import FAULTS

S, A, T = 0, 1, 2
SA, AT, ST = 0, 1, 2


def ns(n, *nodes):
    return NodeSet.of(n, nodes)


@pytest.fixture
def triangle():
    return Multigraph.build(3, [(S, A, 1), (A, T, 1), (S, T, 3)])


@pytest.fixture
def star():
    return Multigraph.build(3, [(0, 1, 1), (0, 2, 2)])


# ---------------------------------------------------------------- dual / ratio


def test_dual_feasible_examples(triangle):
    res = solve(triangle, STPath(S, T))
    assert check_dual_feasible(triangle, res)
    duals = dict(res.duals)
    duals[ns(3, S)] += 1
    assert not check_dual_feasible(triangle, dataclasses.replace(res, duals=duals, dual_total=res.dual_total + 1))
    empty = solve(triangle, SteinerForest([]))
    assert check_dual_feasible(triangle, empty)


def test_dual_feasible_rejects_malformed_history(triangle):
    res = solve(triangle, STPath(S, T))
    bad = dataclasses.replace(res, history=[res.history[0], res.history[0]])
    assert not check_dual_feasible(triangle, bad)


def test_check_ratio_examples(triangle, star):
    assert check_ratio(solve(triangle, STPath(S, T)))
    res = solve(star, KCF(2))
    assert res.cost == 3 and res.dual_total == Fraction(5, 2) and check_ratio(res)
    assert check_ratio(solve(triangle, SteinerForest([])))
    assert not check_ratio(dataclasses.replace(res, dual_total=Fraction(1)))


# ---------------------------------------------------------------- iteration inequality


def test_iteration_inequality_examples(triangle, star):
    res = solve(triangle, STPath(S, T))
    assert iteration_sums(triangle, res)[0] == (2, 3)
    assert check_iteration_inequality(triangle, STPath(S, T), res)
    res = solve(star, KCF(2))
    assert iteration_sums(star, res)[-1] == (1, 1)
    assert res.history[-1].cores == (ns(3, 2),)
    assert check_iteration_inequality(star, KCF(2), res)


def test_iteration_sums_match_definition():
    for trial in range(40):
        rng = make_rng("iter-sums", trial)
        n = rng.randint(3, 7)
        g = random_connected_graph(rng, n, rng.randint(n - 1, 12))
        spec = random_family(rng, rng.choice(KINDS), n)
        res = solve(g, spec)
        for idx, rec in enumerate(res.history):
            later = [e for e in res.final_edges if res.added.index(e) >= idx]
            lhs = sum(cut_degree(g, later, c) for c in rec.cores)
            assert iteration_sums(g, res)[idx] == (lhs, 2 * len(rec.cores) - 1)
            assert lhs <= 2 * len(rec.cores) - 1


def test_iteration_inequality_detects_non_semi_family(load_fixture):
    inst = load_fixture("example3")
    res = solve(inst.graph, inst.family)
    assert not check_iteration_inequality(inst.graph, inst.family, res)


# ---------------------------------------------------------------- laminar witness


def test_laminar_witness_triangle(triangle):
    w = build_laminar_witness(triangle, STPath(S, T), [SA, AT])
    assert w.sets == {SA: ns(3, S), AT: ns(3, T)}
    assert w.is_laminar() and w.steps == 0


def test_laminar_witness_single_edge():
    g = Multigraph.build(2, [(0, 1, 1)])
    w = build_laminar_witness(g, STPath(0, 1), [0])
    assert w.sets == {0: ns(2, 0)}


def test_laminar_witness_uncrossing_from_seeded_assignment():
    g = Multigraph.build(4, [(0, 1), (1, 2), (2, 3)])
    spec = SteinerForest([[0, 1, 2, 3]])
    initial = {0: ns(4, 1, 2, 3), 1: ns(4, 0, 1), 2: ns(4, 0, 1, 2)}
    start = sum(len(s) for s in initial.values())
    w = build_laminar_witness(g, spec, [0, 1, 2], initial)
    assert w.is_laminar() and w.steps >= 1 and w.size() < start
    assert witness_problems(g, spec, [0, 1, 2], w) == []
    members = oracles.members(spec, 4)
    pairs = [(e.u, e.v) for e in g.edges]
    for e, s in w.sets.items():
        assert frozenset(s) in members
        crossing = [i for i in range(3) if oracles.degree([pairs[i]], set(s))]
        assert crossing == [e]


def test_laminar_witness_largest_start_also_converges():
    for trial in range(40):
        rng = make_rng("witness", trial)
        n = rng.randint(3, 7)
        g = random_connected_graph(rng, n, rng.randint(n - 1, 12))
        spec = random_family(rng, rng.choice(KINDS), n)
        res = solve(g, spec)
        for start in ("smallest", "largest"):
            w = build_laminar_witness(g, spec, res.final_edges, start=start)
            assert witness_problems(g, spec, res.final_edges, w) == []


def test_laminar_witness_errors(triangle, load_fixture):
    with pytest.raises(NoWitness):
        build_laminar_witness(triangle, STPath(S, T), [SA, AT, ST])
    with pytest.raises(NoWitness):
        build_laminar_witness(triangle, STPath(S, T), [SA, AT], {SA: ns(3, S, A), AT: ns(3, T)})
    inst = load_fixture("example3")
    res = solve(inst.graph, inst.family)
    with pytest.raises(NotSemiUncrossable):
        build_laminar_witness(inst.graph, inst.family, res.final_edges, start="largest")


# ---------------------------------------------------------------- core laws


def test_core_laws_examples(load_fixture):
    g = Multigraph.build(3, [(0, 2)])
    assert check_core_laws(SteinerForest([[0, 1]]), g, [])
    inst = load_fixture("example1")
    assert check_core_laws(inst.family, inst.graph, [])
    for name in ("example4", "st_path_sna", "example1_symmetrized"):
        inst = load_fixture(name)
        assert not check_core_laws(inst.family, inst.graph, [])


def test_core_laws_explicit_violation():
    fam = Explicit([ns(3, 0, 1), ns(3, 1, 2)])
    assert not check_core_laws(fam, Multigraph.build(3, []), [])


# ---------------------------------------------------------------- full certificate


@pytest.mark.parametrize(
    "name",
    ["triangle", "star", "empty_family", "example1", "example2", "steiner_forest", "t_join", "gp2p",
     "kcf", "tkcf", "sna", "st_path", "sf_kcf"],
)
def test_certify_fixtures_pass(load_fixture, name):
    inst = load_fixture(name)
    cert = certify(inst.graph, inst.family, solve(inst.graph, inst.family))
    assert cert.passed, cert.failed()


@pytest.mark.parametrize("name", ["example3", "example4", "st_path_sna", "example1_symmetrized"])
def test_certify_flags_non_semi_fixtures(load_fixture, name):
    inst = load_fixture(name)
    cert = certify(inst.graph, inst.family, solve(inst.graph, inst.family))
    assert not cert.passed
    assert cert.to_json()["passed"] is False


@pytest.mark.parametrize("fault", sorted(FAULTS))
def test_injected_faults_fail(fault):
    hits = 0
    for trial in range(40):
        rng = make_rng("faults", trial)
        n = rng.randint(3, 7)
        g = random_connected_graph(rng, n, rng.randint(n - 1, 12))
        spec = random_family(rng, rng.choice(KINDS), n)
        res = solve(g, spec)
        assert certify(g, spec, res).passed
        mutated = FAULTS[fault](g, res)
        if mutated is None:
            continue
        hits += 1
        assert not certify(mutated[0], spec, mutated[1]).passed
    assert hits >= 20


# ---------------------------------------------------------------- stalled uncrossing


def test_uncrossing_can_stall_on_semi_uncrossable_family(load_fixture):
    """A Sigma|S|-minimal witness family need not be laminar.

    Edge e=(5,4) has the single witness A={1,2,3,5}; edge f=(5,1) has the
    witnesses {0,4,5} and {1,2,3}, both of size 3.  With B={0,4,5}, e lies
    inside B and f inside A; A∩B={5} is covered by both edges, B-A={0,4} is
    not a member, so the only move is B -> A-B, which does not shrink Sigma|S|.
    """
    from sfec.family_props import ExplicitFamily, classify

    inst = load_fixture("witness_stall")
    g, spec = inst.graph, inst.family
    assert classify(ExplicitFamily.from_spec(spec, g.n)).semi_uncrossable
    res = solve(g, spec)
    assert res.final_edges == [2, 3, 4, 5, 6]
    a, b = ns(6, 1, 2, 3, 5), ns(6, 0, 4, 5)
    stalled = {2: a, 3: ns(6, 2), 4: ns(6, 2, 3), 5: b, 6: ns(6, 0)}
    with pytest.raises(NotSemiUncrossable):
        build_laminar_witness(g, spec, res.final_edges, stalled, fallback=False)
    w = build_laminar_witness(g, spec, res.final_edges, stalled)
    assert w.method == "search" and w.sets[5] == a - b
    assert witness_problems(g, spec, res.final_edges, w) == []
    # both assignments have the same total size, so minimality alone does not force laminarity
    assert w.size() == sum(len(s) for s in stalled.values())
    assert certify(g, spec, res).passed
