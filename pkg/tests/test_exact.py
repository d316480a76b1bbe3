from __future__ import annotations

import pytest

from sfec.exact import EXACT_EDGE_LIMIT, TooManyEdges, covers, is_minimal_cover, optimal_cover
from sfec.families import KCF, STPath, SteinerForest, Union
from sfec.generators import KINDS, make_rng, random_connected_graph, random_family
from sfec.graph import Multigraph
from sfec.primal_dual import Infeasible, solve

from . import oracles

S, A, T = 0, 1, 2
SA, AT, ST = 0, 1, 2


@pytest.fixture
def triangle():
    return Multigraph.build(3, [(S, A, 1), (A, T, 1), (S, T, 3)])


@pytest.mark.parametrize("method", ["bnb", "enumerate"])
def test_optimal_cover_examples(triangle, method):
    res = optimal_cover(triangle, STPath(S, T), method=method)
    assert res.optimum_cost == 2 and res.witness_edges == (SA, AT)
    empty = optimal_cover(triangle, SteinerForest([]), method=method)
    assert empty.optimum_cost == 0 and empty.witness_edges == ()
    star = Multigraph.build(3, [(0, 1, 1), (0, 2, 2)])
    res = optimal_cover(star, KCF(2), method=method)
    assert res.optimum_cost == 3 and res.witness_edges == (0, 1)


@pytest.mark.parametrize("method", ["bnb", "enumerate"])
def test_optimal_cover_infeasible(method):
    with pytest.raises(Infeasible):
        optimal_cover(Multigraph.build(3, [(0, 1)]), STPath(0, 2), method=method)


def test_tie_break_is_lexicographic():
    # two parallel s-t edges of equal cost: the lower id wins
    g = Multigraph.build(2, [(0, 1, 4), (0, 1, 4)])
    for method in ("bnb", "enumerate"):
        assert optimal_cover(g, STPath(0, 1), method=method).witness_edges == (0,)


def test_edge_limit():
    g = Multigraph.build(2, [(0, 1)] * (EXACT_EDGE_LIMIT + 1))
    with pytest.raises(TooManyEdges):
        optimal_cover(g, STPath(0, 1))


def test_is_minimal_cover_examples(triangle):
    assert is_minimal_cover(triangle, STPath(S, T), [SA, AT])
    assert not is_minimal_cover(triangle, STPath(S, T), [SA, AT, ST])
    assert not is_minimal_cover(triangle, STPath(S, T), [SA])
    assert is_minimal_cover(triangle, SteinerForest([]), [])
    assert covers(triangle, STPath(S, T), [ST]) and not covers(triangle, STPath(S, T), [])


def test_bnb_matches_enumeration_and_brute_force():
    for trial in range(80):
        rng = make_rng("exact", trial)
        n = rng.randint(3, 7)
        g = random_connected_graph(rng, n, rng.randint(n - 1, 9))
        kinds = rng.sample(KINDS, rng.randint(1, 2))
        specs = [random_family(rng, k, n) for k in kinds]
        spec = specs[0] if len(specs) == 1 else Union(specs)
        bnb = optimal_cover(g, spec, method="bnb")
        enum = optimal_cover(g, spec, method="enumerate")
        assert bnb == enum
        assert bnb.optimum_cost == oracles.optimum(spec, g)
        assert oracles.covers(spec, g, bnb.witness_edges)
        assert bnb.optimum_cost <= solve(g, spec).cost


def test_bnb_matches_enumeration_at_sixteen_edges():
    for trial in range(6):
        rng = make_rng("exact16", trial)
        g = random_connected_graph(rng, 7, 16)
        spec = random_family(rng, rng.choice(KINDS), 7)
        assert optimal_cover(g, spec, method="bnb") == optimal_cover(g, spec, method="enumerate")
