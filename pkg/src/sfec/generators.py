"""Seeded random instances: connected cost graphs and family specs per kind."""

from __future__ import annotations

import random
from typing import Callable

from .families import GP2P, KCF, SNA, TKCF, FamilySpec, STPath, SteinerForest, TJoin
from .graph import Multigraph

KINDS = ("steiner_forest", "t_join", "gp2p", "kcf", "tkcf", "sna", "st_path")


def make_rng(*parts: object) -> random.Random:
    """Independent stream per (seed, label, trial, ...) tuple."""
    return random.Random(":".join(map(str, parts)))


def random_connected_graph(
    rng: random.Random, n: int, m: int, cost_range: tuple[int, int] = (1, 10)
) -> Multigraph:
    """Random spanning tree plus ``m - n + 1`` extra (possibly parallel) edges."""
    if m < n - 1:
        raise ValueError("not enough edges to connect the graph")
    order = list(range(n))
    rng.shuffle(order)
    pairs = [(order[i], order[rng.randrange(i)]) for i in range(1, n)]
    while len(pairs) < m:
        u, v = rng.sample(range(n), 2)
        pairs.append((u, v))
    rng.shuffle(pairs)
    lo, hi = cost_range
    return Multigraph.build(n, [(u, v, rng.randint(lo, hi)) for u, v in pairs])


def _subset(rng: random.Random, n: int, size: int) -> list[int]:
    return sorted(rng.sample(range(n), size))


def random_steiner_forest(rng: random.Random, n: int) -> SteinerForest:
    nodes = list(range(n))
    rng.shuffle(nodes)
    parts = []
    budget = rng.randint(2, n)
    pos = 0
    while pos + 2 <= budget and len(parts) < 3:
        size = rng.randint(2, max(2, min(4, budget - pos)))
        parts.append(sorted(nodes[pos : pos + size]))
        pos += size
    return SteinerForest(parts)


def random_t_join(rng: random.Random, n: int) -> TJoin:
    size = 2 * rng.randint(1, n // 2)
    return TJoin(_subset(rng, n, size))


def random_gp2p(rng: random.Random, n: int) -> GP2P:
    while True:
        charges = [rng.choice((-2, -1, 0, 0, 1, 2)) for _ in range(n - 1)]
        charges.append(-sum(charges))
        if any(charges):
            return GP2P(charges)


def random_kcf(rng: random.Random, n: int) -> KCF:
    return KCF(rng.randint(2, min(n, 4)))


def random_tkcf(rng: random.Random, n: int) -> TKCF:
    size = rng.randint(2, n)
    k = rng.randint(2, min(size, 4))
    return TKCF(_subset(rng, n, size), k)


def random_sna(rng: random.Random, n: int) -> SNA:
    density = rng.choice((0.2, 0.35, 0.5))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < density]
    if pairs and rng.random() < 0.3:
        pairs.append(rng.choice(pairs))
    base = Multigraph.build(n, pairs)
    demands = [tuple(rng.sample(range(n), 2)) for _ in range(rng.randint(1, 2))]
    return SNA(base, demands)


def random_st_path(rng: random.Random, n: int) -> STPath:
    s, t = rng.sample(range(n), 2)
    return STPath(s, t)


GENERATORS: dict[str, Callable[[random.Random, int], FamilySpec]] = {
    "steiner_forest": random_steiner_forest,
    "t_join": random_t_join,
    "gp2p": random_gp2p,
    "kcf": random_kcf,
    "tkcf": random_tkcf,
    "sna": random_sna,
    "st_path": random_st_path,
}


def random_family(rng: random.Random, kind: str, n: int) -> FamilySpec:
    try:
        gen = GENERATORS[kind]
    except KeyError:
        raise ValueError(f"no generator for family kind {kind!r}") from None
    spec = gen(rng, n)
    spec.validate(n)
    return spec
