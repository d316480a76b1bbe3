"""Set families over the node set of an instance, accessed through an oracle.

Every family kind answers three questions: is ``S`` a member, what are the
inclusion-minimal members not yet covered by an edge set ``I`` (the residual
cores), and does ``I`` cover the family.  ``enumerate_members`` gives the
brute-force view used for verification on small ground sets.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import ClassVar, Iterable, Sequence

from .graph import (
    GraphError,
    Multigraph,
    NodeSet,
    _max_flow,
    component_masks,
    crosses,
    minimal_masks,
    sorted_masks,
)

ENUMERATION_LIMIT = 16


class InvalidSpec(ValueError):
    """A family description violates its own invariants for the given ``n``."""


class EnumerationLimitExceeded(ValueError):
    pass


def _mask_of(nodes: Iterable[int]) -> int:
    m = 0
    for v in nodes:
        m |= 1 << v
    return m


def _freeze(obj, name: str, value) -> None:
    object.__setattr__(obj, name, value)


def _check_nodes(nodes: Iterable[int], n: int, what: str) -> None:
    for v in nodes:
        if not 0 <= v < n:
            raise InvalidSpec(f"{what}: node {v} outside [0, {n})")


class FamilySpec:
    """Base for declarative family descriptions.

    Subclasses implement ``contains_mask`` and ``core_masks``; masks are raw
    integers over ``[0, n)``.
    """

    kind: ClassVar[str]

    def validate(self, n: int) -> None:
        raise NotImplementedError

    def contains_mask(self, s: int, n: int) -> bool:
        raise NotImplementedError

    def core_masks(self, g: Multigraph, ids: Sequence[int]) -> list[int]:
        raise NotImplementedError


class _ComponentFamily(FamilySpec):
    """Families whose residual cores are the violated components of ``(V, I)``."""

    def core_masks(self, g: Multigraph, ids: Sequence[int]) -> list[int]:
        return [c for c in component_masks(g, ids) if self.contains_mask(c, g.n)]


@dataclass(frozen=True)
class SteinerForest(_ComponentFamily):
    parts: tuple[tuple[int, ...], ...]
    kind: ClassVar[str] = "steiner_forest"

    def __post_init__(self) -> None:
        _freeze(self, "parts", tuple(tuple(sorted(p)) for p in self.parts))

    @cached_property
    def _part_masks(self) -> tuple[int, ...]:
        return tuple(_mask_of(p) for p in self.parts)

    def validate(self, n: int) -> None:
        seen = 0
        for p in self.parts:
            _check_nodes(p, n, "steiner_forest part")
            pm = _mask_of(p)
            if pm.bit_count() < 2:
                raise InvalidSpec("steiner_forest parts need at least two nodes")
            if pm & seen:
                raise InvalidSpec("steiner_forest parts must be pairwise disjoint")
            seen |= pm

    def contains_mask(self, s: int, n: int) -> bool:
        for pm in self._part_masks:
            x = s & pm
            if x and x != pm:
                return True
        return False


@dataclass(frozen=True)
class TJoin(_ComponentFamily):
    terminals: tuple[int, ...]
    kind: ClassVar[str] = "t_join"

    def __post_init__(self) -> None:
        _freeze(self, "terminals", tuple(sorted(self.terminals)))

    @cached_property
    def _tmask(self) -> int:
        return _mask_of(self.terminals)

    def validate(self, n: int) -> None:
        _check_nodes(self.terminals, n, "t_join terminals")
        if self._tmask.bit_count() % 2:
            raise InvalidSpec("t_join needs an even number of terminals")

    def contains_mask(self, s: int, n: int) -> bool:
        return (s & self._tmask).bit_count() % 2 == 1


@dataclass(frozen=True)
class GP2P(_ComponentFamily):
    charges: tuple[int, ...]
    kind: ClassVar[str] = "gp2p"

    def __post_init__(self) -> None:
        _freeze(self, "charges", tuple(int(b) for b in self.charges))

    def validate(self, n: int) -> None:
        if len(self.charges) != n:
            raise InvalidSpec(f"gp2p needs {n} charges, got {len(self.charges)}")
        if sum(self.charges) != 0:
            raise InvalidSpec("gp2p charges must sum to zero")

    def contains_mask(self, s: int, n: int) -> bool:
        total = 0
        i = 0
        while s:
            if s & 1:
                total += self.charges[i]
            s >>= 1
            i += 1
        return total != 0


@dataclass(frozen=True)
class KCF(_ComponentFamily):
    k: int
    kind: ClassVar[str] = "kcf"

    def validate(self, n: int) -> None:
        if self.k < 2:
            raise InvalidSpec("kcf needs k >= 2")
        if self.k > n:
            raise InvalidSpec(f"kcf with k={self.k} > n={n} would contain V")

    def contains_mask(self, s: int, n: int) -> bool:
        return 1 <= s.bit_count() < self.k


@dataclass(frozen=True)
class TKCF(_ComponentFamily):
    terminals: tuple[int, ...]
    k: int
    kind: ClassVar[str] = "tkcf"

    def __post_init__(self) -> None:
        _freeze(self, "terminals", tuple(sorted(self.terminals)))

    @cached_property
    def _tmask(self) -> int:
        return _mask_of(self.terminals)

    def validate(self, n: int) -> None:
        _check_nodes(self.terminals, n, "tkcf terminals")
        if self.k < 2:
            raise InvalidSpec("tkcf needs k >= 2")
        if 1 <= self._tmask.bit_count() < self.k:
            raise InvalidSpec("tkcf with 1 <= |T| < k would contain V")

    def contains_mask(self, s: int, n: int) -> bool:
        return 1 <= (s & self._tmask).bit_count() < self.k


@dataclass(frozen=True)
class STPath(_ComponentFamily):
    s: int
    t: int
    kind: ClassVar[str] = "st_path"

    def validate(self, n: int) -> None:
        _check_nodes((self.s, self.t), n, "st_path")
        if self.s == self.t:
            raise InvalidSpec("st_path needs s != t")

    def contains_mask(self, s: int, n: int) -> bool:
        return (s >> self.s & 1) != (s >> self.t & 1)


@dataclass(frozen=True)
class SNA(FamilySpec):
    """Steiner network augmentation: sets that are tight min-cuts of the base graph."""

    base: Multigraph
    demands: tuple[tuple[int, int], ...]
    kind: ClassVar[str] = "sna"

    def __post_init__(self) -> None:
        _freeze(self, "demands", tuple((int(u), int(v)) for u, v in self.demands))

    @cached_property
    def _base_pairs(self) -> list[tuple[int, int]]:
        return [(e.u, e.v) for e in self.base.edges]

    @cached_property
    def _lambdas(self) -> tuple[int, ...]:
        return tuple(_max_flow(self.base.n, self._base_pairs, u, v)[0] for u, v in self.demands)

    def validate(self, n: int) -> None:
        if self.base.n != n:
            raise InvalidSpec("sna base graph must live on the instance node set")
        for u, v in self.demands:
            _check_nodes((u, v), n, "sna demand")
            if u == v:
                raise InvalidSpec("sna demand pair needs two distinct nodes")

    def contains_mask(self, s: int, n: int) -> bool:
        ends = self.base.end_masks
        degree = None
        for (u, v), lam in zip(self.demands, self._lambdas):
            if (s >> u & 1) == (s >> v & 1):
                continue
            if degree is None:
                degree = sum(1 for e in ends if crosses(e, s))
            if degree == lam:
                return True
        return False

    def core_masks(self, g: Multigraph, ids: Sequence[int]) -> list[int]:
        pairs = self._base_pairs + [(g.edges[i].u, g.edges[i].v) for i in ids]
        found = []
        for (u, v), lam in zip(self.demands, self._lambdas):
            value, reach_u = _max_flow(g.n, pairs, u, v)
            if value != lam:
                continue
            found.append(reach_u)
            found.append(_max_flow(g.n, pairs, v, u)[1])
        return minimal_masks(found)


@dataclass(frozen=True)
class Explicit(FamilySpec):
    members: tuple[NodeSet, ...]
    kind: ClassVar[str] = "explicit"

    def __post_init__(self) -> None:
        uniq = dict.fromkeys(self.members)
        _freeze(self, "members", tuple(uniq))

    @cached_property
    def _masks(self) -> frozenset[int]:
        return frozenset(m.mask for m in self.members)

    def validate(self, n: int) -> None:
        for m in self.members:
            if m.n != n:
                raise InvalidSpec("explicit member over a different ground set")
            if not m.is_proper():
                raise InvalidSpec("explicit family may not contain the empty set or V")

    def contains_mask(self, s: int, n: int) -> bool:
        return s in self._masks

    def core_masks(self, g: Multigraph, ids: Sequence[int]) -> list[int]:
        imask = 0
        for i in ids:
            imask |= 1 << i
        return minimal_masks(m for m in self._masks if not g.crossing_mask(m) & imask)


@dataclass(frozen=True)
class Union(FamilySpec):
    specs: tuple[FamilySpec, ...] = field(default=())
    kind: ClassVar[str] = "union"

    def __post_init__(self) -> None:
        _freeze(self, "specs", tuple(self.specs))

    def validate(self, n: int) -> None:
        for sp in self.specs:
            sp.validate(n)

    def contains_mask(self, s: int, n: int) -> bool:
        return any(sp.contains_mask(s, n) for sp in self.specs)

    def core_masks(self, g: Multigraph, ids: Sequence[int]) -> list[int]:
        found: list[int] = []
        for sp in self.specs:
            found.extend(sp.core_masks(g, ids))
        return minimal_masks(found)


def contains(spec: FamilySpec, s: NodeSet) -> bool:
    if not s.is_proper():
        raise GraphError("membership is only asked of proper nonempty sets")
    return spec.contains_mask(s.mask, s.n)


def residual_core_masks(spec: FamilySpec, g: Multigraph, edge_ids: Iterable[int]) -> list[int]:
    ids = g.check_edge_ids(edge_ids)
    return sorted_masks(spec.core_masks(g, ids))


def residual_cores(spec: FamilySpec, g: Multigraph, edge_ids: Iterable[int]) -> list[NodeSet]:
    """Inclusion-minimal members of ``{S in F : d_I(S) = 0}``, by minimum element."""
    return [NodeSet(m, g.n) for m in residual_core_masks(spec, g, edge_ids)]


def is_covered(spec: FamilySpec, g: Multigraph, edge_ids: Iterable[int]) -> bool:
    return not residual_core_masks(spec, g, edge_ids)


@lru_cache(maxsize=256)
def member_masks(spec: FamilySpec, n: int) -> tuple[int, ...]:
    """All member masks in canonical order (cached; ``n`` must be small)."""
    if n > ENUMERATION_LIMIT:
        raise EnumerationLimitExceeded(f"n={n} exceeds enumeration limit {ENUMERATION_LIMIT}")
    full = (1 << n) - 1
    return tuple(sorted_masks(s for s in range(1, full) if spec.contains_mask(s, n)))


def enumerate_members(spec: FamilySpec, g: Multigraph, limit: int = ENUMERATION_LIMIT) -> list[NodeSet]:
    if g.n > limit:
        raise EnumerationLimitExceeded(f"n={g.n} exceeds enumeration limit {limit}")
    return [NodeSet(m, g.n) for m in member_masks(spec, g.n)]


class FamilyOracle:
    """A family spec bound to one instance graph."""

    def __init__(self, spec: FamilySpec, g: Multigraph, *, validate: bool = True):
        if validate:
            spec.validate(g.n)
        self.spec = spec
        self.g = g

    def contains(self, s: NodeSet) -> bool:
        return contains(self.spec, s)

    def core_masks(self, edge_ids: Iterable[int]) -> list[int]:
        return residual_core_masks(self.spec, self.g, edge_ids)

    def residual_cores(self, edge_ids: Iterable[int]) -> list[NodeSet]:
        return residual_cores(self.spec, self.g, edge_ids)

    def is_covered(self, edge_ids: Iterable[int]) -> bool:
        return not self.core_masks(edge_ids)
