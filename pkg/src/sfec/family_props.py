"""Exhaustive classification of explicit set families on small ground sets.

All checks are brute force over the member list (pair conditions) or over
all subsets of each member (monotonicity, disjointness).  Membership is a
boolean table indexed by mask, so the per-row work is vectorized.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Iterable, Literal, Union as TUnion

import numpy as np

from .families import Explicit, FamilySpec, Union, member_masks
from .generators import make_rng, random_family
from .graph import NodeSet

CLASSIFY_LIMIT = 20

FLAGS = (
    "monotone",
    "symmetric",
    "disjointness_compliable",
    "uncrossable",
    "semi_uncrossable",
    "pliable",
    "proper",
)


class GroundSetTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class ExplicitFamily:
    n: int
    members: tuple[NodeSet, ...]

    def __post_init__(self) -> None:
        uniq = tuple(dict.fromkeys(self.members))
        for m in uniq:
            if m.n != self.n:
                raise ValueError("member over a different ground set")
            if not m.is_proper():
                raise ValueError("the empty set and V are never members")
        object.__setattr__(self, "members", uniq)

    @classmethod
    def from_masks(cls, n: int, masks: Iterable[int]) -> ExplicitFamily:
        return cls(n, tuple(NodeSet(m, n) for m in masks))

    @classmethod
    def from_lists(cls, n: int, sets: Iterable[Iterable[int]]) -> ExplicitFamily:
        return cls(n, tuple(NodeSet.of(n, s) for s in sets))

    @classmethod
    def from_spec(cls, spec: FamilySpec, n: int) -> ExplicitFamily:
        """Materialize a spec; explicit lists keep their order, unions concatenate."""
        return cls(n, tuple(NodeSet(m, n) for m in _ordered_masks(spec, n)))

    @property
    def masks(self) -> list[int]:
        return [m.mask for m in self.members]

    def union(self, other: ExplicitFamily) -> ExplicitFamily:
        return ExplicitFamily(self.n, self.members + other.members)

    def complements_added(self) -> ExplicitFamily:
        return ExplicitFamily(self.n, self.members + tuple(m.complement() for m in self.members))


Witness = tuple[NodeSet, NodeSet]


def _ordered_masks(spec: FamilySpec, n: int) -> list[int]:
    if isinstance(spec, Explicit):
        return [m.mask for m in spec.members]
    if isinstance(spec, Union):
        out: list[int] = []
        for sub in spec.specs:
            out.extend(_ordered_masks(sub, n))
        return list(dict.fromkeys(out))
    return list(member_masks(spec, n))


@dataclass
class ClassReport:
    monotone: bool
    symmetric: bool
    disjointness_compliable: bool
    uncrossable: bool
    semi_uncrossable: bool
    pliable: bool
    proper: bool
    witnesses: dict[str, Witness] = field(default_factory=dict)

    def flags(self) -> dict[str, bool]:
        return {name: getattr(self, name) for name in FLAGS}

    def to_json(self) -> dict:
        return {
            "flags": self.flags(),
            "witnesses": {
                k: [sorted(a), sorted(b)] for k, (a, b) in sorted(self.witnesses.items())
            },
        }


def _table(n: int, masks: list[int]) -> np.ndarray:
    table = np.zeros(1 << n, dtype=bool)
    if masks:
        table[np.asarray(masks, dtype=np.int64)] = True
    return table


def _first_pair_failures(
    masks: list[int], table: np.ndarray, which: tuple[str, ...]
) -> dict[str, tuple[int, int]]:
    """For each pair condition, the first failing index pair ``(i, j)``, ``i < j``."""
    arr = np.asarray(masks, dtype=np.int64)
    found: dict[str, tuple[int, int]] = {}
    for i in range(len(masks) - 1):
        a = arr[i]
        b = arr[i + 1 :]
        inter = table[a & b]
        union = table[a | b]
        a_minus = table[a & ~b]
        b_minus = table[b & ~a]
        both_diffs = a_minus & b_minus
        tests = {
            "uncrossable": (inter & union) | both_diffs,
            "semi_uncrossable": (inter & (union | a_minus | b_minus)) | both_diffs,
            "pliable": (
                inter.astype(np.int8) + union + a_minus + b_minus
            ) >= 2,
        }
        for name in which:
            if name in found:
                continue
            bad = np.flatnonzero(~tests[name])
            if bad.size:
                found[name] = (i, i + 1 + int(bad[0]))
        if len(found) == len(which):
            break
    return found


def _subset_failures(n: int, masks: list[int], table: np.ndarray) -> dict[str, tuple[int, int]]:
    """First ``(S', S)`` violating monotonicity / disjointness, as masks."""
    subs = np.arange(1, 1 << n, dtype=np.int64)
    found: dict[str, tuple[int, int]] = {}
    for s in masks:
        cand = subs[((subs & ~s) == 0) & (subs != s)]
        inside = table[cand]
        if "monotone" not in found:
            bad = np.flatnonzero(~inside)
            if bad.size:
                found["monotone"] = (int(cand[bad[0]]), s)
        if "disjointness_compliable" not in found:
            bad = np.flatnonzero(~inside & ~table[s ^ cand])
            if bad.size:
                found["disjointness_compliable"] = (int(cand[bad[0]]), s)
        if len(found) == 2:
            break
    return found


def classify(f: ExplicitFamily) -> ClassReport:
    """Exhaustively test every class condition; witnesses for each failed flag.

    Pair witnesses are the first violating ``(members[i], members[j])`` in
    member-list order.
    """
    n = f.n
    if n > CLASSIFY_LIMIT:
        raise GroundSetTooLarge(f"n={n} exceeds classification limit {CLASSIFY_LIMIT}")
    masks = f.masks
    table = _table(n, masks)
    full = (1 << n) - 1

    def ns(m: int) -> NodeSet:
        return NodeSet(m, n)

    witnesses: dict[str, Witness] = {}
    for s in masks:
        if not table[full ^ s]:
            witnesses["symmetric"] = (ns(s), ns(full ^ s))
            break
    for name, (sub, s) in _subset_failures(n, masks, table).items():
        witnesses[name] = (ns(sub), ns(s))
    pair_names = ("uncrossable", "semi_uncrossable", "pliable")
    for name, (i, j) in _first_pair_failures(masks, table, pair_names).items():
        witnesses[name] = (f.members[i], f.members[j])

    symmetric = "symmetric" not in witnesses
    disjoint = "disjointness_compliable" not in witnesses
    if symmetric and not disjoint:
        witnesses["proper"] = witnesses["disjointness_compliable"]
    elif not symmetric:
        witnesses["proper"] = witnesses["symmetric"]
    return ClassReport(
        monotone="monotone" not in witnesses,
        symmetric=symmetric,
        disjointness_compliable=disjoint,
        uncrossable="uncrossable" not in witnesses,
        semi_uncrossable="semi_uncrossable" not in witnesses,
        pliable="pliable" not in witnesses,
        proper=symmetric and disjoint,
        witnesses=witnesses,
    )


def implication_audit(f: ExplicitFamily | ClassReport) -> bool:
    """Check the known implications between class flags on computed results."""
    r = f if isinstance(f, ClassReport) else classify(f)
    implies = lambda p, q: (not p) or q  # noqa: E731
    return all(
        (
            r.proper == (r.symmetric and r.disjointness_compliable),
            implies(r.symmetric and r.semi_uncrossable, r.uncrossable),
            implies(r.monotone, r.disjointness_compliable and r.uncrossable),
            implies(r.proper, r.uncrossable),
            implies(r.uncrossable, r.semi_uncrossable),
            implies(r.semi_uncrossable, r.pliable),
        )
    )


def semi_and_uncrossable(n: int, masks: list[int]) -> tuple[Witness | None, Witness | None]:
    """Fast path for search: first (semi-uncrossable, uncrossable) violating pairs."""
    table = _table(n, masks)
    found = _first_pair_failures(masks, table, ("semi_uncrossable", "uncrossable"))
    out = []
    for name in ("semi_uncrossable", "uncrossable"):
        if name in found:
            i, j = found[name]
            out.append((NodeSet(masks[i], n), NodeSet(masks[j], n)))
        else:
            out.append(None)
    return out[0], out[1]


KindArg = TUnion[str, FamilySpec, Callable[[random.Random, int], FamilySpec]]
Status = Literal["always_uncrossable", "always_semi_uncrossable", "counterexample"]


@dataclass
class CombinationVerdict:
    status: Status
    trials: int
    not_uncrossable: int
    counterexample: dict | None = None
    crossing_example: dict | None = None

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "trials": self.trials,
            "not_uncrossable": self.not_uncrossable,
            "counterexample": self.counterexample,
            "crossing_example": self.crossing_example,
        }


def _label(kind: KindArg) -> str:
    if isinstance(kind, str):
        return kind
    if isinstance(kind, FamilySpec):
        return kind.kind
    return getattr(kind, "__name__", "custom")


def _draw(kind: KindArg, rng: random.Random, n: int) -> FamilySpec:
    if isinstance(kind, str):
        return random_family(rng, kind, n)
    if isinstance(kind, FamilySpec):
        return kind
    return kind(rng, n)


def search_combination(
    kind_a: KindArg,
    kind_b: KindArg,
    trials: int = 200,
    seed: int = 1,
    *,
    min_nodes: int = 4,
    max_nodes: int = 8,
    n: int | None = None,
) -> CombinationVerdict:
    """Classify ``A | B`` over random instances and aggregate a verdict.

    A kind is a generator name, a fixed spec (then pass ``n``), or a callable
    ``(rng, n) -> spec``.  Stops at the first union that is not
    semi-uncrossable.  Deterministic for a fixed seed.
    """
    if max_nodes > 8 and n is None:
        raise ValueError("random search is bounded to n <= 8")
    label = f"{_label(kind_a)}|{_label(kind_b)}"
    not_unc = 0
    crossing = None
    for trial in range(trials):
        rng = make_rng(seed, label, trial)
        size = n if n is not None else rng.randint(min_nodes, max_nodes)
        a = _draw(kind_a, rng, size)
        b = _draw(kind_b, rng, size)
        union = Union((a, b))
        masks = list(member_masks(union, size))
        semi_bad, unc_bad = semi_and_uncrossable(size, masks)
        if semi_bad is not None:
            return CombinationVerdict(
                "counterexample",
                trial + 1,
                not_unc + 1,
                counterexample=_example(trial, size, a, b, semi_bad),
                crossing_example=crossing,
            )
        if unc_bad is not None:
            not_unc += 1
            if crossing is None:
                crossing = _example(trial, size, a, b, unc_bad)
    status: Status = "always_semi_uncrossable" if not_unc else "always_uncrossable"
    return CombinationVerdict(status, trials, not_unc, crossing_example=crossing)


def _example(trial: int, n: int, a: FamilySpec, b: FamilySpec, pair: Witness) -> dict:
    from .instance import spec_to_json

    return {
        "trial": trial,
        "nodes": n,
        "family_a": spec_to_json(a),
        "family_b": spec_to_json(b),
        "witness": [sorted(pair[0]), sorted(pair[1])],
    }
