"""JSON instance files and family-spec serialization.

Instance document::

    {
      "nodes": 3,
      "labels": ["s", "a", "t"],              # optional, for display only
      "edges": [[0, 1, "1"], [1, 2, "1"], [0, 2, "3"]],
      "family": {"type": "st_path", "s": 0, "t": 2}
    }

Costs are exact: integers or strings such as ``"3"``, ``"2.5"``, ``"7/2"``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any

from .families import (
    GP2P,
    KCF,
    SNA,
    TKCF,
    Explicit,
    FamilySpec,
    InvalidSpec,
    STPath,
    SteinerForest,
    TJoin,
    Union,
)
from .graph import GraphError, Multigraph, NodeSet
from .primal_dual import IterationRecord, SolveResult


class ParseError(ValueError):
    """Malformed instance document; ``where`` is a JSON-path-like location."""

    def __init__(self, where: str, message: str):
        super().__init__(f"{where}: {message}")
        self.where = where


def parse_cost(value: Any, where: str = "cost") -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise ParseError(where, f"cost must be an integer or a string, got {value!r}")
    if isinstance(value, int):
        cost = Fraction(value)
    elif isinstance(value, str):
        try:
            cost = Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise ParseError(where, f"cannot parse cost {value!r}") from None
    else:
        raise ParseError(where, f"cost must be an integer or a string, got {value!r}")
    if cost < 0:
        raise ParseError(where, "cost must be nonnegative")
    return cost


def format_fraction(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _int(value: Any, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(where, f"expected an integer, got {value!r}")
    return value


def _int_list(value: Any, where: str) -> list[int]:
    if not isinstance(value, list):
        raise ParseError(where, "expected a list of integers")
    return [_int(x, f"{where}[{i}]") for i, x in enumerate(value)]


def _edge_pairs(value: Any, where: str) -> list[tuple[int, int]]:
    if not isinstance(value, list):
        raise ParseError(where, "expected a list of node pairs")
    out = []
    for i, item in enumerate(value):
        pair = _int_list(item, f"{where}[{i}]")
        if len(pair) != 2:
            raise ParseError(f"{where}[{i}]", "expected exactly two nodes")
        out.append((pair[0], pair[1]))
    return out


def _require(doc: dict, key: str, where: str) -> Any:
    if key not in doc:
        raise ParseError(where, f"missing field {key!r}")
    return doc[key]


def spec_from_json(doc: Any, n: int, where: str = "family") -> FamilySpec:
    if not isinstance(doc, dict):
        raise ParseError(where, "family must be an object")
    kind = _require(doc, "type", where)
    if kind == "steiner_forest":
        raw = _require(doc, "parts", where)
        if not isinstance(raw, list):
            raise ParseError(f"{where}.parts", "expected a list of node lists")
        spec: FamilySpec = SteinerForest(
            [_int_list(p, f"{where}.parts[{i}]") for i, p in enumerate(raw)]
        )
    elif kind == "t_join":
        spec = TJoin(_int_list(_require(doc, "terminals", where), f"{where}.terminals"))
    elif kind == "gp2p":
        spec = GP2P(_int_list(_require(doc, "charges", where), f"{where}.charges"))
    elif kind == "kcf":
        spec = KCF(_int(_require(doc, "k", where), f"{where}.k"))
    elif kind == "tkcf":
        spec = TKCF(
            _int_list(_require(doc, "terminals", where), f"{where}.terminals"),
            _int(_require(doc, "k", where), f"{where}.k"),
        )
    elif kind == "sna":
        base = _edge_pairs(_require(doc, "base_edges", where), f"{where}.base_edges")
        demands = _edge_pairs(_require(doc, "demands", where), f"{where}.demands")
        try:
            spec = SNA(Multigraph.build(n, base), demands)
        except GraphError as exc:
            raise ParseError(f"{where}.base_edges", str(exc)) from None
    elif kind == "st_path":
        spec = STPath(_int(_require(doc, "s", where), f"{where}.s"), _int(_require(doc, "t", where), f"{where}.t"))
    elif kind == "explicit":
        raw = _require(doc, "members", where)
        if not isinstance(raw, list):
            raise ParseError(f"{where}.members", "expected a list of node lists")
        members = []
        for i, m in enumerate(raw):
            nodes = _int_list(m, f"{where}.members[{i}]")
            try:
                members.append(NodeSet.of(n, nodes))
            except GraphError as exc:
                raise ParseError(f"{where}.members[{i}]", str(exc)) from None
        spec = Explicit(members)
    elif kind == "union":
        raw = _require(doc, "specs", where)
        if not isinstance(raw, list):
            raise ParseError(f"{where}.specs", "expected a list of families")
        spec = Union([spec_from_json(s, n, f"{where}.specs[{i}]") for i, s in enumerate(raw)])
    else:
        raise ParseError(f"{where}.type", f"unknown family type {kind!r}")
    if kind != "union":
        try:
            spec.validate(n)
        except InvalidSpec as exc:
            raise ParseError(where, str(exc)) from None
    return spec


def spec_to_json(spec: FamilySpec) -> dict:
    if isinstance(spec, SteinerForest):
        return {"type": spec.kind, "parts": [list(p) for p in spec.parts]}
    if isinstance(spec, TJoin):
        return {"type": spec.kind, "terminals": list(spec.terminals)}
    if isinstance(spec, GP2P):
        return {"type": spec.kind, "charges": list(spec.charges)}
    if isinstance(spec, KCF):
        return {"type": spec.kind, "k": spec.k}
    if isinstance(spec, TKCF):
        return {"type": spec.kind, "terminals": list(spec.terminals), "k": spec.k}
    if isinstance(spec, SNA):
        return {
            "type": spec.kind,
            "base_edges": [[e.u, e.v] for e in spec.base.edges],
            "demands": [list(d) for d in spec.demands],
        }
    if isinstance(spec, STPath):
        return {"type": spec.kind, "s": spec.s, "t": spec.t}
    if isinstance(spec, Explicit):
        return {"type": spec.kind, "members": [sorted(m) for m in spec.members]}
    if isinstance(spec, Union):
        return {"type": spec.kind, "specs": [spec_to_json(s) for s in spec.specs]}
    raise TypeError(f"cannot serialize {type(spec).__name__}")


@dataclass(frozen=True)
class Instance:
    graph: Multigraph
    family: FamilySpec
    labels: tuple[str, ...] | None = None

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels else str(v)

    def format_set(self, s: NodeSet | int) -> str:
        nodes = s if isinstance(s, NodeSet) else NodeSet(s, self.graph.n)
        return "{" + ",".join(self.label(v) for v in nodes) + "}"

    def format_edge(self, eid: int) -> str:
        e = self.graph.edges[eid]
        return f"{self.label(e.u)}{'' if self.labels else '-'}{self.label(e.v)}"


def instance_from_json(doc: Any) -> Instance:
    if not isinstance(doc, dict):
        raise ParseError("$", "instance must be a JSON object")
    n = _int(_require(doc, "nodes", "$"), "nodes")
    if n < 1:
        raise ParseError("nodes", "need at least one node")
    raw_edges = _require(doc, "edges", "$")
    if not isinstance(raw_edges, list):
        raise ParseError("edges", "expected a list of [u, v, cost]")
    triples = []
    for i, item in enumerate(raw_edges):
        where = f"edges[{i}]"
        if not isinstance(item, list) or len(item) != 3:
            raise ParseError(where, "expected [u, v, cost]")
        u, v = _int(item[0], f"{where}[0]"), _int(item[1], f"{where}[1]")
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(where, f"endpoint outside [0, {n})")
        if u == v:
            raise ParseError(where, "self-loops are not allowed")
        triples.append((u, v, parse_cost(item[2], f"{where}[2]")))
    graph = Multigraph.build(n, triples)
    labels = doc.get("labels")
    if labels is not None:
        if not isinstance(labels, list) or len(labels) != n or not all(isinstance(x, str) for x in labels):
            raise ParseError("labels", f"expected {n} strings")
        labels = tuple(labels)
    family = spec_from_json(_require(doc, "family", "$"), n)
    return Instance(graph, family, labels)


def instance_to_json(inst: Instance) -> dict:
    doc: dict[str, Any] = {"nodes": inst.graph.n}
    if inst.labels:
        doc["labels"] = list(inst.labels)
    doc["edges"] = [[e.u, e.v, format_fraction(e.cost)] for e in inst.graph.edges]
    doc["family"] = spec_to_json(inst.family)
    return doc


def load_instance(path: str | Path) -> Instance:
    text = Path(path).read_text()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno} column {exc.colno}", exc.msg) from None
    return instance_from_json(doc)


def dump_instance(inst: Instance, path: str | Path) -> None:
    Path(path).write_text(json.dumps(instance_to_json(inst), indent=2) + "\n")


def result_to_json(result: SolveResult) -> dict:
    return {
        "added": list(result.added),
        "final_edges": list(result.final_edges),
        "cost": format_fraction(result.cost),
        "dual_total": format_fraction(result.dual_total),
        "duals": [
            {"set": sorted(s), "y": format_fraction(y)} for s, y in sorted(result.duals.items())
        ],
        "history": [
            {
                "cores": [sorted(c) for c in rec.cores],
                "epsilon": format_fraction(rec.epsilon),
                "tight_edge": rec.tight_edge,
            }
            for rec in result.history
        ],
    }


def result_from_json(doc: Any, n: int) -> SolveResult:
    """Inverse of ``result_to_json``; lets externally produced traces be certified."""
    if not isinstance(doc, dict):
        raise ParseError("$", "result must be a JSON object")
    try:
        history = [
            IterationRecord(
                tuple(NodeSet.of(n, c) for c in rec["cores"]),
                parse_cost(rec["epsilon"], f"history[{i}].epsilon"),
                _int(rec["tight_edge"], f"history[{i}].tight_edge"),
            )
            for i, rec in enumerate(_require(doc, "history", "$"))
        ]
        duals = {
            NodeSet.of(n, d["set"]): parse_cost(d["y"], f"duals[{i}].y")
            for i, d in enumerate(_require(doc, "duals", "$"))
        }
        return SolveResult(
            added=_int_list(_require(doc, "added", "$"), "added"),
            final_edges=_int_list(_require(doc, "final_edges", "$"), "final_edges"),
            cost=parse_cost(_require(doc, "cost", "$"), "cost"),
            dual_total=parse_cost(_require(doc, "dual_total", "$"), "dual_total"),
            duals=duals,
            history=history,
        )
    except (KeyError, TypeError, GraphError) as exc:
        raise ParseError("$", f"malformed result: {exc}") from None
