"""Command-line entry point: ``sfec {solve,exact,verify,classify,suite}``.

Exit codes: 0 success, 1 parse error, 2 infeasible instance, 3 enumeration
limit exceeded, 4 a verification check or table cell failed.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from .certify import certify
from .exact import TooManyEdges, optimal_cover
from .families import ENUMERATION_LIMIT, EnumerationLimitExceeded, InvalidSpec
from .family_props import FLAGS, ExplicitFamily, GroundSetTooLarge, classify, implication_audit
from .instance import (
    Instance,
    ParseError,
    format_fraction,
    load_instance,
    result_from_json,
    result_to_json,
)
from .primal_dual import Infeasible, solve
from .suite import iter_suite

EXIT_OK, EXIT_PARSE, EXIT_INFEASIBLE, EXIT_LIMIT, EXIT_CHECK_FAILED = 0, 1, 2, 3, 4


def _emit(doc: dict) -> None:
    print(json.dumps(doc, indent=2))


def _edges(inst: Instance, ids: Sequence[int]) -> str:
    return ", ".join(f"{inst.format_edge(i)}#{i}" for i in ids) or "(none)"


def cmd_solve(args: argparse.Namespace) -> int:
    inst = load_instance(args.path)
    result = solve(inst.graph, inst.family)
    if args.json:
        _emit(result_to_json(result))
        return EXIT_OK
    print(f"edges: {_edges(inst, result.final_edges)}")
    print(f"cost: {format_fraction(result.cost)}")
    print(f"dual: {format_fraction(result.dual_total)}")
    print(f"bound: cost <= 2 * dual = {format_fraction(2 * result.dual_total)}")
    if args.trace:
        for i, rec in enumerate(result.history):
            cores = " ".join(inst.format_set(c) for c in rec.cores)
            print(
                f"  iter {i}: cores {cores}  eps={format_fraction(rec.epsilon)}"
                f"  add {inst.format_edge(rec.tight_edge)}#{rec.tight_edge}"
            )
        dropped = [e for e in result.added if e not in set(result.final_edges)]
        print(f"  reverse delete dropped: {_edges(inst, dropped)}")
    return EXIT_OK


def cmd_exact(args: argparse.Namespace) -> int:
    inst = load_instance(args.path)
    res = optimal_cover(inst.graph, inst.family, method=args.method)
    if args.json:
        _emit({"optimum": format_fraction(res.optimum_cost), "edges": list(res.witness_edges)})
    else:
        print(format_fraction(res.optimum_cost))
        print(f"edges: {_edges(inst, res.witness_edges)}")
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    inst = load_instance(args.path)
    if args.result:
        doc = json.loads(Path(args.result).read_text())
        result = result_from_json(doc, inst.graph.n)
    else:
        result = solve(inst.graph, inst.family)
    cert = certify(inst.graph, inst.family, result)
    if args.json:
        _emit(cert.to_json())
    else:
        width = max(len(name) for name in cert.checks)
        for name, outcome in cert.checks.items():
            line = f"{name:<{width}}  {'pass' if outcome.passed else 'FAIL'}"
            if not outcome.passed and outcome.detail is not None:
                line += f"  {outcome.detail}"
            print(line)
        print(f"overall: {'pass' if cert.passed else 'FAIL'}")
    return EXIT_OK if cert.passed else EXIT_CHECK_FAILED


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def cmd_classify(args: argparse.Namespace) -> int:
    inst = load_instance(args.path)
    fam = ExplicitFamily.from_spec(inst.family, inst.graph.n)
    report = classify(fam)
    if args.json:
        doc = report.to_json()
        doc["implications_hold"] = implication_audit(report)
        doc["members"] = len(fam.members)
        _emit(doc)
        return EXIT_OK

    def witness(name: str) -> str:
        a, b = report.witnesses[name]
        return f" (witness A={inst.format_set(a)}, B={inst.format_set(b)})"

    line = f"semi-uncrossable: {_yes(report.semi_uncrossable)}"
    if not report.semi_uncrossable:
        line += witness("semi_uncrossable")
    line += f", uncrossable: {_yes(report.uncrossable)}"
    if not report.uncrossable:
        line += witness("uncrossable")
    print(line)
    for name in FLAGS:
        if name in ("uncrossable", "semi_uncrossable"):
            continue
        text = f"{name.replace('_', '-')}: {_yes(getattr(report, name))}"
        if name in report.witnesses:
            text += witness(name)
        print(text)
    print(f"members: {len(fam.members)}")
    return EXIT_OK


def cmd_suite(args: argparse.Namespace) -> int:
    cells = []
    all_ok = True
    for cell in iter_suite(seed=args.seed, trials=args.trials, max_nodes=args.max_nodes):
        cells.append(cell)
        all_ok &= cell.ok
        if not args.json:
            ratio = "" if cell.worst_ratio is None else f"  worst ratio {format_fraction(cell.worst_ratio)}"
            print(
                f"{cell.row:>14} x {cell.column:<14} {cell.expected:>2}  {cell.verdict.status:<24}"
                f" {'ok' if cell.ok else 'MISMATCH'}{ratio}"
            )
    if args.json:
        _emit({"seed": args.seed, "trials": args.trials, "cells": [c.to_json() for c in cells], "all_match": all_ok})
    else:
        worst = max((c.worst_ratio for c in cells if c.worst_ratio is not None), default=None)
        print(f"worst ratio over positive cells: {format_fraction(worst) if worst is not None else '-'}")
        print(f"all cells match: {'yes' if all_ok else 'no'}")
    return EXIT_OK if all_ok else EXIT_CHECK_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sfec", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="run the primal-dual algorithm")
    p.add_argument("path")
    p.add_argument("--trace", action="store_true", help="print the iteration history")
    p.add_argument("--json", action="store_true", help="emit the full result as JSON")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("exact", help="brute-force optimum")
    p.add_argument("path")
    p.add_argument("--method", choices=("bnb", "enumerate"), default="bnb")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("verify", help="solve (or load a result) and run every certificate check")
    p.add_argument("path")
    p.add_argument("--result", help="certify this result JSON instead of solving")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("classify", help="classify the instance's family")
    p.add_argument("path")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("suite", help="randomized table audit")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--max-nodes", type=int, default=8)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_suite)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, InvalidSpec, json.JSONDecodeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except Infeasible as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (EnumerationLimitExceeded, GroundSetTooLarge, TooManyEdges) as exc:
        print(f"limit exceeded: {exc} (enumeration limit {ENUMERATION_LIMIT} nodes)", file=sys.stderr)
        return EXIT_LIMIT


if __name__ == "__main__":
    sys.exit(main())
