"""Command-line entry point.

Exit codes follow the CI contract: 0 on success, 1 when validation or
deduction finds problems, 2 on usage errors. ``--format json`` output is
stable across runs so it can be diffed or pinned in review pipelines.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Sequence

from . import output
from .bundle import Bundle, load_bundle, resolve_name
from .deduction import (
    Closure,
    Contradiction,
    PropertyAsserted,
    PropertyUnknown,
    check_redundant,
    close_bundle,
    expand_proof,
    find_counterexamples,
)
from .errors import BundleValidationError, NameResolutionError, QueryParseError
from .ids import EntityId, Kind
from .logic import Literal, compile_rules, parse_query
from .search import search

OK = 0
FINDINGS = 1
USAGE = 2


def _print_json(payload: Any) -> None:
    print(json.dumps(payload, indent=2, ensure_ascii=False))


def _load(path: str) -> Bundle:
    return load_bundle(path)


def cmd_validate(args: argparse.Namespace) -> int:
    try:
        bundle = _load(args.bundle)
    except BundleValidationError as exc:
        if args.format == "json":
            _print_json(
                {
                    "ok": False,
                    "errors": output.diagnostics_json(exc.diagnostics),
                    "contradictions": [],
                }
            )
        else:
            for diagnostic in exc.diagnostics:
                print(diagnostic.render())
            print(f"{len(exc.diagnostics)} error(s)")
        return FINDINGS
    closures = close_bundle(bundle, workers=args.workers)
    conflicts = {
        space: result
        for space, result in closures.items()
        if isinstance(result, Contradiction)
    }
    if args.format == "json":
        _print_json(
            {
                "ok": not conflicts,
                "errors": [],
                "contradictions": [
                    output.contradiction_json(c, bundle) for c in conflicts.values()
                ],
            }
        )
    else:
        if conflicts:
            for space, conflict in conflicts.items():
                print(f"space {space} ({bundle.spaces[space].name}):")
                for line in output.contradiction_text(conflict, bundle):
                    print("  " + line)
            print(f"{len(conflicts)} contradictory space(s)")
        else:
            counts = bundle.counts()
            print(
                "ok: {properties} properties, {spaces} spaces, "
                "{theorems} theorems, {assertions} traits".format(**counts)
            )
    return FINDINGS if conflicts else OK


def cmd_deduce(args: argparse.Namespace) -> int:
    try:
        bundle = _load(args.bundle)
    except BundleValidationError as exc:
        print(str(exc), file=sys.stderr)
        return FINDINGS
    closures = close_bundle(bundle, workers=args.workers)
    if args.format == "json":
        spaces = []
        for space, result in closures.items():
            if isinstance(result, Closure):
                spaces.append(output.closure_json(result, bundle))
            else:
                spaces.append(output.contradiction_json(result, bundle))
        _print_json({"spaces": spaces})
    else:
        for space, result in closures.items():
            if isinstance(result, Closure):
                derived = len(result.steps)
                asserted = len(result.asserted)
                print(f"{space}  asserted={asserted}  derived={derived}")
            else:
                print(f"{space}  CONTRADICTION on {result.property}")
    bad = any(isinstance(r, Contradiction) for r in closures.values())
    return FINDINGS if bad else OK


def cmd_search(args: argparse.Namespace) -> int:
    try:
        bundle = _load(args.bundle)
    except BundleValidationError as exc:
        print(str(exc), file=sys.stderr)
        return FINDINGS
    closures = close_bundle(bundle)
    try:
        query = parse_query(args.query, bundle)
    except QueryParseError as exc:
        message = exc.message
        if exc.suggestions:
            message += f" (did you mean: {', '.join(exc.suggestions)}?)"
        print(message, file=sys.stderr)
        return USAGE
    result = search(query, bundle, closures)
    if args.format == "json":
        _print_json(output.search_json(result, bundle))
        return OK
    if result.matches:
        for space in result.matches:
            print(f"{space}  {bundle.spaces[space].name}")
    else:
        print("no matching spaces")
    if result.impossibility is not None:
        print("nothing can satisfy this query:")
        for line in output.contradiction_text(result.impossibility.contradiction, bundle):
            print("  " + line)
    return OK


def cmd_prove(args: argparse.Namespace) -> int:
    try:
        bundle = _load(args.bundle)
    except BundleValidationError as exc:
        print(str(exc), file=sys.stderr)
        return FINDINGS
    try:
        space = resolve_name(args.space, bundle, Kind.SPACE)
        prop = resolve_name(args.property, bundle, Kind.PROPERTY)
    except NameResolutionError as exc:
        print(str(exc), file=sys.stderr)
        return FINDINGS
    closures = close_bundle(bundle)
    result = closures[space]
    if isinstance(result, Contradiction):
        print(f"space {space} is contradictory; fix the bundle first", file=sys.stderr)
        return FINDINGS
    try:
        steps = expand_proof(result, prop)
    except PropertyAsserted:
        assertion = bundle.assertions[(space, prop)]
        value = "true" if assertion.value else "false"
        print(f"{space}|{prop}={value} is asserted directly; no proof needed")
        return FINDINGS
    except PropertyUnknown:
        print(f"{space} has no known value for {prop}", file=sys.stderr)
        return FINDINGS
    if args.format == "json":
        _print_json(
            {
                "space": str(space),
                "property": str(prop),
                "value": result.assignment[prop],
                "steps": output.trace_json(steps, bundle),
            }
        )
        return OK
    grounding = output.grounding_literals(steps)
    for line in output.trace_text(steps, bundle, asserted=grounding):
        print(line)
    return OK


def _parse_literal_flag(text: str, bundle: Bundle) -> tuple[EntityId, bool]:
    name, sep, value = text.rpartition("=")
    if not sep or value.strip().lower() not in ("true", "false"):
        raise ValueError(f"expected NAME=true|false, got {text!r}")
    prop = resolve_name(name.strip(), bundle, Kind.PROPERTY)
    return prop, value.strip().lower() == "true"


def cmd_check_theorem(args: argparse.Namespace) -> int:
    try:
        bundle = _load(args.bundle)
    except BundleValidationError as exc:
        print(str(exc), file=sys.stderr)
        return FINDINGS
    try:
        premises: dict[EntityId, bool] = {}
        for part in args.premises.split(","):
            prop, value = _parse_literal_flag(part.strip(), bundle)
            premises[prop] = value
        concl_prop, concl_value = _parse_literal_flag(args.conclusion.strip(), bundle)
    except (ValueError, NameResolutionError) as exc:
        print(str(exc), file=sys.stderr)
        return USAGE
    if concl_prop in premises:
        print("conclusion property appears among premises", file=sys.stderr)
        return USAGE
    rules = compile_rules(bundle.theorems.values())
    conclusion = Literal(concl_prop, concl_value)
    verdict = check_redundant(premises, conclusion, rules)
    report = None
    if verdict.verdict in ("not_derivable", "refuted_by_theory"):
        closures = close_bundle(bundle, rules=rules)
        report = find_counterexamples(premises, conclusion, bundle, closures)
    payload = output.redundancy_json(verdict, report, bundle)
    if args.format == "json":
        _print_json(payload)
        return OK
    print(f"verdict: {payload['verdict']}")
    if payload["verdict"] == "redundant":
        print("already follows from:")
        for line in output.trace_text(
            verdict.proof, bundle, asserted=output.grounding_literals(verdict.proof)
        ):
            print("  " + line)
        for uid in verdict.theorems:
            print(f"  uses {uid}: {output.implication_text(bundle.theorems[uid], bundle)}")
    elif payload["verdict"] == "refuted":
        if payload.get("refutation"):
            print("the theory derives the opposite conclusion:")
            for line in output.trace_text(verdict.proof, bundle):
                print("  " + line)
        for witness in payload.get("counterexamples", []):
            print(f"  counterexample: {witness['space']}  {witness['name']}")
    elif payload["verdict"] == "not_derivable":
        print("not derivable by unit propagation from the current theorems")
        for undecided in payload.get("undecided", []):
            missing = ", ".join(undecided["missing"])
            print(f"  undecided: {undecided['space']} {undecided['name']} (unknown: {missing})")
    else:
        print("the premises already contradict the theorems")
    return OK


def cmd_stats(args: argparse.Namespace) -> int:
    try:
        bundle = _load(args.bundle)
    except BundleValidationError as exc:
        print(str(exc), file=sys.stderr)
        return FINDINGS
    counts = bundle.counts()
    if args.format == "json":
        _print_json(counts)
    else:
        for key, value in counts.items():
            print(f"{key}: {value}")
    return OK


def cmd_serve(args: argparse.Namespace) -> int:
    from .service import ApiConfig, serve

    config = ApiConfig(bundle_path=args.bundle, bind=args.bind, port=args.port)
    serve(config)
    return OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="traitbase",
        description="Validate, deduce over, search, and serve a trait corpus bundle.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, workers: bool = False) -> None:
        p.add_argument("--bundle", default=".", help="bundle root (directory or zip)")
        p.add_argument("--format", choices=("text", "json"), default="text")
        if workers:
            p.add_argument(
                "--workers", type=int, default=None, help="parallel per-space closure"
            )

    p = sub.add_parser("validate", help="parse, cross-check, and deduce; exit 1 on findings")
    common(p, workers=True)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("deduce", help="close every space and report derived traits")
    common(p, workers=True)
    p.set_defaults(func=cmd_deduce)

    p = sub.add_parser("search", help="evaluate a conjunctive query")
    common(p)
    p.add_argument("-q", "--query", required=True)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("prove", help="print the proof trace of a derived trait")
    common(p)
    p.add_argument("space")
    p.add_argument("property")
    p.set_defaults(func=cmd_prove)

    p = sub.add_parser("check-theorem", help="is a candidate implication new, known, or false?")
    common(p)
    p.add_argument("--if", dest="premises", required=True, metavar="P=bool[,P=bool...]")
    p.add_argument("--then", dest="conclusion", required=True, metavar="P=bool")
    p.set_defaults(func=cmd_check_theorem)

    p = sub.add_parser("stats", help="entity counts")
    common(p)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("serve", help="run the HTTP JSON API")
    p.add_argument("--bundle", default=".")
    p.add_argument("--bind", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8175)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
