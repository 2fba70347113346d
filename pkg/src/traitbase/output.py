"""Rendering of engine results to JSON-ready dicts and reviewer-facing text.

The JSON side keeps a fixed key order and sorted lists so that the same
inputs always produce the same bytes; proof steps use the stable field
names ``derived``, ``theorem``, ``mode``, ``supports``. The text side spells
out property names next to uids so traces read like prose.
"""

from __future__ import annotations

from typing import Any, Iterable, Mapping

from .bundle import Bundle
from .deduction import (
    Closure,
    Contradiction,
    CounterexampleReport,
    ProofStep,
    RedundancyResult,
)
from .errors import Diagnostic
from .ids import EntityId
from .logic import Literal, Query, render_query
from .records import Citation, Property, Space, Theorem, TraitAssertion
from .search import SearchResult, Verdict

Json = dict[str, Any]


def _name_of(prop: EntityId, bundle: Bundle | None) -> str | None:
    if bundle is not None and prop in bundle.properties:
        return bundle.properties[prop].name
    return None


def literal_json(literal: Literal, bundle: Bundle | None = None) -> Json:
    out: Json = {"property": str(literal.property), "value": literal.value}
    name = _name_of(literal.property, bundle)
    if name is not None:
        out["name"] = name
    return out


def step_json(step: ProofStep, bundle: Bundle | None = None) -> Json:
    return {
        "derived": literal_json(step.derived, bundle),
        "theorem": str(step.theorem),
        "mode": step.mode,
        "supports": [literal_json(s, bundle) for s in step.supports],
    }


def trace_json(steps: Iterable[ProofStep], bundle: Bundle | None = None) -> list[Json]:
    return [step_json(step, bundle) for step in steps]


def citation_json(ref: Citation) -> Json:
    out: Json = {"scheme": ref.scheme, "key": ref.key}
    if ref.name is not None:
        out["name"] = ref.name
    return out


def property_json(record: Property) -> Json:
    return {
        "uid": str(record.uid),
        "name": record.name,
        "aliases": list(record.aliases),
        "refs": [citation_json(r) for r in record.refs],
        "description": record.description,
    }


def space_json(record: Space) -> Json:
    return {
        "uid": str(record.uid),
        "name": record.name,
        "aliases": list(record.aliases),
        "refs": [citation_json(r) for r in record.refs],
        "description": record.description,
    }


def theorem_json(record: Theorem, bundle: Bundle | None = None) -> Json:
    concl_prop, concl_value = record.conclusion
    return {
        "uid": str(record.uid),
        "if": {str(p): v for p, v in record.premises},
        "then": {str(concl_prop): concl_value},
        "premises": [
            literal_json(Literal(p, v), bundle) for p, v in record.premises
        ],
        "conclusion": literal_json(Literal(concl_prop, concl_value), bundle),
        "refs": [citation_json(r) for r in record.refs],
        "description": record.description,
    }


def closure_json(closure: Closure, bundle: Bundle | None = None) -> Json:
    assignment = {str(p): closure.assignment[p] for p in sorted(closure.assignment)}
    return {
        "space": str(closure.space) if closure.space is not None else None,
        "assignment": assignment,
        "asserted": [str(p) for p in sorted(closure.asserted)],
        "derived": trace_json(
            (closure.steps[p] for p in closure.order), bundle
        ),
    }


def contradiction_json(conflict: Contradiction, bundle: Bundle | None = None) -> Json:
    def side(literal: Literal, steps: tuple[ProofStep, ...]) -> Json:
        origin = "derived" if steps else "assumed"
        return {
            "literal": literal_json(literal, bundle),
            "origin": origin,
            "steps": trace_json(steps, bundle),
        }

    return {
        "space": str(conflict.space) if conflict.space is not None else None,
        "property": str(conflict.property),
        "conflict": [
            side(conflict.literal_a, conflict.trace_a),
            side(conflict.literal_b, conflict.trace_b),
        ],
        "theorems": [str(t) for t in conflict.theorems],
        "steps": trace_json(conflict.merged_trace(), bundle),
    }


def verdict_json(verdict: Verdict, bundle: Bundle | None = None) -> Json:
    out: Json = {"kind": verdict.kind}
    if verdict.refuting is not None:
        out["refuting"] = literal_json(verdict.refuting, bundle)
        out["provenance"] = "asserted" if verdict.refuting_asserted else "derived"
        if verdict.refuting_steps:
            out["steps"] = trace_json(verdict.refuting_steps, bundle)
    if verdict.undetermined:
        out["undetermined"] = [str(p) for p in verdict.undetermined]
    return out


def search_json(result: SearchResult, bundle: Bundle) -> Json:
    impossibility = None
    if result.impossibility is not None:
        impossibility = contradiction_json(result.impossibility.contradiction, bundle)
        impossibility.pop("space")
        impossibility["query"] = [
            literal_json(lit, bundle) for lit in result.query.literals
        ]
    return {
        "query": render_query(result.query, bundle),
        "literals": [literal_json(lit, bundle) for lit in result.query.literals],
        "matches": [
            {"uid": str(space), "name": bundle.spaces[space].name}
            for space in result.matches
        ],
        "verdicts": {
            str(space): verdict_json(v, bundle) for space, v in result.verdicts.items()
        },
        "impossibility": impossibility,
    }


def redundancy_json(
    result: RedundancyResult,
    report: CounterexampleReport | None,
    bundle: Bundle,
) -> Json:
    """Combined candidate-theorem verdict: a redundancy proof, counterexample
    witnesses, or not-derivable with the undecided spaces."""
    from .deduction import NOT_DERIVABLE, PREMISES_INCONSISTENT, REDUNDANT

    def undecided_json(report: CounterexampleReport) -> list[Json]:
        return [
            {
                "space": str(u.space),
                "name": bundle.spaces[u.space].name,
                "missing": [str(p) for p in u.missing],
            }
            for u in report.undecided
        ]

    if result.verdict == REDUNDANT:
        return {
            "verdict": "redundant",
            "proof": trace_json(result.proof, bundle),
            "theorems": [str(t) for t in result.theorems],
        }
    if result.verdict == PREMISES_INCONSISTENT:
        assert result.contradiction is not None
        return {
            "verdict": "premises_inconsistent",
            "contradiction": contradiction_json(result.contradiction, bundle),
        }
    refutation = None
    if result.verdict != NOT_DERIVABLE:
        refutation = {
            "proof": trace_json(result.proof, bundle),
            "theorems": [str(t) for t in result.theorems],
        }
    witnesses = []
    undecided: list[Json] = []
    if report is not None:
        witnesses = [
            {
                "space": str(w.space),
                "name": bundle.spaces[w.space].name,
                "refuting": literal_json(w.refuting, bundle),
                "provenance": "asserted" if w.asserted else "derived",
            }
            for w in report.witnesses
        ]
        undecided = undecided_json(report)
    if refutation is not None or witnesses:
        return {
            "verdict": "refuted",
            "refutation": refutation,
            "counterexamples": witnesses,
            "undecided": undecided,
        }
    return {"verdict": "not_derivable", "undecided": undecided}


def diagnostics_json(diagnostics: Iterable[Diagnostic]) -> list[Json]:
    return [
        {
            "path": d.path,
            "line": d.line,
            "field": d.field,
            "code": d.code,
            "message": d.message,
        }
        for d in diagnostics
    ]


def trait_rows_json(
    space: EntityId,
    closure: Closure,
    bundle: Bundle,
) -> Json:
    """Assignment plus per-trait provenance for one space, ascending by
    property uid, with the still-unknown properties listed separately."""
    rows = []
    for prop in sorted(closure.assignment):
        row: Json = {
            "property": str(prop),
            "name": _name_of(prop, bundle) or str(prop),
            "value": closure.assignment[prop],
        }
        if prop in closure.asserted:
            assertion = bundle.assertions.get((space, prop))
            row["provenance"] = "asserted"
            row["refs"] = [citation_json(r) for r in assertion.refs] if assertion else []
        else:
            row["provenance"] = "derived"
        rows.append(row)
    unknown = [
        {"property": str(p), "name": bundle.properties[p].name}
        for p in sorted(bundle.properties)
        if p not in closure.assignment
    ]
    return {"space": str(space), "traits": rows, "unknown": unknown}


# --- Text rendering ----------------------------------------------------------


def display_name(prop: EntityId, bundle: Bundle | None) -> str:
    name = _name_of(prop, bundle)
    return f"{name} ({prop})" if name is not None else str(prop)


def literal_text(literal: Literal, bundle: Bundle | None = None) -> str:
    return f"{display_name(literal.property, bundle)}={'true' if literal.value else 'false'}"


def implication_text(theorem: Theorem, bundle: Bundle | None = None) -> str:
    left = " + ".join(
        literal_text(Literal(p, v), bundle) for p, v in theorem.premises
    )
    right = literal_text(Literal(*theorem.conclusion), bundle)
    return f"{left} => {right}"


def step_text(step: ProofStep, bundle: Bundle | None = None) -> str:
    supports = ", ".join(literal_text(s, bundle) for s in step.supports)
    return (
        f"{literal_text(step.derived, bundle)}  "
        f"[{step.theorem} {step.mode}; from {supports}]"
    )


def trace_text(
    steps: Iterable[ProofStep],
    bundle: Bundle | None = None,
    asserted: Iterable[Literal] = (),
) -> list[str]:
    lines = [f"{literal_text(lit, bundle)}  [asserted]" for lit in asserted]
    lines.extend(step_text(step, bundle) for step in steps)
    return lines


def grounding_literals(steps: Iterable[ProofStep]) -> tuple[Literal, ...]:
    """The non-derived supports a trace stands on, in first-use order."""
    steps = list(steps)
    derived = {step.derived.property for step in steps}
    seen: dict[Literal, None] = {}
    for step in steps:
        for support in step.supports:
            if support.property not in derived:
                seen.setdefault(support, None)
    return tuple(seen)


def contradiction_text(
    conflict: Contradiction, bundle: Bundle | None = None
) -> list[str]:
    lines = [
        f"contradiction on {display_name(conflict.property, bundle)}: "
        f"{literal_text(conflict.literal_a, bundle)} vs "
        f"{literal_text(conflict.literal_b, bundle)}"
    ]
    for label, literal, trace in (
        ("first", conflict.literal_a, conflict.trace_a),
        ("second", conflict.literal_b, conflict.trace_b),
    ):
        if trace:
            lines.append(f"  {label} side ({literal_text(literal, bundle)}):")
            grounding = grounding_literals(trace)
            lines.extend(
                "    " + line for line in trace_text(trace, bundle, asserted=grounding)
            )
        else:
            lines.append(
                f"  {label} side: {literal_text(literal, bundle)} is asserted/assumed"
            )
    return lines
