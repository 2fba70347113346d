"""Query evaluation over closed bundles.

Every space gets exactly one verdict per query: it satisfies all the query
literals, refutes at least one, or is unknown on some. Missing information
is never treated as refutation; unknown spaces are the open questions the
corpus surfaces. When a query matches nothing, the engine also propagates
the query literals alone, and a contradiction there is served as a proof
that no object at all can satisfy the query.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .bundle import Bundle
from .deduction import (
    Closure,
    Contradiction,
    ProofStep,
    consistent_closures,
    expand_proof,
    propagate,
)
from .ids import EntityId
from .logic import Literal, Query, Rule, compile_rules

SATISFIES = "satisfies"
REFUTES = "refutes"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class Verdict:
    """How one space relates to one query."""

    space: EntityId
    kind: str
    refuting: Literal | None = None
    refuting_asserted: bool | None = None
    refuting_steps: tuple[ProofStep, ...] = ()
    undetermined: tuple[EntityId, ...] = ()


@dataclass(frozen=True)
class ImpossibilityProof:
    """No object can satisfy the query: its literals alone contradict the
    theorems. The trace grounds out only in query assumptions and rules."""

    query: Query
    contradiction: Contradiction

    @property
    def theorems(self) -> tuple[EntityId, ...]:
        return self.contradiction.theorems


@dataclass
class SearchResult:
    query: Query
    matches: tuple[EntityId, ...]
    verdicts: dict[EntityId, Verdict]
    impossibility: ImpossibilityProof | None


def evaluate_space(query: Query, closure: Closure) -> Verdict:
    """Verdict of one space: the first refuting literal in query order wins;
    otherwise unknowns are listed; otherwise the space satisfies."""
    assert closure.space is not None
    undetermined: list[EntityId] = []
    for literal in query.literals:
        actual = closure.value(literal.property)
        if actual is None:
            undetermined.append(literal.property)
        elif actual != literal.value:
            refuting = Literal(literal.property, actual)
            is_asserted = literal.property in closure.asserted
            steps = () if is_asserted else expand_proof(closure, literal.property)
            return Verdict(
                space=closure.space,
                kind=REFUTES,
                refuting=refuting,
                refuting_asserted=is_asserted,
                refuting_steps=steps,
            )
    if undetermined:
        return Verdict(space=closure.space, kind=UNKNOWN, undetermined=tuple(undetermined))
    return Verdict(space=closure.space, kind=SATISFIES)


def search(
    query: Query,
    bundle: Bundle,
    closures: Mapping[EntityId, Closure | Contradiction],
    rules: Sequence[Rule] | None = None,
) -> SearchResult:
    """Evaluate a query against every space and, independently, against the
    theorems alone. Matches are ordered by space uid. Refuses inconsistent
    bundles: resolve contradictions before searching."""
    consistent = consistent_closures(closures)
    verdicts = {
        space: evaluate_space(query, consistent[space]) for space in sorted(consistent)
    }
    matches = tuple(space for space, v in verdicts.items() if v.kind == SATISFIES)
    compiled = compile_rules(bundle.theorems.values()) if rules is None else rules
    propagated = propagate(query.assumptions(), compiled)
    impossibility = (
        ImpossibilityProof(query, propagated)
        if isinstance(propagated, Contradiction)
        else None
    )
    return SearchResult(
        query=query, matches=matches, verdicts=verdicts, impossibility=impossibility
    )


@dataclass(frozen=True)
class LiteralExplanation:
    """Provenance of one query literal at one space."""

    literal: Literal
    status: str  # asserted | derived | unknown | conflict
    actual: bool | None
    refs: tuple = ()
    steps: tuple[ProofStep, ...] = ()


@dataclass
class Explanation:
    space: EntityId
    verdict: Verdict
    literals: tuple[LiteralExplanation, ...]


def explain_verdict(
    space: EntityId,
    query: Query,
    bundle: Bundle,
    closures: Mapping[EntityId, Closure | Contradiction],
) -> Explanation:
    """Literal-by-literal justification of a space's verdict: citations for
    asserted values, proof traces for derived ones, and the list of
    undetermined properties."""
    if space not in closures:
        raise KeyError(f"no closure for space {space}")
    closure = closures[space]
    if not isinstance(closure, Closure):
        raise ValueError(f"space {space} is contradictory; nothing to explain")
    verdict = evaluate_space(query, closure)
    explanations = []
    for literal in query.literals:
        actual = closure.value(literal.property)
        if actual is None:
            explanations.append(
                LiteralExplanation(literal=literal, status="unknown", actual=None)
            )
            continue
        status = "conflict" if actual != literal.value else None
        if literal.property in closure.asserted:
            assertion = bundle.assertions.get((space, literal.property))
            refs = assertion.refs if assertion is not None else ()
            explanations.append(
                LiteralExplanation(
                    literal=literal,
                    status=status or "asserted",
                    actual=actual,
                    refs=refs,
                )
            )
        else:
            explanations.append(
                LiteralExplanation(
                    literal=literal,
                    status=status or "derived",
                    actual=actual,
                    steps=expand_proof(closure, literal.property),
                )
            )
    return Explanation(space=space, verdict=verdict, literals=tuple(explanations))
