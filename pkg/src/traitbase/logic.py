"""Core logical vocabulary: literals, rules, and the query grammar.

Every theorem compiles to one forward rule plus one contrapositive rule per
premise, so a theorem with n premises yields exactly n+1 rules. All values
here are immutable and freely shareable across threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterable

from .bundle import resolve_name
from .errors import NameResolutionError, QueryParseError
from .ids import EntityId, Kind
from .records import Theorem

if TYPE_CHECKING:
    from .bundle import Bundle


@dataclass(frozen=True)
class Literal:
    """One signed property: the property either holds or fails."""

    property: EntityId
    value: bool

    def negate(self) -> Literal:
        return Literal(self.property, not self.value)

    def render(self) -> str:
        return f"{self.property}={'true' if self.value else 'false'}"


@dataclass(frozen=True)
class Rule:
    """A unit-propagation rule derived from one theorem.

    ``contrapositive`` is None for the forward rule; for index i it means
    the rule concluding the negation of premise i from the negated
    conclusion plus the remaining premises.
    """

    theorem: EntityId
    contrapositive: int | None
    premises: tuple[Literal, ...]
    conclusion: Literal

    @property
    def mode(self) -> str:
        if self.contrapositive is None:
            return "forward"
        return f"contrapositive({self.contrapositive})"


def compile_rules(theorems: Iterable[Theorem]) -> tuple[Rule, ...]:
    """Compile theorems to rules: forward first, then contrapositives in
    premise order; theorems in ascending uid order. This order is the
    deterministic scan order of the deduction engine.
    """
    rules: list[Rule] = []
    for theorem in sorted(theorems, key=lambda t: t.uid):
        premises = tuple(Literal(prop, value) for prop, value in theorem.premises)
        conclusion = Literal(*theorem.conclusion)
        rules.append(Rule(theorem.uid, None, premises, conclusion))
        for index, premise in enumerate(premises):
            kept = tuple(lit for j, lit in enumerate(premises) if j != index)
            rules.append(
                Rule(theorem.uid, index, kept + (conclusion.negate(),), premise.negate())
            )
    return tuple(rules)


@dataclass(frozen=True)
class Query:
    """A conjunction of literals, in input order.

    A property may appear at most once; the empty query matches everything.
    """

    literals: tuple[Literal, ...] = ()

    def __post_init__(self) -> None:
        seen: dict[EntityId, bool] = {}
        for literal in self.literals:
            if literal.property in seen:
                raise ValueError(f"query repeats property {literal.property}")
            seen[literal.property] = literal.value

    @property
    def is_empty(self) -> bool:
        return not self.literals

    def assumptions(self) -> dict[EntityId, bool]:
        return {lit.property: lit.value for lit in self.literals}


_NEGATION_MARKS = ("~", "!")


def parse_query(text: str, bundle: "Bundle") -> Query:
    """Parse the query grammar: terms joined by ``+``, each optionally
    prefixed ``~`` or ``!``; term bodies resolve as property uids, names,
    or aliases. Whitespace-insensitive. The empty query is valid.
    """
    stripped = text.strip()
    if not stripped:
        return Query(())
    literals: list[Literal] = []
    seen: dict[EntityId, tuple[bool, str]] = {}
    for raw_term in stripped.split("+"):
        term = raw_term.strip()
        if not term:
            raise QueryParseError("empty query term", term=raw_term.strip() or "+")
        value = True
        if term[0] in _NEGATION_MARKS:
            value = False
            term = term[1:].strip()
            if not term:
                raise QueryParseError("negation marker without a property", term=raw_term.strip())
        try:
            prop = resolve_name(term, bundle, Kind.PROPERTY)
        except NameResolutionError as exc:
            raise QueryParseError(
                f"unknown property {term!r}",
                term=term,
                suggestions=exc.suggestions,
            ) from exc
        if prop in seen:
            earlier_value, earlier_term = seen[prop]
            if earlier_value != value:
                raise QueryParseError(
                    f"query contradicts itself: {earlier_term!r} and {raw_term.strip()!r} "
                    f"both name {prop} with opposite signs",
                    term=term,
                )
            raise QueryParseError(
                f"property {prop} appears twice ({earlier_term!r} and {raw_term.strip()!r})",
                term=term,
            )
        seen[prop] = (value, raw_term.strip())
        literals.append(Literal(prop, value))
    return Query(tuple(literals))


def render_query(query: Query, bundle: "Bundle | None" = None) -> str:
    """Render a query so that parsing the result yields the query back.

    Uses display names when they survive the grammar, canonical uids
    otherwise. Negation renders as ``~``.
    """
    parts = []
    for literal in query.literals:
        name = str(literal.property)
        if bundle is not None and literal.property in bundle.properties:
            candidate = bundle.properties[literal.property].name
            if _grammar_safe(candidate):
                name = candidate
        parts.append(("~" if not literal.value else "") + name)
    return " + ".join(parts)


def _grammar_safe(name: str) -> bool:
    if name != name.strip() or not name:
        return False
    if any(mark in name for mark in ("+", "~", "!")):
        return False
    return True
