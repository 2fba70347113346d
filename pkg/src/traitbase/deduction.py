"""Unit-propagation closure with proof traces and contradiction detection.

The engine computes, per space, the least fixpoint of unit propagation over
the compiled rules: a rule fires when every premise is assigned its stated
value and the conclusion's property is still unknown. Unknown is never
treated as false. The first rule (in scan order) to reach a property fixes
its proof; later rules that would re-derive it are skipped. A rule whose
premises hold but whose conclusion contradicts the current assignment stops
propagation and yields a Contradiction carrying both proof traces.

Scan order is: rules in ascending theorem uid, forward before
contrapositives, restarted in passes until nothing changes. The
implementation is event-driven (rules are revisited only when a premise
newly becomes satisfied) but reproduces the plain pass-scan order exactly,
which pins down which proof is found when several exist.
"""

from __future__ import annotations

import heapq
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .bundle import Bundle
from .ids import EntityId
from .logic import Literal, Rule, compile_rules


@dataclass(frozen=True)
class ProofStep:
    """One rule application: the supports were all known, so derived follows."""

    derived: Literal
    theorem: EntityId
    contrapositive: int | None
    supports: tuple[Literal, ...]

    @property
    def mode(self) -> str:
        if self.contrapositive is None:
            return "forward"
        return f"contrapositive({self.contrapositive})"


@dataclass
class Closure:
    """A consistent fixpoint: assignment plus a proof step per derived value.

    ``asserted`` marks provenance: those properties came in as assumptions
    (trait assertions or query literals); everything else in the assignment
    was derived and has a step. ``order`` is the firing order, which is a
    topological order of the proof DAG.
    """

    space: EntityId | None
    assignment: dict[EntityId, bool]
    steps: dict[EntityId, ProofStep]
    asserted: frozenset[EntityId]
    order: tuple[EntityId, ...]

    def value(self, prop: EntityId) -> bool | None:
        return self.assignment.get(prop)

    @property
    def derived(self) -> tuple[EntityId, ...]:
        return self.order


@dataclass
class Contradiction:
    """Two derivations of opposite values for one property.

    Both traces ground out in the assumptions this propagation started
    from. ``trace_b`` ends with the rule application that exposed the
    conflict; ``trace_a`` is empty when the conflicting value was itself
    an assumption.
    """

    space: EntityId | None
    property: EntityId
    literal_a: Literal
    trace_a: tuple[ProofStep, ...]
    literal_b: Literal
    trace_b: tuple[ProofStep, ...]

    @property
    def theorems(self) -> tuple[EntityId, ...]:
        cited = [step.theorem for step in self.trace_a + self.trace_b]
        return tuple(dict.fromkeys(cited))

    def merged_trace(self) -> tuple[ProofStep, ...]:
        """Both traces as one replayable sequence, deduplicated."""
        merged: dict[EntityId, ProofStep] = {}
        for step in self.trace_a + self.trace_b:
            merged.setdefault(step.derived.property, step)
        # trace_b's final step targets the conflicting property, which may
        # collide with trace_a's step for it; keep both sides visible.
        out = list(merged.values())
        last = self.trace_b[-1]
        if merged.get(last.derived.property) is not last:
            out.append(last)
        return tuple(out)


class ProofError(Exception):
    """Base for proof expansion failures."""


class PropertyUnknown(ProofError):
    """The property has no value in this closure."""


class PropertyAsserted(ProofError):
    """The property is asserted, not derived; there is no proof to expand."""


class InconsistentBundleError(Exception):
    """An operation that requires consistent closures met a contradiction."""

    def __init__(self, spaces: Sequence[EntityId]) -> None:
        self.spaces = tuple(spaces)
        listed = ", ".join(str(s) for s in self.spaces)
        super().__init__(f"bundle is inconsistent on: {listed}")


class _RuleIndex:
    """Immutable scan-order index over a compiled rule sequence.

    Properties are interned to small ints and truth values to the bytes
    1 (true) and 2 (false), so the propagation loop runs on flat arrays
    instead of hashing typed ids; ``watchers`` maps each literal code to
    the rules whose premises mention it.
    """

    __slots__ = ("rules", "index_of", "prop_of", "premises", "conclusions", "watchers")

    def __init__(self, rules: Sequence[Rule]) -> None:
        self.rules = tuple(rules)
        index_of: dict[EntityId, int] = {}

        def intern(prop: EntityId) -> int:
            slot = index_of.get(prop)
            if slot is None:
                slot = len(index_of)
                index_of[prop] = slot
            return slot

        premises: list[tuple[tuple[int, int], ...]] = []
        conclusions: list[tuple[int, int]] = []
        watcher_lists: dict[int, list[int]] = {}
        for rule_index, rule in enumerate(self.rules):
            encoded = tuple(
                (intern(p.property), 1 if p.value else 2) for p in rule.premises
            )
            premises.append(encoded)
            for slot, want in encoded:
                watcher_lists.setdefault(slot * 2 + want - 1, []).append(rule_index)
            conclusions.append(
                (intern(rule.conclusion.property), 1 if rule.conclusion.value else 2)
            )
        self.index_of = index_of
        self.prop_of = list(index_of)
        self.premises = premises
        self.conclusions = conclusions
        self.watchers: list[tuple[int, ...]] = [
            tuple(watcher_lists.get(code, ())) for code in range(2 * len(index_of))
        ]


def propagate(
    assumptions: Mapping[EntityId, bool],
    rules: Sequence[Rule],
    space: EntityId | None = None,
) -> Closure | Contradiction:
    """Close a self-consistent assumption set under the rules.

    Terminates after at most one firing per property; the result is the
    unique least fixpoint, with proofs fixed by scan order.
    """
    index = rules if isinstance(rules, _RuleIndex) else _RuleIndex(rules)
    return _propagate(list(assumptions.items()), index, space)


def _propagate(
    assumptions: list[tuple[EntityId, bool]], index: _RuleIndex, space: EntityId | None
) -> Closure | Contradiction:
    rules = index.rules
    index_of = index.index_of
    premises_of = index.premises
    conclusion_of = index.conclusions
    watchers = index.watchers
    values = bytearray(len(index.prop_of))  # 0 unknown, 1 true, 2 false
    dead = bytearray(len(rules))  # fired, or conclusion already held
    fired: list[tuple[int, int]] = []  # (property slot, rule index) in scan order

    current: list[int] = []  # heap of rule indices woken for this pass
    queued: set[int] = set()  # members of `current` not yet popped
    upcoming: set[int] = set()  # rule indices woken for the next pass

    seeds: list[int] = []
    for prop, value in assumptions:
        slot = index_of.get(prop)
        if slot is None:
            continue  # no rule mentions it; it still lands in the closure
        values[slot] = 1 if value else 2
        seeds.append(slot * 2 + (0 if value else 1))
    for code in seeds:
        for rule_index in watchers[code]:
            if rule_index not in queued:
                queued.add(rule_index)
                heapq.heappush(current, rule_index)

    while current or upcoming:
        if not current:
            current = sorted(upcoming)  # a sorted list is a valid heap
            queued = set(current)
            upcoming = set()
        position = heapq.heappop(current)
        queued.discard(position)
        if dead[position]:
            continue
        concl_slot, concl_want = conclusion_of[position]
        known = values[concl_slot]
        if known == concl_want:
            dead[position] = 1
            continue
        applicable = True
        for slot, want in premises_of[position]:
            if values[slot] != want:
                applicable = False
                break
        if not applicable:
            continue  # will be rewoken if another premise lands
        if known:
            return _finish_contradiction(space, position, assumptions, fired, index)
        values[concl_slot] = concl_want
        fired.append((concl_slot, position))
        dead[position] = 1
        code = concl_slot * 2 + concl_want - 1
        for rule_index in watchers[code]:
            if dead[rule_index]:
                continue
            if rule_index > position:
                if rule_index not in queued:
                    queued.add(rule_index)
                    heapq.heappush(current, rule_index)
            else:
                upcoming.add(rule_index)

    assignment, steps, order = _decode(assumptions, fired, index)
    return Closure(
        space=space,
        assignment=assignment,
        steps=steps,
        asserted=frozenset(prop for prop, _ in assumptions),
        order=order,
    )


def _decode(
    assumptions: list[tuple[EntityId, bool]],
    fired: list[tuple[int, int]],
    index: _RuleIndex,
) -> tuple[dict[EntityId, bool], dict[EntityId, ProofStep], tuple[EntityId, ...]]:
    """Rebuild id-keyed assignment, steps, and firing order from slot form."""
    assignment = dict(assumptions)
    steps: dict[EntityId, ProofStep] = {}
    order: list[EntityId] = []
    for slot, rule_index in fired:
        rule = index.rules[rule_index]
        prop = index.prop_of[slot]
        assignment[prop] = rule.conclusion.value
        steps[prop] = ProofStep(
            rule.conclusion, rule.theorem, rule.contrapositive, rule.premises
        )
        order.append(prop)
    return assignment, steps, tuple(order)


def _finish_contradiction(
    space: EntityId | None,
    position: int,
    assumptions: list[tuple[EntityId, bool]],
    fired: list[tuple[int, int]],
    index: _RuleIndex,
) -> Contradiction:
    assignment, steps, order = _decode(assumptions, fired, index)
    return _make_contradiction(
        space,
        index.rules[position],
        assignment,
        steps,
        order,
        frozenset(prop for prop, _ in assumptions),
    )


def _transitive_steps(
    steps: dict[EntityId, ProofStep],
    order: Sequence[EntityId],
    targets: Iterable[EntityId],
) -> tuple[ProofStep, ...]:
    """Every step supporting the targets, deduplicated, in firing order."""
    needed: set[EntityId] = set()

    def visit(prop: EntityId) -> None:
        if prop in needed or prop not in steps:
            return
        needed.add(prop)
        for support in steps[prop].supports:
            visit(support.property)

    for target in targets:
        visit(target)
    rank = {prop: i for i, prop in enumerate(order)}
    return tuple(steps[prop] for prop in sorted(needed, key=rank.__getitem__))


def _make_contradiction(
    space: EntityId | None,
    rule: Rule,
    assignment: dict[EntityId, bool],
    steps: dict[EntityId, ProofStep],
    order: Sequence[EntityId],
    asserted: frozenset[EntityId],
) -> Contradiction:
    prop = rule.conclusion.property
    literal_a = Literal(prop, assignment[prop])
    trace_a = (
        _transitive_steps(steps, order, [prop]) if prop not in asserted else ()
    )
    final = ProofStep(rule.conclusion, rule.theorem, rule.contrapositive, rule.premises)
    support_trace = _transitive_steps(
        steps, order, [p.property for p in rule.premises]
    )
    return Contradiction(
        space=space,
        property=prop,
        literal_a=literal_a,
        trace_a=trace_a,
        literal_b=rule.conclusion,
        trace_b=support_trace + (final,),
    )


def close_bundle(
    bundle: Bundle,
    rules: Sequence[Rule] | None = None,
    workers: int | None = None,
) -> dict[EntityId, Closure | Contradiction]:
    """Propagate every space's asserted traits; spaces are independent.

    Closures of consistent spaces are returned even when other spaces
    contradict. With ``workers`` > 1 spaces are closed in a thread pool;
    the result is identical to the serial run.
    """
    compiled = compile_rules(bundle.theorems.values()) if rules is None else rules
    index = _RuleIndex(compiled)
    spaces = sorted(bundle.spaces)

    def close_one(space: EntityId) -> Closure | Contradiction:
        return _propagate(list(bundle.assumptions_for(space).items()), index, space)

    if workers is not None and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(close_one, spaces))
    else:
        results = [close_one(space) for space in spaces]
    return dict(zip(spaces, results))


def consistent_closures(
    closures: Mapping[EntityId, Closure | Contradiction],
) -> dict[EntityId, Closure]:
    """All-consistent view of close_bundle's result; raises otherwise."""
    bad = [space for space, result in closures.items() if isinstance(result, Contradiction)]
    if bad:
        raise InconsistentBundleError(bad)
    return {space: result for space, result in closures.items()}  # type: ignore[misc]


def expand_proof(closure: Closure, prop: EntityId) -> tuple[ProofStep, ...]:
    """The full proof of a derived value: every supporting step from the
    asserted literals up to the target, deduplicated, in firing order.
    """
    if prop not in closure.assignment:
        raise PropertyUnknown(f"{prop} has no value in this closure")
    if prop in closure.asserted:
        raise PropertyAsserted(f"{prop} is asserted here, not derived")
    return _transitive_steps(closure.steps, closure.order, [prop])


# --- Candidate-theorem checking ---------------------------------------------

REDUNDANT = "redundant"
REFUTED_BY_THEORY = "refuted_by_theory"
NOT_DERIVABLE = "not_derivable"
PREMISES_INCONSISTENT = "premises_inconsistent"


@dataclass
class RedundancyResult:
    """Outcome of propagating a candidate implication's premises.

    ``not_derivable`` means not derivable by unit propagation, which is
    sound but incomplete for full boolean entailment; that is the
    documented behavior of the engine.
    """

    verdict: str
    proof: tuple[ProofStep, ...] = ()
    contradiction: Contradiction | None = None

    @property
    def theorems(self) -> tuple[EntityId, ...]:
        return tuple(dict.fromkeys(step.theorem for step in self.proof))


def check_redundant(
    premises: Mapping[EntityId, bool],
    conclusion: Literal,
    rules: Sequence[Rule],
) -> RedundancyResult:
    """Is a candidate implication already entailed by the rule base?

    Redundant when the conclusion is derivable from the premises alone;
    refuted-by-theory when its negation is. Premises that contradict the
    theory get their own verdict since everything would follow from them.
    """
    if conclusion.property in premises:
        raise ValueError("candidate conclusion appears among its premises")
    result = propagate(dict(premises), rules)
    if isinstance(result, Contradiction):
        return RedundancyResult(PREMISES_INCONSISTENT, contradiction=result)
    value = result.value(conclusion.property)
    if value is None:
        return RedundancyResult(NOT_DERIVABLE)
    proof = expand_proof(result, conclusion.property)
    if value == conclusion.value:
        return RedundancyResult(REDUNDANT, proof=proof)
    return RedundancyResult(REFUTED_BY_THEORY, proof=proof)


@dataclass(frozen=True)
class Counterexample:
    """A space whose closure satisfies the premises and refutes the conclusion."""

    space: EntityId
    refuting: Literal
    asserted: bool
    steps: tuple[ProofStep, ...]


@dataclass(frozen=True)
class UndecidedSpace:
    """A space that could still witness either way: nothing known conflicts
    with the counterexample pattern, but some relevant value is unknown."""

    space: EntityId
    missing: tuple[EntityId, ...]


@dataclass
class CounterexampleReport:
    witnesses: tuple[Counterexample, ...]
    undecided: tuple[UndecidedSpace, ...]


def find_counterexamples(
    premises: Mapping[EntityId, bool],
    conclusion: Literal,
    bundle: Bundle,
    closures: Mapping[EntityId, Closure | Contradiction],
) -> CounterexampleReport:
    """Search the closed bundle for witnesses against a candidate implication.

    A witness assigns every premise its stated value and the conclusion its
    negation. Spaces with unknowns among the relevant properties are
    reported separately as undecided candidates unless a known value
    already rules them out.
    """
    pattern = dict(premises)
    pattern[conclusion.property] = not conclusion.value
    witnesses: list[Counterexample] = []
    undecided: list[UndecidedSpace] = []
    for space in sorted(bundle.spaces):
        closure = closures.get(space)
        if not isinstance(closure, Closure):
            continue
        missing = [prop for prop in pattern if closure.value(prop) is None]
        ruled_out = any(
            closure.value(prop) is not None and closure.value(prop) != wanted
            for prop, wanted in pattern.items()
        )
        if ruled_out:
            continue
        if missing:
            undecided.append(UndecidedSpace(space, tuple(sorted(missing))))
            continue
        refuting = Literal(conclusion.property, not conclusion.value)
        is_asserted = conclusion.property in closure.asserted
        steps = () if is_asserted else expand_proof(closure, conclusion.property)
        witnesses.append(Counterexample(space, refuting, is_asserted, steps))
    return CounterexampleReport(tuple(witnesses), tuple(undecided))
