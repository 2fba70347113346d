"""Deterministic synthetic bundle generator for scale tests."""

from __future__ import annotations

import random

from traitbase import Bundle, EntityId, Kind, Property, Space, Theorem, TraitAssertion


def make_synthetic_bundle(
    n_spaces: int = 1000,
    n_properties: int = 200,
    n_theorems: int = 500,
    seed: int = 20250810,
) -> Bundle:
    """A consistent bundle at the stated scale.

    Implications only ever conclude positive values from positive premises
    and every assertion is positive, so no contrapositive can fire and no
    contradiction is reachable; closure work is still nontrivial because
    the implication graph is densely layered.
    """
    rng = random.Random(seed)
    properties = [
        Property(uid=EntityId(Kind.PROPERTY, i + 1), name=f"synthetic property {i + 1}")
        for i in range(n_properties)
    ]
    theorems = []
    for i in range(n_theorems):
        size = rng.randint(1, 3)
        chosen = rng.sample(range(1, n_properties + 1), size + 1)
        premises = tuple((EntityId(Kind.PROPERTY, n), True) for n in chosen[:-1])
        theorems.append(
            Theorem(
                uid=EntityId(Kind.THEOREM, i + 1),
                premises=premises,
                conclusion=(EntityId(Kind.PROPERTY, chosen[-1]), True),
            )
        )
    spaces = []
    assertions = []
    for i in range(n_spaces):
        uid = EntityId(Kind.SPACE, i + 1)
        spaces.append(Space(uid=uid, name=f"synthetic space {i + 1}"))
        for n in rng.sample(range(1, n_properties + 1), rng.randint(3, 8)):
            assertions.append(
                TraitAssertion(space=uid, property=EntityId(Kind.PROPERTY, n), value=True)
            )
    return Bundle.from_records(properties + theorems + spaces + assertions)
