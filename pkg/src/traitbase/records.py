"""Record types for the four document kinds of a corpus bundle."""

from __future__ import annotations

from dataclasses import dataclass, field

from .ids import EntityId, Kind

# Schemes the public corpora actually use today. Anything else is carried
# through untouched so new citation sources never require a code change.
KNOWN_SCHEMES = ("doi", "wikipedia", "mathse", "mronline")


@dataclass(frozen=True)
class Citation:
    """A reference under a named scheme, e.g. ``doi: 10.1007/...``."""

    scheme: str
    key: str
    name: str | None = None

    def __post_init__(self) -> None:
        if not self.scheme or not self.key:
            raise ValueError("citation scheme and key must be nonempty")


@dataclass(frozen=True)
class Property:
    """A boolean-valued attribute objects may satisfy; the corpus atom."""

    uid: EntityId
    name: str
    aliases: tuple[str, ...] = ()
    refs: tuple[Citation, ...] = ()
    description: str = ""
    tokens: tuple[Citation, ...] = ()
    source: str | None = None

    def __post_init__(self) -> None:
        if self.uid.kind is not Kind.PROPERTY:
            raise ValueError(f"property uid must be a P-id, got {self.uid}")
        if not self.name.strip():
            raise ValueError("property name must be nonempty")


@dataclass(frozen=True)
class Space:
    """An object of study, described like a property but in its own namespace."""

    uid: EntityId
    name: str
    aliases: tuple[str, ...] = ()
    refs: tuple[Citation, ...] = ()
    description: str = ""
    tokens: tuple[Citation, ...] = ()
    source: str | None = None

    def __post_init__(self) -> None:
        if self.uid.kind is not Kind.SPACE:
            raise ValueError(f"space uid must be an S-id, got {self.uid}")
        if not self.name.strip():
            raise ValueError("space name must be nonempty")


@dataclass(frozen=True)
class TraitAssertion:
    """A cited boolean value for one (space, property) pair."""

    space: EntityId
    property: EntityId
    value: bool
    refs: tuple[Citation, ...] = ()
    description: str = ""
    tokens: tuple[Citation, ...] = ()
    source: str | None = None

    def __post_init__(self) -> None:
        if self.space.kind is not Kind.SPACE:
            raise ValueError(f"trait space must be an S-id, got {self.space}")
        if self.property.kind is not Kind.PROPERTY:
            raise ValueError(f"trait property must be a P-id, got {self.property}")

    @property
    def key(self) -> tuple[EntityId, EntityId]:
        return (self.space, self.property)


@dataclass(frozen=True)
class Theorem:
    """An implication: a conjunction of property values forces another value.

    Premises keep document order; contrapositive rules are indexed by that
    order, so it is part of the record's identity.
    """

    uid: EntityId
    premises: tuple[tuple[EntityId, bool], ...]
    conclusion: tuple[EntityId, bool]
    refs: tuple[Citation, ...] = ()
    description: str = ""
    tokens: tuple[Citation, ...] = ()
    source: str | None = None

    def __post_init__(self) -> None:
        if self.uid.kind is not Kind.THEOREM:
            raise ValueError(f"theorem uid must be a T-id, got {self.uid}")
        if not self.premises:
            raise ValueError(f"theorem {self.uid} has no premises")
        seen: set[EntityId] = set()
        for prop, _ in self.premises:
            if prop.kind is not Kind.PROPERTY:
                raise ValueError(f"theorem {self.uid} premise {prop} is not a property")
            if prop in seen:
                raise ValueError(f"theorem {self.uid} repeats premise {prop}")
            seen.add(prop)
        concl_prop, _ = self.conclusion
        if concl_prop.kind is not Kind.PROPERTY:
            raise ValueError(f"theorem {self.uid} conclusion {concl_prop} is not a property")
        if concl_prop in seen:
            raise ValueError(
                f"theorem {self.uid} conclusion {concl_prop} appears among its premises"
            )

    @property
    def premise_map(self) -> dict[EntityId, bool]:
        return dict(self.premises)

    @property
    def mentioned_properties(self) -> tuple[EntityId, ...]:
        return tuple(p for p, _ in self.premises) + (self.conclusion[0],)


Document = Property | Space | TraitAssertion | Theorem
