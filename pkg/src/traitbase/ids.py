"""Typed identifiers for corpus entities."""

from __future__ import annotations

import enum
import functools
import re
from dataclasses import dataclass


class Kind(enum.Enum):
    """Namespace of a corpus entity, keyed by its uid letter."""

    PROPERTY = "P"
    SPACE = "S"
    THEOREM = "T"


_UID_RE = re.compile(r"([PST])([0-9]{6})\Z")

MAX_NUMBER = 999_999


@functools.total_ordering
@dataclass(frozen=True)
class EntityId:
    """An id such as ``P000001``: one kind letter plus six zero-padded digits.

    Parsing the canonical text form and re-rendering it is the identity.
    """

    kind: Kind
    number: int

    def __post_init__(self) -> None:
        if not 1 <= self.number <= MAX_NUMBER:
            raise ValueError(f"entity number out of range: {self.number}")

    @classmethod
    def parse(cls, text: str, kind: Kind | None = None) -> EntityId:
        match = _UID_RE.fullmatch(text)
        if match is None:
            raise ValueError(f"malformed uid: {text!r}")
        number = int(match.group(2))
        if number < 1:
            raise ValueError(f"uid number must be positive: {text!r}")
        parsed = cls(Kind(match.group(1)), number)
        if kind is not None and parsed.kind is not kind:
            raise ValueError(
                f"expected a {kind.name.lower()} uid, got {text!r}"
            )
        return parsed

    def _key(self) -> tuple[str, int]:
        return (self.kind.value, self.number)

    def __lt__(self, other: object) -> bool:
        if not isinstance(other, EntityId):
            return NotImplemented
        return self._key() < other._key()

    def __str__(self) -> str:
        return f"{self.kind.value}{self.number:06d}"

    def __repr__(self) -> str:
        return f"EntityId({str(self)!r})"
