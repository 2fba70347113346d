"""Bundle loading: parse a document tree, validate it, resolve names.

A bundle root has this layout (zip archives with the same layout work too):

    properties/P000001.md
    spaces/S000001/README.md
    spaces/S000001/properties/P000052.md   (trait files)
    theorems/T000042.md

Loading never fails fast: every parse error, duplicate, dangling reference,
and name collision is collected into one aggregate report. A bundle that
loads cleanly satisfies all structural invariants and is immutable after
load, so it is safe to share across threads.
"""

from __future__ import annotations

import difflib
import re
import zipfile
from pathlib import Path, PurePosixPath
from typing import Iterable, Iterator

from .documents import DocumentKind, kind_of, parse_document, serialize_document
from .errors import BundleValidationError, Diagnostic, NameResolutionError, ParseError
from .ids import EntityId, Kind
from .records import Document, Property, Space, Theorem, TraitAssertion

_PROPERTY_FILE = re.compile(r"properties/(P[0-9]{6})\.md\Z")
_THEOREM_FILE = re.compile(r"theorems/(T[0-9]{6})\.md\Z")
_SPACE_FILE = re.compile(r"spaces/(S[0-9]{6})/README\.md\Z")
_TRAIT_FILE = re.compile(r"spaces/(S[0-9]{6})/properties/(P[0-9]{6})\.md\Z")


class Bundle:
    """All records of one corpus, keyed and iterated in ascending uid order."""

    def __init__(
        self,
        properties: dict[EntityId, Property],
        spaces: dict[EntityId, Space],
        theorems: dict[EntityId, Theorem],
        assertions: dict[tuple[EntityId, EntityId], TraitAssertion],
    ) -> None:
        self.properties = properties
        self.spaces = spaces
        self.theorems = theorems
        self.assertions = assertions
        self._names = {
            Kind.PROPERTY: _name_index(properties.values()),
            Kind.SPACE: _name_index(spaces.values()),
        }
        self._assertions_by_space: dict[EntityId, list[TraitAssertion]] = {}
        for assertion in assertions.values():
            self._assertions_by_space.setdefault(assertion.space, []).append(assertion)

    @classmethod
    def from_records(cls, records: Iterable[Document]) -> Bundle:
        """Build and fully validate a bundle; raises BundleValidationError."""
        bundle, diagnostics = _build(list(records))
        if diagnostics:
            raise BundleValidationError(diagnostics)
        assert bundle is not None
        return bundle

    def records(self) -> Iterator[Document]:
        yield from self.properties.values()
        yield from self.spaces.values()
        yield from self.theorems.values()
        yield from self.assertions.values()

    def assertions_for(self, space: EntityId) -> tuple[TraitAssertion, ...]:
        return tuple(self._assertions_by_space.get(space, ()))

    def assumptions_for(self, space: EntityId) -> dict[EntityId, bool]:
        """The space's asserted values, keyed by property, ascending uid."""
        items = sorted(self._assertions_by_space.get(space, []), key=lambda a: a.property)
        return {a.property: a.value for a in items}

    def counts(self) -> dict[str, int]:
        return {
            "properties": len(self.properties),
            "spaces": len(self.spaces),
            "theorems": len(self.theorems),
            "assertions": len(self.assertions),
        }

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Bundle):
            return NotImplemented
        return (
            self.properties == other.properties
            and self.spaces == other.spaces
            and self.theorems == other.theorems
            and self.assertions == other.assertions
        )

    def __repr__(self) -> str:
        c = self.counts()
        return (
            f"Bundle(properties={c['properties']}, spaces={c['spaces']}, "
            f"theorems={c['theorems']}, assertions={c['assertions']})"
        )


def _fold(name: str) -> str:
    return name.strip().casefold()


def _name_index(records: Iterable[Property | Space]) -> dict[str, EntityId]:
    index: dict[str, EntityId] = {}
    for record in records:
        index[_fold(record.name)] = record.uid
        for alias in record.aliases:
            index[_fold(alias)] = record.uid
    return index


def _build(records: list[Document]) -> tuple[Bundle | None, list[Diagnostic]]:
    diagnostics: list[Diagnostic] = []
    properties: dict[EntityId, Property] = {}
    spaces: dict[EntityId, Space] = {}
    theorems: dict[EntityId, Theorem] = {}
    assertions: dict[tuple[EntityId, EntityId], TraitAssertion] = {}

    def dup(path: str | None, code: str, message: str) -> None:
        diagnostics.append(
            Diagnostic(path=path, line=None, field="uid", code=code, message=message)
        )

    for record in records:
        if isinstance(record, Property):
            if record.uid in properties:
                dup(record.source, "duplicate_uid", f"duplicate property {record.uid}")
            else:
                properties[record.uid] = record
        elif isinstance(record, Space):
            if record.uid in spaces:
                dup(record.source, "duplicate_uid", f"duplicate space {record.uid}")
            else:
                spaces[record.uid] = record
        elif isinstance(record, Theorem):
            if record.uid in theorems:
                dup(record.source, "duplicate_uid", f"duplicate theorem {record.uid}")
            else:
                theorems[record.uid] = record
        else:
            key = record.key
            if key in assertions:
                diagnostics.append(
                    Diagnostic(
                        path=record.source,
                        line=None,
                        field="space",
                        code="duplicate_assertion",
                        message=(
                            f"duplicate trait assertion for {record.space}|{record.property}"
                        ),
                    )
                )
            else:
                assertions[key] = record

    # Name/alias uniqueness, case-insensitive, per namespace.
    for label, collection in (("property", properties), ("space", spaces)):
        seen: dict[str, tuple[EntityId, str]] = {}
        for record in collection.values():
            for field, name in [("name", record.name)] + [
                ("aliases", alias) for alias in record.aliases
            ]:
                folded = _fold(name)
                if folded in seen and seen[folded][0] != record.uid:
                    other_uid, other_name = seen[folded]
                    diagnostics.append(
                        Diagnostic(
                            path=record.source,
                            line=None,
                            field=field,
                            code="name_collision",
                            message=(
                                f"{label} name {name!r} on {record.uid} collides with "
                                f"{other_name!r} on {other_uid}"
                            ),
                        )
                    )
                elif folded not in seen:
                    seen[folded] = (record.uid, name)

    def dangling(path: str | None, field: str, uid: EntityId, owner: str) -> None:
        diagnostics.append(
            Diagnostic(
                path=path,
                line=None,
                field=field,
                code="dangling_reference",
                message=f"{owner} references missing {uid.kind.name.lower()} {uid}",
            )
        )

    for assertion in assertions.values():
        owner = f"trait {assertion.space}|{assertion.property}"
        if assertion.space not in spaces:
            dangling(assertion.source, "space", assertion.space, owner)
        if assertion.property not in properties:
            dangling(assertion.source, "property", assertion.property, owner)
    for theorem in theorems.values():
        for field, prop in [("if", p) for p, _ in theorem.premises] + [
            ("then", theorem.conclusion[0])
        ]:
            if prop not in properties:
                dangling(theorem.source, field, prop, f"theorem {theorem.uid}")

    if diagnostics:
        return None, diagnostics

    bundle = Bundle(
        properties=dict(sorted(properties.items())),
        spaces=dict(sorted(spaces.items())),
        theorems=dict(sorted(theorems.items())),
        assertions=dict(sorted(assertions.items())),
    )
    return bundle, []


# --- Tree reading -----------------------------------------------------------


def _classify(path: str) -> tuple[DocumentKind, dict[str, str]] | None:
    if m := _PROPERTY_FILE.fullmatch(path):
        return DocumentKind.PROPERTY, {"uid": m.group(1)}
    if m := _THEOREM_FILE.fullmatch(path):
        return DocumentKind.THEOREM, {"uid": m.group(1)}
    if m := _SPACE_FILE.fullmatch(path):
        return DocumentKind.SPACE, {"uid": m.group(1)}
    if m := _TRAIT_FILE.fullmatch(path):
        return DocumentKind.TRAIT, {"space": m.group(1), "property": m.group(2)}
    return None


def _iter_tree(root: Path) -> Iterator[tuple[str, str]]:
    for path in sorted(root.rglob("*.md")):
        relative = path.relative_to(root).as_posix()
        if any(part.startswith(".") for part in PurePosixPath(relative).parts):
            continue
        yield relative, path.read_text(encoding="utf-8")


def _iter_zip(archive: Path) -> Iterator[tuple[str, str]]:
    with zipfile.ZipFile(archive) as zf:
        names = sorted(n for n in zf.namelist() if n.endswith(".md"))
        for name in names:
            yield name, zf.read(name).decode("utf-8")


def parse_tree(
    documents: Iterable[tuple[str, str]],
) -> tuple[list[Document], list[Diagnostic]]:
    """Parse (path, text) pairs into records, checking path/header agreement."""
    records: list[Document] = []
    diagnostics: list[Diagnostic] = []
    for path, text in documents:
        classified = _classify(path)
        if classified is None:
            diagnostics.append(
                Diagnostic(
                    path=path,
                    line=None,
                    field=None,
                    code="unrecognized_path",
                    message="document does not match any bundle layout pattern",
                )
            )
            continue
        kind, expected = classified
        try:
            record = parse_document(text, kind, path=path)
        except ParseError as exc:
            diagnostics.append(Diagnostic.from_parse_error(exc, path=path))
            continue
        mismatch = _path_mismatch(record, expected)
        if mismatch is not None:
            field, message = mismatch
            diagnostics.append(
                Diagnostic(
                    path=path,
                    line=None,
                    field=field,
                    code="path_mismatch",
                    message=message,
                )
            )
            continue
        records.append(_with_source(record, path))
    return records, diagnostics


def _path_mismatch(record: Document, expected: dict[str, str]) -> tuple[str, str] | None:
    if isinstance(record, TraitAssertion):
        if str(record.space) != expected["space"]:
            return "space", f"header space {record.space} does not match path {expected['space']}"
        if str(record.property) != expected["property"]:
            return (
                "property",
                f"header property {record.property} does not match path {expected['property']}",
            )
        return None
    if str(record.uid) != expected["uid"]:
        return "uid", f"header uid {record.uid} does not match path {expected['uid']}"
    return None


def _with_source(record: Document, path: str) -> Document:
    return type(record)(**{**record.__dict__, "source": path})


def load_bundle(root: str | Path) -> Bundle:
    """Load and validate a bundle from a directory tree or zip archive.

    All errors are collected before failing; the raised
    BundleValidationError names a file path and field for each finding.
    """
    root = Path(root)
    if root.is_file():
        documents = _iter_zip(root)
    elif root.is_dir():
        documents = _iter_tree(root)
    else:
        raise FileNotFoundError(f"bundle root not found: {root}")
    records, diagnostics = parse_tree(documents)
    bundle, structural = _build(records)
    diagnostics.extend(structural)
    if diagnostics:
        raise BundleValidationError(diagnostics)
    assert bundle is not None
    return bundle


def canonical_path(record: Document) -> str:
    """The layout position a record serializes to."""
    if isinstance(record, Property):
        return f"properties/{record.uid}.md"
    if isinstance(record, Space):
        return f"spaces/{record.uid}/README.md"
    if isinstance(record, Theorem):
        return f"theorems/{record.uid}.md"
    return f"spaces/{record.space}/properties/{record.property}.md"


def dump_bundle(bundle: Bundle, root: str | Path) -> None:
    """Write the canonical tree: the same bundle always yields the same bytes."""
    root = Path(root)
    for record in bundle.records():
        target = root / canonical_path(record)
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(serialize_document(record), encoding="utf-8")


def merge_documents(
    bundle: Bundle, documents: Iterable[tuple[str, str]]
) -> tuple[Bundle | None, list[Diagnostic]]:
    """Overlay contributed documents on a bundle, as a hypothetical copy.

    Contributed records replace same-keyed records and otherwise extend the
    bundle. Returns the merged bundle, or the aggregate diagnostics if it
    does not validate. The input bundle is never modified.
    """
    records, diagnostics = parse_tree(documents)
    if diagnostics:
        return None, diagnostics
    merged: dict[object, Document] = {}
    for record in bundle.records():
        merged[_identity(record)] = record
    for record in records:
        merged[_identity(record)] = record
    return _build(list(merged.values()))


def _identity(record: Document) -> object:
    if isinstance(record, TraitAssertion):
        return ("trait", record.space, record.property)
    return (kind_of(record).value, record.uid)


def resolve_name(text: str, bundle: Bundle, kind: Kind) -> EntityId:
    """Resolve a uid, name, or alias (case-insensitive, trimmed) to an id."""
    if kind not in (Kind.PROPERTY, Kind.SPACE):
        raise ValueError("names resolve only in the property and space namespaces")
    label = kind.name.lower()
    collection = bundle.properties if kind is Kind.PROPERTY else bundle.spaces
    candidate = text.strip()
    try:
        uid = EntityId.parse(candidate.upper(), kind)
    except ValueError:
        uid = None
    if uid is not None:
        if uid in collection:
            return uid
        raise NameResolutionError(candidate, label)
    index = bundle._names[kind]
    folded = _fold(candidate)
    if folded in index:
        return index[folded]
    close = difflib.get_close_matches(folded, list(index), n=3)
    suggestions = tuple(_display_name(collection[index[match]], match) for match in close)
    raise NameResolutionError(candidate, label, suggestions=suggestions)


def _display_name(record: Property | Space, folded: str) -> str:
    if _fold(record.name) == folded:
        return record.name
    for alias in record.aliases:
        if _fold(alias) == folded:
            return alias
    return record.name
