"""Parsing and canonical serialization of the four document kinds.

Parsing is strict: unknown header fields, duplicate fields, malformed uids,
and malformed citation tokens are all errors, because these files double as
a reviewed contribution format. Header comments after ``#`` are ignored.
The body is kept verbatim as the record's description; ``{{scheme:key}}``
tokens are left in place and also extracted into the record's token index.
"""

from __future__ import annotations

import enum
import re

from . import frontmatter as fm
from .errors import ParseError
from .ids import EntityId, Kind
from .records import Citation, Document, Property, Space, Theorem, TraitAssertion


class DocumentKind(enum.Enum):
    PROPERTY = "property"
    SPACE = "space"
    TRAIT = "trait"
    THEOREM = "theorem"


_FIELDS = {
    DocumentKind.PROPERTY: {"uid", "name", "aliases", "refs"},
    DocumentKind.SPACE: {"uid", "name", "aliases", "refs"},
    DocumentKind.TRAIT: {"space", "property", "value", "refs"},
    DocumentKind.THEOREM: {"uid", "if", "then", "refs"},
}


def parse_document(text: str, kind: DocumentKind, path: str | None = None) -> Document:
    """Parse one document into its typed record.

    Raises ParseError carrying line/field location; when ``path`` is given
    it is attached to the error for bundle-level reporting.
    """
    try:
        return _parse(text, kind)
    except ParseError as exc:
        if path is not None and exc.path is None:
            exc.path = path
        raise


def _parse(text: str, kind: DocumentKind) -> Document:
    split = fm.split_document(text)
    header = fm.decode_header(split.header)
    fields = _collect_fields(header, kind)
    tokens = extract_citation_tokens(split.body, first_line=split.body_line)
    refs = _parse_refs(fields.get("refs"))

    if kind in (DocumentKind.PROPERTY, DocumentKind.SPACE):
        uid_kind = Kind.PROPERTY if kind is DocumentKind.PROPERTY else Kind.SPACE
        uid = _parse_uid(_require(fields, "uid", header), "uid", uid_kind)
        name = fm.as_string(
            _require(fields, "name", header), "name", required_nonempty=True
        ).text
        aliases = _parse_aliases(fields.get("aliases"))
        cls = Property if kind is DocumentKind.PROPERTY else Space
        return cls(
            uid=uid,
            name=name,
            aliases=aliases,
            refs=refs,
            description=split.body,
            tokens=tokens,
        )

    if kind is DocumentKind.TRAIT:
        space = _parse_uid(_require(fields, "space", header), "space", Kind.SPACE)
        prop = _parse_uid(_require(fields, "property", header), "property", Kind.PROPERTY)
        value = fm.as_bool(_require(fields, "value", header), "value")
        return TraitAssertion(
            space=space,
            property=prop,
            value=value,
            refs=refs,
            description=split.body,
            tokens=tokens,
        )

    premises = _parse_literal_map(_require(fields, "if", header), "if")
    if not premises:
        raise ParseError(
            "field 'if' must list at least one premise",
            field="if",
            line=fields["if"].line if isinstance(fields["if"], fm.Mapping) else None,
        )
    conclusions = _parse_literal_map(_require(fields, "then", header), "then")
    if len(conclusions) != 1:
        raise ParseError(
            "field 'then' must contain exactly one conclusion",
            field="then",
            line=fields["then"].line if isinstance(fields["then"], fm.Mapping) else None,
        )
    uid = _parse_uid(_require(fields, "uid", header), "uid", Kind.THEOREM)
    try:
        return Theorem(
            uid=uid,
            premises=premises,
            conclusion=conclusions[0],
            refs=refs,
            description=split.body,
            tokens=tokens,
        )
    except ValueError as exc:
        raise ParseError(str(exc), field="then") from exc


def _collect_fields(header: fm.Mapping, kind: DocumentKind) -> dict[str, fm.Node]:
    allowed = _FIELDS[kind]
    fields: dict[str, fm.Node] = {}
    for entry in header.entries:
        if entry.key not in allowed:
            raise ParseError(
                f"unknown field {entry.key!r} in a {kind.value} document",
                field=entry.key,
                line=entry.line,
            )
        if entry.key in fields:
            raise ParseError(
                f"duplicate field {entry.key!r}", field=entry.key, line=entry.line
            )
        fields[entry.key] = entry.value
    return fields


def _require(fields: dict[str, fm.Node], name: str, header: fm.Mapping) -> fm.Node:
    if name not in fields:
        raise ParseError(f"missing required field {name!r}", field=name, line=header.line)
    return fields[name]


def _parse_uid(node: fm.Node, field: str, kind: Kind) -> EntityId:
    scalar = fm.as_string(node, field, required_nonempty=True)
    try:
        return EntityId.parse(scalar.text.strip(), kind)
    except ValueError as exc:
        raise ParseError(str(exc), field=field, line=scalar.line) from exc


def _parse_aliases(node: fm.Node | None) -> tuple[str, ...]:
    if node is None:
        return ()
    seq = fm.as_sequence(node, "aliases")
    return tuple(
        fm.as_string(item, "aliases", required_nonempty=True).text for item in seq.items
    )


def _parse_refs(node: fm.Node | None) -> tuple[Citation, ...]:
    if node is None:
        return ()
    seq = fm.as_sequence(node, "refs")
    refs = []
    for item in seq.items:
        mapping = fm.as_mapping(item, "refs")
        scheme = None
        key = None
        display = None
        for entry in mapping.entries:
            if entry.key == "name":
                display = fm.as_string(entry.value, "refs.name").text
            elif scheme is None:
                scheme = entry.key
                key = fm.as_string(entry.value, f"refs.{entry.key}", required_nonempty=True).text
            else:
                raise ParseError(
                    f"citation has two schemes: {scheme!r} and {entry.key!r}",
                    field="refs",
                    line=entry.line,
                )
        if scheme is None or key is None:
            raise ParseError(
                "citation needs one scheme entry (e.g. 'doi: ...')",
                field="refs",
                line=mapping.line,
            )
        refs.append(Citation(scheme=scheme, key=key.strip(), name=display))
    return tuple(refs)


def _parse_literal_map(node: fm.Node, field: str) -> tuple[tuple[EntityId, bool], ...]:
    mapping = fm.as_mapping(node, field)
    out = []
    seen: set[str] = set()
    for entry in mapping.entries:
        if entry.key in seen:
            raise ParseError(
                f"duplicate property {entry.key!r} under {field!r}",
                field=field,
                line=entry.line,
            )
        seen.add(entry.key)
        try:
            prop = EntityId.parse(entry.key, Kind.PROPERTY)
        except ValueError as exc:
            raise ParseError(str(exc), field=field, line=entry.line) from exc
        out.append((prop, fm.as_bool(entry.value, field)))
    return tuple(out)


# --- Citation tokens -------------------------------------------------------

_TOKEN_OPEN = "{{"
_TOKEN_CLOSE = "}}"


def extract_citation_tokens(body: str, first_line: int = 1) -> tuple[Citation, ...]:
    """Scan a body for ``{{scheme:key}}`` tokens, in order of appearance.

    Tokens do not nest; an unmatched ``{{`` is a parse error. A lone ``}}``
    is ordinary text.
    """
    tokens = []
    index = 0
    while (start := body.find(_TOKEN_OPEN, index)) != -1:
        line = first_line + body.count("\n", 0, start)
        end = body.find(_TOKEN_CLOSE, start + 2)
        if end == -1:
            raise ParseError("unmatched '{{' in body", line=line)
        inner = body[start + 2 : end]
        if _TOKEN_OPEN in inner:
            raise ParseError("citation tokens do not nest", line=line)
        scheme, sep, key = inner.partition(":")
        if not sep or not scheme.strip() or not key.strip():
            raise ParseError(
                f"malformed citation token {{{{{inner}}}}}: expected scheme:key",
                line=line,
            )
        tokens.append(Citation(scheme=scheme.strip(), key=key.strip()))
        index = end + 2
    return tuple(tokens)


# --- Canonical serialization ------------------------------------------------

_PLAIN_KEY_RE = re.compile(r"[A-Za-z0-9_-]+\Z")

_ESCAPES = {
    "\\": "\\\\",
    '"': '\\"',
    "\n": "\\n",
    "\t": "\\t",
    "\r": "\\r",
}


def _yaml_safe(ch: str) -> bool:
    # YAML's printable set, minus the exotic line breaks (NEL, LS, PS)
    # that a double-quoted scalar would fold into plain newlines.
    code = ord(ch)
    if code in (0x85, 0x2028, 0x2029):
        return False
    return (
        0x20 <= code <= 0x7E
        or 0xA0 <= code <= 0xD7FF
        or 0xE000 <= code <= 0xFFFD
        or 0x10000 <= code <= 0x10FFFF
    )


def _quote(text: str) -> str:
    out = ['"']
    for ch in text:
        if ch in _ESCAPES:
            out.append(_ESCAPES[ch])
        elif not _yaml_safe(ch):
            out.append(f"\\u{ord(ch):04x}")
        else:
            out.append(ch)
    out.append('"')
    return "".join(out)


def _key(text: str) -> str:
    return text if _PLAIN_KEY_RE.fullmatch(text) else _quote(text)


def _ref_lines(refs: tuple[Citation, ...]) -> list[str]:
    lines = []
    if refs:
        lines.append("refs:")
        for ref in refs:
            lines.append(f"  - {_key(ref.scheme)}: {_quote(ref.key)}")
            if ref.name is not None:
                lines.append(f"    name: {_quote(ref.name)}")
    return lines


def serialize_document(record: Document) -> str:
    """Render a record in canonical form: same record, same bytes.

    The canonical form always quotes free-text strings, indents lists by
    two spaces, and omits empty optional blocks. The description follows
    the closing delimiter verbatim, so serialize-then-parse is lossless.
    """
    lines = [fm.DELIMITER]
    if isinstance(record, (Property, Space)):
        lines.append(f"uid: {record.uid}")
        lines.append(f"name: {_quote(record.name)}")
        if record.aliases:
            lines.append("aliases:")
            lines.extend(f"  - {_quote(alias)}" for alias in record.aliases)
        lines.extend(_ref_lines(record.refs))
    elif isinstance(record, TraitAssertion):
        lines.append(f"space: {record.space}")
        lines.append(f"property: {record.property}")
        lines.append(f"value: {'true' if record.value else 'false'}")
        lines.extend(_ref_lines(record.refs))
    elif isinstance(record, Theorem):
        lines.append(f"uid: {record.uid}")
        lines.append("if:")
        for prop, value in record.premises:
            lines.append(f"  {prop}: {'true' if value else 'false'}")
        lines.append("then:")
        concl_prop, concl_value = record.conclusion
        lines.append(f"  {concl_prop}: {'true' if concl_value else 'false'}")
        lines.extend(_ref_lines(record.refs))
    else:
        raise TypeError(f"not a corpus record: {record!r}")
    lines.append(fm.DELIMITER)
    return "\n".join(lines) + "\n" + record.description


def kind_of(record: Document) -> DocumentKind:
    if isinstance(record, Property):
        return DocumentKind.PROPERTY
    if isinstance(record, Space):
        return DocumentKind.SPACE
    if isinstance(record, TraitAssertion):
        return DocumentKind.TRAIT
    return DocumentKind.THEOREM
