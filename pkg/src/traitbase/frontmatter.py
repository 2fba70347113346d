"""Front-matter splitting and header decoding.

A document is a header between two ``---`` lines followed by a free-text
body. The header is a small YAML subset (scalars, lists, one level of
nesting, ``#`` comments). It is decoded with the YAML composer rather than
a plain load so that every field keeps its source line, which the schema
layer needs for error reporting.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import yaml

from .errors import ParseError

DELIMITER = "---"

# Header lines start at document line 2; line 1 is the opening delimiter.
_HEADER_LINE_OFFSET = 2


@dataclass(frozen=True)
class Scalar:
    text: str
    line: int
    tag: str

    @property
    def is_null(self) -> bool:
        return self.tag.endswith(":null")


@dataclass(frozen=True)
class Sequence:
    items: tuple["Node", ...]
    line: int


@dataclass(frozen=True)
class MapEntry:
    key: str
    value: "Node"
    line: int


@dataclass(frozen=True)
class Mapping:
    entries: tuple[MapEntry, ...]
    line: int

    def keys(self) -> tuple[str, ...]:
        return tuple(e.key for e in self.entries)


Node = Union[Scalar, Sequence, Mapping]


@dataclass(frozen=True)
class SplitDocument:
    header: str
    body: str
    body_line: int


def split_document(text: str) -> SplitDocument:
    """Cut a document at its ``---`` delimiters.

    The body is everything after the first closing delimiter line,
    byte for byte; later ``---`` lines belong to the body.
    """
    lines = text.split("\n")
    if not lines or lines[0].strip() != DELIMITER:
        raise ParseError(
            f"document must open with a {DELIMITER!r} line", line=1
        )
    for index in range(1, len(lines)):
        if lines[index].strip() == DELIMITER:
            header = "\n".join(lines[1:index])
            body = "\n".join(lines[index + 1 :])
            return SplitDocument(header=header, body=body, body_line=index + 2)
    raise ParseError(f"missing closing {DELIMITER!r} line", line=len(lines))


def decode_header(header: str) -> Mapping:
    """Decode the header into positioned nodes.

    Raises ParseError for YAML syntax errors, non-mapping headers, and
    non-scalar keys. Duplicate keys are preserved here and rejected by the
    schema layer, where the offending field can be named.
    """
    try:
        root = yaml.compose(header, Loader=yaml.SafeLoader)
    except yaml.MarkedYAMLError as exc:
        line = None
        if exc.problem_mark is not None:
            line = exc.problem_mark.line + _HEADER_LINE_OFFSET
        raise ParseError(f"malformed header: {exc.problem}", line=line) from exc
    except yaml.YAMLError as exc:
        raise ParseError(f"malformed header: {exc}") from exc
    if root is None:
        return Mapping(entries=(), line=1)
    converted = _convert(root)
    if not isinstance(converted, Mapping):
        raise ParseError(
            "header must be a mapping of fields", line=converted.line
        )
    return converted


def _convert(node: yaml.Node) -> Node:
    line = node.start_mark.line + _HEADER_LINE_OFFSET
    if isinstance(node, yaml.ScalarNode):
        return Scalar(text=node.value, line=line, tag=node.tag)
    if isinstance(node, yaml.SequenceNode):
        return Sequence(items=tuple(_convert(item) for item in node.value), line=line)
    if isinstance(node, yaml.MappingNode):
        entries = []
        for key_node, value_node in node.value:
            if not isinstance(key_node, yaml.ScalarNode):
                raise ParseError(
                    "mapping keys must be plain strings",
                    line=key_node.start_mark.line + _HEADER_LINE_OFFSET,
                )
            entries.append(
                MapEntry(
                    key=key_node.value,
                    value=_convert(value_node),
                    line=key_node.start_mark.line + _HEADER_LINE_OFFSET,
                )
            )
        return Mapping(entries=tuple(entries), line=line)
    raise ParseError(f"unsupported header construct: {node!r}", line=line)


def as_string(node: Node, field: str, *, required_nonempty: bool = False) -> Scalar:
    if not isinstance(node, Scalar) or node.is_null:
        line = node.line if isinstance(node, (Scalar, Sequence, Mapping)) else None
        raise ParseError(f"field {field!r} must be a string", field=field, line=line)
    if required_nonempty and not node.text.strip():
        raise ParseError(f"field {field!r} must be nonempty", field=field, line=node.line)
    return node


def as_bool(node: Node, field: str) -> bool:
    if isinstance(node, Scalar):
        lowered = node.text.strip().lower()
        if lowered == "true":
            return True
        if lowered == "false":
            return False
    line = node.line if isinstance(node, (Scalar, Sequence, Mapping)) else None
    raise ParseError(
        f"field {field!r} must be true or false", field=field, line=line
    )


def as_sequence(node: Node, field: str) -> Sequence:
    if not isinstance(node, Sequence):
        line = node.line if isinstance(node, (Scalar, Sequence, Mapping)) else None
        raise ParseError(f"field {field!r} must be a list", field=field, line=line)
    return node


def as_mapping(node: Node, field: str) -> Mapping:
    if not isinstance(node, Mapping):
        line = node.line if isinstance(node, (Scalar, Sequence, Mapping)) else None
        raise ParseError(f"field {field!r} must be a mapping", field=field, line=line)
    return node
