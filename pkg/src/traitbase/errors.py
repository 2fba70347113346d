"""Error types shared across parsing, bundle loading, and name resolution."""

from __future__ import annotations

from dataclasses import dataclass


class ParseError(Exception):
    """A defect in a single document, located by line and field."""

    def __init__(
        self,
        message: str,
        *,
        line: int | None = None,
        field: str | None = None,
        path: str | None = None,
    ) -> None:
        super().__init__(message)
        self.message = message
        self.line = line
        self.field = field
        self.path = path

    def __str__(self) -> str:
        where = []
        if self.path is not None:
            where.append(self.path)
        if self.line is not None:
            where.append(f"line {self.line}")
        if self.field is not None:
            where.append(f"field {self.field!r}")
        if where:
            return f"{self.message} ({', '.join(where)})"
        return self.message


@dataclass(frozen=True)
class Diagnostic:
    """One finding of a bundle validation pass."""

    path: str | None
    line: int | None
    field: str | None
    code: str
    message: str

    @classmethod
    def from_parse_error(cls, error: ParseError, path: str | None = None) -> Diagnostic:
        return cls(
            path=error.path or path,
            line=error.line,
            field=error.field,
            code="parse_error",
            message=error.message,
        )

    def render(self) -> str:
        location = self.path or "<input>"
        if self.line is not None:
            location += f":{self.line}"
        suffix = f" [{self.field}]" if self.field else ""
        return f"{location}: {self.code}: {self.message}{suffix}"


class BundleValidationError(Exception):
    """Aggregate of every diagnostic found while loading or merging a bundle."""

    def __init__(self, diagnostics: list[Diagnostic] | tuple[Diagnostic, ...]) -> None:
        self.diagnostics = tuple(diagnostics)
        summary = f"{len(self.diagnostics)} validation error(s)"
        super().__init__(summary)

    def __str__(self) -> str:
        lines = [f"{len(self.diagnostics)} validation error(s):"]
        lines.extend(d.render() for d in self.diagnostics)
        return "\n".join(lines)


class NameResolutionError(Exception):
    """A name, alias, or uid that matches nothing in the bundle."""

    def __init__(self, text: str, kind_label: str, suggestions: tuple[str, ...] = ()) -> None:
        self.text = text
        self.kind_label = kind_label
        self.suggestions = suggestions
        message = f"no {kind_label} matches {text!r}"
        if suggestions:
            message += f" (did you mean: {', '.join(suggestions)}?)"
        super().__init__(message)


class QueryParseError(Exception):
    """A query term that cannot be turned into a literal."""

    def __init__(
        self,
        message: str,
        *,
        term: str | None = None,
        suggestions: tuple[str, ...] = (),
    ) -> None:
        super().__init__(message)
        self.message = message
        self.term = term
        self.suggestions = suggestions
