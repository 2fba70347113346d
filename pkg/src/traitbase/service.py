"""Read-only HTTP JSON API over one loaded bundle.

The bundle is loaded, validated, and closed once at startup; a bundle that
fails validation or contains a contradictory space refuses to serve. All
request handlers read the same immutable snapshot, so concurrency needs no
locking, and identical requests produce byte-identical responses.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Any

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from . import output
from .bundle import Bundle, load_bundle, merge_documents, resolve_name
from .deduction import (
    Closure,
    Contradiction,
    check_redundant,
    close_bundle,
    expand_proof,
    find_counterexamples,
    PropertyAsserted,
    PropertyUnknown,
)
from .errors import (
    BundleValidationError,
    NameResolutionError,
    QueryParseError,
)
from .ids import EntityId, Kind
from .logic import Literal, compile_rules, parse_query
from .search import search


@dataclass
class ApiConfig:
    bundle_path: str | Path = "."
    bind: str = "127.0.0.1"
    port: int = 8175
    read_only: bool = True
    cors_origins: tuple[str, ...] = ("*",)


class ApiError(Exception):
    def __init__(
        self,
        status: int,
        code: str,
        message: str,
        location: str | None = None,
        extra: dict[str, Any] | None = None,
    ):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message
        self.location = location
        self.extra = extra or {}


def _error_body(
    code: str, message: str, location: str | None, extra: dict[str, Any] | None = None
) -> dict[str, Any]:
    body = {"code": code, "message": message, "location": location}
    body.update(extra or {})
    return body


def _parse_id(raw: str, kind: Kind) -> EntityId:
    try:
        return EntityId.parse(raw, kind)
    except ValueError:
        raise ApiError(404, "not_found", f"no such {kind.name.lower()}: {raw}")


def _page(items: list, offset: int, limit: int | None) -> dict[str, Any]:
    window = items[offset : offset + limit if limit is not None else None]
    return {"items": window, "total": len(items), "offset": offset, "limit": limit}


def create_app(bundle: Bundle, config: ApiConfig | None = None) -> FastAPI:
    """Build the API over an already-validated bundle.

    Raises BundleValidationError when deduction finds a contradictory
    space, so a broken bundle can never come up behind the API.
    """
    config = config or ApiConfig()
    rules = compile_rules(bundle.theorems.values())
    closures = close_bundle(bundle, rules=rules)
    contradictions = {
        space: result
        for space, result in closures.items()
        if isinstance(result, Contradiction)
    }
    if contradictions:
        from .errors import Diagnostic

        raise BundleValidationError(
            [
                Diagnostic(
                    path=None,
                    line=None,
                    field=None,
                    code="contradiction",
                    message=f"space {space} contradicts the theorems on {c.property}",
                )
                for space, c in contradictions.items()
            ]
        )

    app = FastAPI(title="traitbase", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=list(config.cors_origins),
        allow_methods=["GET", "POST"],
        allow_headers=["*"],
    )

    @app.exception_handler(ApiError)
    async def handle_api_error(request: Request, exc: ApiError) -> JSONResponse:
        return JSONResponse(
            status_code=exc.status,
            content=_error_body(exc.code, exc.message, exc.location, exc.extra),
        )

    @app.exception_handler(RequestValidationError)
    async def handle_validation(request: Request, exc: RequestValidationError) -> JSONResponse:
        return JSONResponse(
            status_code=400,
            content=_error_body("invalid_request", str(exc.errors()[:1]), None),
        )

    @app.get("/properties")
    def list_properties(offset: int = 0, limit: int | None = None) -> dict:
        items = [output.property_json(p) for p in bundle.properties.values()]
        return _page(items, offset, limit)

    @app.get("/properties/{pid}")
    def get_property(pid: str) -> dict:
        uid = _parse_id(pid, Kind.PROPERTY)
        if uid not in bundle.properties:
            raise ApiError(404, "not_found", f"no such property: {pid}")
        return output.property_json(bundle.properties[uid])

    @app.get("/spaces")
    def list_spaces(offset: int = 0, limit: int | None = None) -> dict:
        items = [output.space_json(s) for s in bundle.spaces.values()]
        return _page(items, offset, limit)

    @app.get("/spaces/{sid}")
    def get_space(sid: str) -> dict:
        uid = _parse_id(sid, Kind.SPACE)
        if uid not in bundle.spaces:
            raise ApiError(404, "not_found", f"no such space: {sid}")
        return output.space_json(bundle.spaces[uid])

    @app.get("/spaces/{sid}/traits")
    def get_traits(sid: str) -> dict:
        uid = _parse_id(sid, Kind.SPACE)
        if uid not in bundle.spaces:
            raise ApiError(404, "not_found", f"no such space: {sid}")
        closure = closures[uid]
        assert isinstance(closure, Closure)
        return output.trait_rows_json(uid, closure, bundle)

    @app.get("/spaces/{sid}/traits/{pid}/proof")
    def get_proof(sid: str, pid: str) -> dict:
        space_uid = _parse_id(sid, Kind.SPACE)
        prop_uid = _parse_id(pid, Kind.PROPERTY)
        if space_uid not in bundle.spaces:
            raise ApiError(404, "not_found", f"no such space: {sid}")
        if prop_uid not in bundle.properties:
            raise ApiError(404, "not_found", f"no such property: {pid}")
        closure = closures[space_uid]
        assert isinstance(closure, Closure)
        try:
            steps = expand_proof(closure, prop_uid)
        except PropertyUnknown:
            raise ApiError(
                404, "trait_unknown", f"{sid} has no known value for {pid}"
            )
        except PropertyAsserted:
            raise ApiError(
                404,
                "trait_asserted",
                f"{sid}|{pid} is asserted, not derived; see its citations instead",
            )
        return {
            "space": str(space_uid),
            "property": str(prop_uid),
            "value": closure.assignment[prop_uid],
            "steps": output.trace_json(steps, bundle),
        }

    @app.get("/theorems")
    def list_theorems(offset: int = 0, limit: int | None = None) -> dict:
        items = [output.theorem_json(t, bundle) for t in bundle.theorems.values()]
        return _page(items, offset, limit)

    @app.get("/theorems/{tid}")
    def get_theorem(tid: str) -> dict:
        uid = _parse_id(tid, Kind.THEOREM)
        if uid not in bundle.theorems:
            raise ApiError(404, "not_found", f"no such theorem: {tid}")
        return output.theorem_json(bundle.theorems[uid], bundle)

    @app.get("/search")
    def get_search(q: str) -> dict:
        try:
            query = parse_query(q, bundle)
        except QueryParseError as exc:
            raise ApiError(
                400,
                "query_parse_error",
                exc.message,
                location=exc.term,
                extra={"suggestions": list(exc.suggestions)},
            ) from exc
        result = search(query, bundle, closures, rules=rules)
        return output.search_json(result, bundle)

    @app.post("/theorems/check")
    def post_check(body: dict) -> dict:
        premises, conclusion = _candidate_from_body(body, bundle)
        verdict = check_redundant(premises, conclusion, rules)
        report = None
        if verdict.verdict in ("not_derivable", "refuted_by_theory"):
            report = find_counterexamples(premises, conclusion, bundle, closures)
        return output.redundancy_json(verdict, report, bundle)

    @app.post("/validate")
    def post_validate(body: dict) -> JSONResponse:
        documents = body.get("documents")
        if not isinstance(documents, list):
            raise ApiError(400, "invalid_request", "body needs a 'documents' list")
        pairs = []
        for i, doc in enumerate(documents):
            if (
                not isinstance(doc, dict)
                or not isinstance(doc.get("path"), str)
                or not isinstance(doc.get("text"), str)
            ):
                raise ApiError(
                    400,
                    "invalid_request",
                    "each document needs string 'path' and 'text'",
                    location=f"documents[{i}]",
                )
            pairs.append((doc["path"], doc["text"]))
        merged, diagnostics = merge_documents(bundle, pairs)
        if merged is None:
            return JSONResponse(
                status_code=200,
                content={
                    "ok": False,
                    "errors": output.diagnostics_json(diagnostics),
                    "contradictions": [],
                },
            )
        merged_closures = close_bundle(merged)
        conflicts = [
            output.contradiction_json(result, merged)
            for result in merged_closures.values()
            if isinstance(result, Contradiction)
        ]
        if conflicts:
            return JSONResponse(
                status_code=409,
                content={"ok": False, "errors": [], "contradictions": conflicts},
            )
        return JSONResponse(
            status_code=200, content={"ok": True, "errors": [], "contradictions": []}
        )

    return app


def _candidate_from_body(
    body: dict, bundle: Bundle
) -> tuple[dict[EntityId, bool], Literal]:
    premises_raw = body.get("if")
    conclusion_raw = body.get("then")
    if not isinstance(premises_raw, dict) or not premises_raw:
        raise ApiError(400, "invalid_request", "'if' must be a nonempty object", "if")
    if not isinstance(conclusion_raw, dict) or len(conclusion_raw) != 1:
        raise ApiError(
            400, "invalid_request", "'then' must contain exactly one property", "then"
        )

    def resolve(name: str, where: str) -> EntityId:
        try:
            return resolve_name(name, bundle, Kind.PROPERTY)
        except NameResolutionError as exc:
            raise ApiError(400, "unknown_property", str(exc), where) from exc

    premises: dict[EntityId, bool] = {}
    for name, value in premises_raw.items():
        if not isinstance(value, bool):
            raise ApiError(400, "invalid_request", f"'{name}' must map to a boolean", "if")
        prop = resolve(name, "if")
        if prop in premises:
            raise ApiError(400, "invalid_request", f"premise {prop} repeated", "if")
        premises[prop] = value
    (concl_name, concl_value), = conclusion_raw.items()
    if not isinstance(concl_value, bool):
        raise ApiError(400, "invalid_request", "conclusion must map to a boolean", "then")
    concl_prop = resolve(concl_name, "then")
    if concl_prop in premises:
        raise ApiError(
            400, "invalid_request", "conclusion property appears among premises", "then"
        )
    return premises, Literal(concl_prop, concl_value)


def serve(config: ApiConfig) -> None:
    """Load the bundle and run the API, or print the validation report and
    raise SystemExit when the bundle cannot be served."""
    import sys

    import uvicorn

    try:
        bundle = load_bundle(config.bundle_path)
        app = create_app(bundle, config)
    except BundleValidationError as exc:
        print(str(exc), file=sys.stderr)
        raise SystemExit(1)
    uvicorn.run(app, host=config.bind, port=config.port, log_level="warning")
