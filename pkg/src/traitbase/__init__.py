"""traitbase: a file-backed corpus of objects, boolean properties, cited
trait assertions, and implication theorems, with automated deduction.

The engine closes each space's asserted traits under the theorems (and
their contrapositives), records a proof trace for every derived value,
rejects contributions that contradict a theorem, answers conjunctive
queries with matches or an impossibility proof, and checks whether a
candidate theorem is already entailed by the corpus.
"""

from .bundle import (
    Bundle,
    canonical_path,
    dump_bundle,
    load_bundle,
    merge_documents,
    resolve_name,
)
from .deduction import (
    Closure,
    Contradiction,
    Counterexample,
    CounterexampleReport,
    ProofStep,
    RedundancyResult,
    check_redundant,
    close_bundle,
    expand_proof,
    find_counterexamples,
    propagate,
)
from .documents import (
    DocumentKind,
    extract_citation_tokens,
    parse_document,
    serialize_document,
)
from .errors import (
    BundleValidationError,
    Diagnostic,
    NameResolutionError,
    ParseError,
    QueryParseError,
)
from .ids import EntityId, Kind
from .logic import Literal, Query, Rule, compile_rules, parse_query, render_query
from .records import Citation, Property, Space, Theorem, TraitAssertion
from .search import (
    Explanation,
    ImpossibilityProof,
    SearchResult,
    Verdict,
    evaluate_space,
    explain_verdict,
    search,
)

__version__ = "0.1.0"

__all__ = [
    "Bundle",
    "BundleValidationError",
    "Citation",
    "Closure",
    "Contradiction",
    "Counterexample",
    "CounterexampleReport",
    "Diagnostic",
    "DocumentKind",
    "EntityId",
    "Explanation",
    "ImpossibilityProof",
    "Kind",
    "Literal",
    "NameResolutionError",
    "ParseError",
    "ProofStep",
    "Property",
    "Query",
    "QueryParseError",
    "RedundancyResult",
    "Rule",
    "SearchResult",
    "Space",
    "Theorem",
    "TraitAssertion",
    "Verdict",
    "canonical_path",
    "check_redundant",
    "close_bundle",
    "compile_rules",
    "dump_bundle",
    "evaluate_space",
    "expand_proof",
    "explain_verdict",
    "extract_citation_tokens",
    "find_counterexamples",
    "load_bundle",
    "merge_documents",
    "parse_document",
    "parse_query",
    "propagate",
    "render_query",
    "resolve_name",
    "search",
    "serialize_document",
]
