from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import LISTINGS
from traitbase import (
    Citation,
    DocumentKind,
    EntityId,
    ParseError,
    Property,
    Space,
    Theorem,
    TraitAssertion,
    extract_citation_tokens,
    parse_document,
    serialize_document,
)
from traitbase.ids import Kind

STEEN = Citation("doi", "10.1007/978-1-4612-6290-9", "Counterexamples in Topology")


def read_fixture(relative: str) -> str:
    return (LISTINGS / relative).read_text(encoding="utf-8")


def test_property_document():
    record = parse_document(read_fixture("properties/P000001.md"), DocumentKind.PROPERTY)
    assert isinstance(record, Property)
    assert str(record.uid) == "P000001"
    assert record.name == "$T_0$"
    assert record.aliases == ("Kolmogorov", "T0")
    assert record.refs == (STEEN,)
    assert "{{doi:10.1007/978-1-4612-6290-9}}" in record.description
    assert record.tokens == (Citation("doi", "10.1007/978-1-4612-6290-9"),)


def test_space_document():
    record = parse_document(
        read_fixture("spaces/S000001/README.md"), DocumentKind.SPACE
    )
    assert isinstance(record, Space)
    assert str(record.uid) == "S000001"
    assert record.name == "Discrete topology on a two-point set"
    assert record.aliases == ("Finite Discrete Topology",)
    assert record.refs == (
        STEEN,
        Citation("wikipedia", "Discrete_space", "Discrete Space on Wikipedia"),
    )
    # the body's single braces are plain text, not citation tokens
    assert record.tokens == (Citation("doi", "10.1007/978-1-4612-6290-9"),)


def test_trait_document_with_header_comments():
    record = parse_document(
        read_fixture("spaces/S000001/properties/P000052.md"), DocumentKind.TRAIT
    )
    assert isinstance(record, TraitAssertion)
    assert str(record.space) == "S000001"
    assert str(record.property) == "P000052"
    assert record.value is True
    assert record.refs == (STEEN,)
    assert record.description.startswith("All subsets of this space are open")


def test_theorem_document():
    record = parse_document(read_fixture("theorems/T000042.md"), DocumentKind.THEOREM)
    assert isinstance(record, Theorem)
    assert str(record.uid) == "T000042"
    assert record.premises == ((EntityId.parse("P000052"), True),)
    assert record.conclusion == (EntityId.parse("P000002"), True)


def test_minimal_record():
    record = parse_document('---\nuid: P000009\nname: "X"\n---\n', DocumentKind.PROPERTY)
    assert str(record.uid) == "P000009"
    assert record.name == "X"
    assert record.aliases == ()
    assert record.refs == ()
    assert record.description == ""
    assert record.tokens == ()


def test_multi_premise_theorem_keeps_order():
    text = (
        "---\nuid: T000001\nif:\n  P000002: true\n  P000001: false\n"
        "then:\n  P000003: true\n---\n"
    )
    record = parse_document(text, DocumentKind.THEOREM)
    assert record.premises == (
        (EntityId.parse("P000002"), True),
        (EntityId.parse("P000001"), False),
    )


# --- error cases -------------------------------------------------------------


def parse_error(text: str, kind: DocumentKind) -> ParseError:
    with pytest.raises(ParseError) as info:
        parse_document(text, kind)
    return info.value


def test_missing_uid():
    error = parse_error('---\nname: "X"\n---\n', DocumentKind.PROPERTY)
    assert error.field == "uid"


def test_malformed_uid_carries_location():
    error = parse_error('---\nuid: P01\nname: "X"\n---\n', DocumentKind.PROPERTY)
    assert error.field == "uid"
    assert error.line == 2


def test_wrong_uid_kind():
    error = parse_error('---\nuid: S000001\nname: "X"\n---\n', DocumentKind.PROPERTY)
    assert error.field == "uid"


def test_unknown_field_rejected():
    error = parse_error(
        '---\nuid: P000001\nname: "X"\ncolor: red\n---\n', DocumentKind.PROPERTY
    )
    assert error.field == "color"
    assert error.line == 4


def test_duplicate_field_rejected():
    error = parse_error(
        '---\nuid: P000001\nname: "X"\nname: "Y"\n---\n', DocumentKind.PROPERTY
    )
    assert error.field == "name"


def test_missing_delimiters():
    assert parse_error("uid: P000001\n", DocumentKind.PROPERTY).line == 1
    error = parse_error("---\nuid: P000001\n", DocumentKind.PROPERTY)
    assert "closing" in error.message


def test_empty_premises_rejected():
    error = parse_error(
        "---\nuid: T000001\nif: {}\nthen:\n  P000001: true\n---\n",
        DocumentKind.THEOREM,
    )
    assert error.field == "if"


def test_two_conclusions_rejected():
    error = parse_error(
        "---\nuid: T000001\nif:\n  P000002: true\nthen:\n  P000001: true\n  P000003: true\n---\n",
        DocumentKind.THEOREM,
    )
    assert error.field == "then"


def test_conclusion_among_premises_rejected():
    error = parse_error(
        "---\nuid: T000001\nif:\n  P000001: true\nthen:\n  P000001: false\n---\n",
        DocumentKind.THEOREM,
    )
    assert "premises" in error.message


def test_non_boolean_trait_value():
    error = parse_error(
        "---\nspace: S000001\nproperty: P000001\nvalue: maybe\n---\n",
        DocumentKind.TRAIT,
    )
    assert error.field == "value"
    assert error.line == 4


def test_citation_without_scheme():
    error = parse_error(
        '---\nuid: P000001\nname: "X"\nrefs:\n  - name: lonely\n---\n',
        DocumentKind.PROPERTY,
    )
    assert error.field == "refs"


def test_citation_with_two_schemes():
    error = parse_error(
        '---\nuid: P000001\nname: "X"\nrefs:\n  - doi: a\n    wikipedia: b\n---\n',
        DocumentKind.PROPERTY,
    )
    assert "two schemes" in error.message


def test_unknown_scheme_preserved():
    record = parse_document(
        '---\nuid: P000001\nname: "X"\nrefs:\n  - zbmath: 1234.56789\n---\n',
        DocumentKind.PROPERTY,
    )
    assert record.refs == (Citation("zbmath", "1234.56789"),)


def test_yaml_syntax_error_has_line():
    error = parse_error('---\nuid: P000001\nname: "unterminated\n---\n', DocumentKind.PROPERTY)
    assert error.line is not None


# --- citation tokens ---------------------------------------------------------


def test_tokens_extracted_in_order():
    tokens = extract_citation_tokens("a {{doi:x}} b {{mathse:123}} c")
    assert tokens == (Citation("doi", "x"), Citation("mathse", "123"))


def test_unmatched_open_is_error():
    with pytest.raises(ParseError) as info:
        extract_citation_tokens("fine\nbroken {{doi:x", first_line=10)
    assert info.value.line == 11


def test_nested_token_is_error():
    with pytest.raises(ParseError):
        extract_citation_tokens("{{doi:{{x}}}}")


def test_token_without_colon_is_error():
    with pytest.raises(ParseError):
        extract_citation_tokens("{{justtext}}")


def test_lone_close_is_plain_text():
    assert extract_citation_tokens("a }} b") == ()


def test_single_braces_are_plain_text():
    assert extract_citation_tokens(r"$X=\{0,1\}$") == ()


def test_body_token_error_in_document_names_line():
    text = "---\nuid: P000001\nname: \"X\"\n---\nline one\nbad {{doi:x\n"
    error = parse_error(text, DocumentKind.PROPERTY)
    assert error.line == 6


# --- round-trips -------------------------------------------------------------

FIXTURE_DOCS = [
    ("properties/P000001.md", DocumentKind.PROPERTY),
    ("properties/P000002.md", DocumentKind.PROPERTY),
    ("properties/P000052.md", DocumentKind.PROPERTY),
    ("spaces/S000001/README.md", DocumentKind.SPACE),
    ("spaces/S000001/properties/P000052.md", DocumentKind.TRAIT),
    ("theorems/T000042.md", DocumentKind.THEOREM),
    ("theorems/T000119.md", DocumentKind.THEOREM),
]


@pytest.mark.parametrize("relative,kind", FIXTURE_DOCS)
def test_fixture_roundtrip(relative, kind):
    record = parse_document(read_fixture(relative), kind)
    serialized = serialize_document(record)
    assert serialize_document(record) == serialized  # stable bytes
    assert parse_document(serialized, kind) == record


# hypothesis strategies for whole records

names = st.text(
    st.characters(blacklist_categories=("Cs",)), min_size=1, max_size=30
).filter(lambda s: s.strip())
alias_lists = st.lists(names, max_size=3).map(tuple)
schemes = st.sampled_from(["doi", "wikipedia", "mathse", "mronline", "zbmath"])
keys = st.text(
    st.characters(blacklist_categories=("Cs", "Cc")), min_size=1, max_size=20
).filter(lambda s: s.strip() == s and s)
citations = st.builds(
    Citation, scheme=schemes, key=keys, name=st.one_of(st.none(), names)
)
ref_lists = st.lists(citations, max_size=3).map(tuple)
bodies = st.text(
    st.characters(blacklist_categories=("Cs",)), max_size=120
).filter(lambda s: "{{" not in s)
property_ids = st.integers(min_value=1, max_value=999_999).map(
    lambda n: EntityId(Kind.PROPERTY, n)
)


@st.composite
def property_records(draw):
    return Property(
        uid=draw(property_ids),
        name=draw(names),
        aliases=draw(alias_lists),
        refs=draw(ref_lists),
        description=draw(bodies),
    )


@st.composite
def theorem_records(draw):
    props = draw(
        st.lists(property_ids, min_size=2, max_size=4, unique=True)
    )
    values = draw(st.lists(st.booleans(), min_size=len(props), max_size=len(props)))
    premises = tuple(zip(props[:-1], values[:-1]))
    return Theorem(
        uid=EntityId(Kind.THEOREM, draw(st.integers(min_value=1, max_value=999_999))),
        premises=premises,
        conclusion=(props[-1], values[-1]),
        refs=draw(ref_lists),
        description=draw(bodies),
    )


@given(property_records())
def test_generated_property_roundtrip(record):
    assert parse_document(serialize_document(record), DocumentKind.PROPERTY) == record


@given(theorem_records())
def test_generated_theorem_roundtrip(record):
    assert parse_document(serialize_document(record), DocumentKind.THEOREM) == record
