from __future__ import annotations

import shutil
import zipfile

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import LISTINGS
from traitbase import (
    Bundle,
    BundleValidationError,
    EntityId,
    Kind,
    NameResolutionError,
    canonical_path,
    dump_bundle,
    load_bundle,
    resolve_name,
)
from traitbase.bundle import merge_documents

P1 = EntityId.parse("P000001")
S1 = EntityId.parse("S000001")


def test_listings_counts(listings_bundle):
    assert listings_bundle.counts() == {
        "properties": 3,
        "spaces": 1,
        "theorems": 2,
        "assertions": 1,
    }


def test_sources_are_relative_paths(listings_bundle):
    assert listings_bundle.properties[P1].source == "properties/P000001.md"
    trait = listings_bundle.assertions[(S1, EntityId.parse("P000052"))]
    assert trait.source == "spaces/S000001/properties/P000052.md"


def test_iteration_is_uid_sorted(mini_bundle):
    uids = [str(u) for u in mini_bundle.spaces]
    assert uids == sorted(uids)
    keys = list(mini_bundle.assertions)
    assert keys == sorted(keys)


def test_empty_tree_is_empty_bundle(tmp_path):
    (tmp_path / "properties").mkdir()
    (tmp_path / "spaces").mkdir()
    bundle = load_bundle(tmp_path)
    assert bundle.counts() == {
        "properties": 0,
        "spaces": 0,
        "theorems": 0,
        "assertions": 0,
    }


def test_dangling_space_reference(tmp_path):
    shutil.copytree(LISTINGS, tmp_path / "b")
    bad = tmp_path / "b" / "spaces" / "S000099" / "properties"
    bad.mkdir(parents=True)
    (bad / "P000001.md").write_text(
        "---\nspace: S000099\nproperty: P000001\nvalue: true\n---\n"
    )
    with pytest.raises(BundleValidationError) as info:
        load_bundle(tmp_path / "b")
    findings = [d for d in info.value.diagnostics if d.code == "dangling_reference"]
    assert findings
    assert "S000099" in findings[0].message
    assert findings[0].path == "spaces/S000099/properties/P000001.md"


def test_all_errors_collected_not_fail_fast(tmp_path):
    shutil.copytree(LISTINGS, tmp_path / "b")
    root = tmp_path / "b"
    # one parse error, one dangling reference
    (root / "properties" / "P000009.md").write_text("---\nuid: P000009\n---\n")
    trait_dir = root / "spaces" / "S000098" / "properties"
    trait_dir.mkdir(parents=True)
    (trait_dir / "P000001.md").write_text(
        "---\nspace: S000098\nproperty: P000001\nvalue: true\n---\n"
    )
    with pytest.raises(BundleValidationError) as info:
        load_bundle(root)
    codes = {d.code for d in info.value.diagnostics}
    assert "parse_error" in codes
    assert "dangling_reference" in codes
    assert all(d.path is not None for d in info.value.diagnostics)


def test_duplicate_assertion_rejected():
    records = list(load_bundle(LISTINGS).records())
    duplicate = next(r for r in records if canonical_path(r).startswith("spaces/S000001/properties"))
    clone = type(duplicate)(**{**duplicate.__dict__, "value": False, "source": None})
    with pytest.raises(BundleValidationError) as info:
        Bundle.from_records(records + [clone])
    assert any(d.code == "duplicate_assertion" for d in info.value.diagnostics)


def test_name_collision_rejected(tmp_path):
    shutil.copytree(LISTINGS, tmp_path / "b")
    (tmp_path / "b" / "properties" / "P000010.md").write_text(
        '---\nuid: P000010\nname: "kolmogorov"\n---\n'
    )
    with pytest.raises(BundleValidationError) as info:
        load_bundle(tmp_path / "b")
    collisions = [d for d in info.value.diagnostics if d.code == "name_collision"]
    assert collisions and "P000001" in collisions[0].message


def test_path_header_mismatch(tmp_path):
    shutil.copytree(LISTINGS, tmp_path / "b")
    (tmp_path / "b" / "properties" / "P000011.md").write_text(
        '---\nuid: P000012\nname: "Off by one"\n---\n'
    )
    with pytest.raises(BundleValidationError) as info:
        load_bundle(tmp_path / "b")
    assert any(d.code == "path_mismatch" for d in info.value.diagnostics)


def test_unrecognized_path(tmp_path):
    shutil.copytree(LISTINGS, tmp_path / "b")
    (tmp_path / "b" / "properties" / "notes.md").write_text("---\nuid: P000001\n---\n")
    with pytest.raises(BundleValidationError) as info:
        load_bundle(tmp_path / "b")
    assert any(d.code == "unrecognized_path" for d in info.value.diagnostics)


def test_load_is_order_independent(tmp_path, listings_bundle):
    # same documents, different directory creation order
    clone = tmp_path / "clone"
    for record in reversed(list(listings_bundle.records())):
        target = clone / canonical_path(record)
        target.parent.mkdir(parents=True, exist_ok=True)
        source = LISTINGS / canonical_path(record)
        target.write_text(source.read_text(encoding="utf-8"), encoding="utf-8")
    reloaded = load_bundle(clone)
    assert reloaded == listings_bundle
    assert list(reloaded.properties) == list(listings_bundle.properties)


def test_zip_bundle(tmp_path, listings_bundle):
    archive = tmp_path / "bundle.zip"
    with zipfile.ZipFile(archive, "w") as zf:
        for path in sorted(LISTINGS.rglob("*.md"), reverse=True):
            zf.write(path, path.relative_to(LISTINGS).as_posix())
    assert load_bundle(archive) == listings_bundle


def test_dump_bundle_roundtrip(tmp_path, listings_bundle):
    out = tmp_path / "dump"
    dump_bundle(listings_bundle, out)
    reloaded = load_bundle(out)
    assert reloaded.counts() == listings_bundle.counts()
    assert reloaded.properties[P1].name == "$T_0$"
    # byte-stable: dumping again changes nothing
    before = {p: p.read_bytes() for p in out.rglob("*.md")}
    dump_bundle(reloaded, out)
    assert {p: p.read_bytes() for p in out.rglob("*.md")} == before


def test_merge_documents_replaces_and_extends(listings_bundle):
    new_trait = (
        "spaces/S000001/properties/P000002.md",
        "---\nspace: S000001\nproperty: P000002\nvalue: true\n---\n",
    )
    merged, diagnostics = merge_documents(listings_bundle, [new_trait])
    assert not diagnostics
    assert merged is not None
    assert len(merged.assertions) == 2
    assert len(listings_bundle.assertions) == 1  # untouched


def test_merge_documents_reports_errors(listings_bundle):
    merged, diagnostics = merge_documents(
        listings_bundle, [("properties/P000031.md", "---\nuid: P000031\n---\n")]
    )
    assert merged is None
    assert diagnostics and diagnostics[0].path == "properties/P000031.md"


# --- name resolution ---------------------------------------------------------


def test_resolve_by_alias(listings_bundle):
    assert resolve_name("Kolmogorov", listings_bundle, Kind.PROPERTY) == P1


def test_resolve_uid_passthrough(listings_bundle):
    assert resolve_name("P000001", listings_bundle, Kind.PROPERTY) == P1


def test_resolve_case_insensitive_alias(listings_bundle):
    assert resolve_name("t0", listings_bundle, Kind.PROPERTY) == P1
    assert resolve_name("  DISCRETE  ", listings_bundle, Kind.PROPERTY) == EntityId.parse(
        "P000052"
    )


def test_resolve_space_namespace(listings_bundle):
    assert resolve_name("finite discrete topology", listings_bundle, Kind.SPACE) == S1
    with pytest.raises(NameResolutionError):
        resolve_name("Kolmogorov", listings_bundle, Kind.SPACE)


def test_resolve_unknown_uid(listings_bundle):
    with pytest.raises(NameResolutionError):
        resolve_name("P000999", listings_bundle, Kind.PROPERTY)


def test_resolve_suggestions(listings_bundle):
    with pytest.raises(NameResolutionError) as info:
        resolve_name("Disrete", listings_bundle, Kind.PROPERTY)
    assert "Discrete" in info.value.suggestions


# --- mutation property: zero errors implies invariants hold ------------------

_DOCS = sorted(p.relative_to(LISTINGS).as_posix() for p in LISTINGS.rglob("*.md"))

_mutations = st.lists(
    st.tuples(
        st.sampled_from(_DOCS),
        st.sampled_from(["drop_line", "duplicate_line", "flip_digit", "uppercase"]),
        st.integers(min_value=0, max_value=11),
    ),
    min_size=0,
    max_size=3,
)


def _mutate(text: str, op: str, seed: int) -> str:
    lines = text.split("\n")
    pick = seed % max(len(lines), 1)
    if op == "drop_line":
        return "\n".join(lines[:pick] + lines[pick + 1 :])
    if op == "duplicate_line":
        return "\n".join(lines[: pick + 1] + lines[pick:])
    if op == "flip_digit":
        digits = [i for i, ch in enumerate(text) if ch.isdigit()]
        if not digits:
            return text
        at = digits[seed % len(digits)]
        replacement = "9" if text[at] != "9" else "8"
        return text[:at] + replacement + text[at + 1 :]
    return text.upper()


@settings(max_examples=60, deadline=None)
@given(_mutations)
def test_mutated_fixture_errors_localized_or_bundle_valid(tmp_path_factory, mutations):
    root = tmp_path_factory.mktemp("mutated")
    for relative in _DOCS:
        text = (LISTINGS / relative).read_text(encoding="utf-8")
        for target, op, seed in mutations:
            if target == relative:
                text = _mutate(text, op, seed)
        out = root / relative
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text, encoding="utf-8")
    try:
        bundle = load_bundle(root)
    except BundleValidationError as exc:
        assert exc.diagnostics
        for diagnostic in exc.diagnostics:
            assert diagnostic.path
            assert diagnostic.message
        return
    # no errors: every structural invariant holds
    for uid, record in bundle.properties.items():
        assert record.uid == uid
    for (space, prop), trait in bundle.assertions.items():
        assert space in bundle.spaces
        assert prop in bundle.properties
    for theorem in bundle.theorems.values():
        for prop in theorem.mentioned_properties:
            assert prop in bundle.properties
    names = [
        n.strip().casefold()
        for record in bundle.properties.values()
        for n in (record.name, *record.aliases)
    ]
    assert len(names) == len(set(names))
