import pytest
from hypothesis import given
from hypothesis import strategies as st

from traitbase import EntityId, Kind


def test_parse_render_identity():
    for text in ("P000001", "S000001", "T000042", "P999999"):
        assert str(EntityId.parse(text)) == text


def test_kinds():
    assert EntityId.parse("P000001").kind is Kind.PROPERTY
    assert EntityId.parse("S000010").kind is Kind.SPACE
    assert EntityId.parse("T000042").kind is Kind.THEOREM


@pytest.mark.parametrize(
    "bad",
    ["", "P1", "P0000001", "X000001", "p000001", "P00001", "P000001 ", "Q000001", "P000000"],
)
def test_rejects_malformed(bad):
    with pytest.raises(ValueError):
        EntityId.parse(bad)


def test_expected_kind_enforced():
    with pytest.raises(ValueError):
        EntityId.parse("S000001", Kind.PROPERTY)
    assert EntityId.parse("S000001", Kind.SPACE) == EntityId(Kind.SPACE, 1)


def test_number_must_be_positive():
    with pytest.raises(ValueError):
        EntityId(Kind.PROPERTY, 0)
    with pytest.raises(ValueError):
        EntityId(Kind.PROPERTY, 1_000_000)


def test_ordering_is_kind_then_number():
    ids = [
        EntityId.parse("T000001"),
        EntityId.parse("P000002"),
        EntityId.parse("S000001"),
        EntityId.parse("P000001"),
    ]
    assert [str(i) for i in sorted(ids)] == ["P000001", "P000002", "S000001", "T000001"]


@given(
    kind=st.sampled_from(list(Kind)),
    number=st.integers(min_value=1, max_value=999_999),
)
def test_roundtrip_property(kind, number):
    uid = EntityId(kind, number)
    assert EntityId.parse(str(uid)) == uid
