from __future__ import annotations

import pytest
from fastapi.testclient import TestClient

from conftest import LISTINGS, MINI
from traitbase import BundleValidationError, load_bundle
from traitbase.service import ApiConfig, create_app


@pytest.fixture(scope="module")
def listings_client():
    bundle = load_bundle(LISTINGS)
    return TestClient(create_app(bundle))


@pytest.fixture(scope="module")
def mini_client():
    bundle = load_bundle(MINI)
    return TestClient(create_app(bundle))


def test_list_properties(listings_client):
    payload = listings_client.get("/properties").json()
    assert payload["total"] == 3
    assert [p["uid"] for p in payload["items"]] == ["P000001", "P000002", "P000052"]
    assert payload["items"][0]["name"] == "$T_0$"
    assert payload["items"][0]["aliases"] == ["Kolmogorov", "T0"]


def test_pagination(mini_client):
    payload = mini_client.get("/properties", params={"offset": 1, "limit": 2}).json()
    assert payload["total"] == 14
    assert len(payload["items"]) == 2
    assert payload["offset"] == 1


def test_get_property(listings_client):
    payload = listings_client.get("/properties/P000001").json()
    assert payload["uid"] == "P000001"
    assert payload["refs"][0] == {
        "scheme": "doi",
        "key": "10.1007/978-1-4612-6290-9",
        "name": "Counterexamples in Topology",
    }


def test_unknown_property_404(listings_client):
    response = listings_client.get("/properties/P999999")
    assert response.status_code == 404
    body = response.json()
    assert body["code"] == "not_found"
    assert "message" in body


def test_malformed_id_404(listings_client):
    assert listings_client.get("/properties/banana").status_code == 404


def test_get_space_and_traits(listings_client):
    space = listings_client.get("/spaces/S000001").json()
    assert space["name"] == "Discrete topology on a two-point set"
    traits = listings_client.get("/spaces/S000001/traits").json()
    rows = {row["property"]: row for row in traits["traits"]}
    assert rows["P000052"]["provenance"] == "asserted"
    assert rows["P000052"]["refs"][0]["scheme"] == "doi"
    assert rows["P000001"]["provenance"] == "derived"
    assert rows["P000001"]["value"] is True
    assert traits["unknown"] == []


def test_trait_proof_endpoint(listings_client):
    payload = listings_client.get("/spaces/S000001/traits/P000001/proof").json()
    assert payload["value"] is True
    assert [s["theorem"] for s in payload["steps"]] == ["T000042", "T000119"]
    step = payload["steps"][0]
    assert set(step) == {"derived", "theorem", "mode", "supports"}
    assert step["mode"] == "forward"


def test_proof_of_asserted_trait_is_distinguished(listings_client):
    response = listings_client.get("/spaces/S000001/traits/P000052/proof")
    assert response.status_code == 404
    assert response.json()["code"] == "trait_asserted"
    response = listings_client.get("/spaces/S000001/traits/P000002/proof")
    assert response.status_code == 200
    unknown = TestClient(create_app(load_bundle(MINI))).get(
        "/spaces/S000107/traits/P000100/proof"
    )
    assert unknown.status_code == 404
    assert unknown.json()["code"] == "trait_unknown"


def test_theorem_endpoints(listings_client):
    listing = listings_client.get("/theorems").json()
    assert [t["uid"] for t in listing["items"]] == ["T000042", "T000119"]
    theorem = listings_client.get("/theorems/T000042").json()
    assert theorem["if"] == {"P000052": True}
    assert theorem["then"] == {"P000002": True}
    assert theorem["premises"][0]["name"] == "Discrete"
    assert theorem["conclusion"]["property"] == "P000002"


def test_search_endpoint_with_impossibility(listings_client):
    response = listings_client.get("/search", params={"q": "Discrete + ~T0"})
    assert response.status_code == 200
    payload = response.json()
    assert payload["matches"] == []
    assert payload["impossibility"] is not None
    assert payload["impossibility"]["theorems"] == ["T000042", "T000119"]
    assert len(payload["impossibility"]["steps"]) == 2


def test_search_endpoint_match(listings_client):
    payload = listings_client.get("/search", params={"q": "Discrete"}).json()
    assert payload["matches"] == [{"uid": "S000001", "name": "Discrete topology on a two-point set"}]
    assert payload["impossibility"] is None


def test_search_bad_query_is_400_with_suggestion(listings_client):
    response = listings_client.get("/search", params={"q": "Disrete"})
    assert response.status_code == 400
    body = response.json()
    assert body["code"] == "query_parse_error"
    assert body["location"] == "Disrete"


def test_search_requires_q(listings_client):
    assert listings_client.get("/search").status_code == 400


def test_check_not_derivable(listings_client):
    response = listings_client.post(
        "/theorems/check", json={"if": {"P000001": True}, "then": {"P000052": True}}
    )
    assert response.status_code == 200
    payload = response.json()
    assert payload["verdict"] == "not_derivable"
    assert payload["undecided"] == []


def test_check_redundant(mini_client):
    payload = mini_client.post(
        "/theorems/check", json={"if": {"Discrete": True}, "then": {"T0": True}}
    ).json()
    assert payload["verdict"] == "redundant"
    assert [s["theorem"] for s in payload["proof"]] == ["T000042", "T000119"]
    assert payload["theorems"] == ["T000042", "T000119"]


def test_check_refuted_with_witnesses(mini_client):
    payload = mini_client.post(
        "/theorems/check", json={"if": {"US": True}, "then": {"KC": True}}
    ).json()
    assert payload["verdict"] == "refuted"
    spaces = [w["space"] for w in payload["counterexamples"]]
    assert "S000105" in spaces


def test_check_bad_bodies(listings_client):
    bad = [
        {},
        {"if": {}, "then": {"T0": True}},
        {"if": {"Discrete": True}, "then": {}},
        {"if": {"Discrete": True}, "then": {"T0": True, "T1": True}},
        {"if": {"Discrete": "yes"}, "then": {"T0": True}},
        {"if": {"NoSuchThing": True}, "then": {"T0": True}},
        {"if": {"Discrete": True}, "then": {"Discrete": False}},
    ]
    for body in bad:
        response = listings_client.post("/theorems/check", json=body)
        assert response.status_code == 400, body
        assert "code" in response.json()


def test_validate_ok(listings_client):
    document = {
        "path": "spaces/S000001/properties/P000002.md",
        "text": "---\nspace: S000001\nproperty: P000002\nvalue: true\n---\n",
    }
    response = listings_client.post("/validate", json={"documents": [document]})
    assert response.status_code == 200
    assert response.json() == {"ok": True, "errors": [], "contradictions": []}


def test_validate_parse_errors_reported(listings_client):
    document = {"path": "properties/P000031.md", "text": "---\nuid: P000031\n---\n"}
    response = listings_client.post("/validate", json={"documents": [document]})
    assert response.status_code == 200
    body = response.json()
    assert body["ok"] is False
    assert body["errors"][0]["path"] == "properties/P000031.md"
    assert body["errors"][0]["field"] == "name"


def test_validate_contradiction_is_409(listings_client):
    document = {
        "path": "spaces/S000001/properties/P000001.md",
        "text": "---\nspace: S000001\nproperty: P000001\nvalue: false\n---\n",
    }
    response = listings_client.post("/validate", json={"documents": [document]})
    assert response.status_code == 409
    body = response.json()
    assert body["ok"] is False
    conflict = body["contradictions"][0]
    assert conflict["space"] == "S000001"
    assert conflict["property"] == "P000001"
    assert conflict["theorems"] == ["T000042", "T000119"]


def test_validate_malformed_body(listings_client):
    assert listings_client.post("/validate", json={"nope": 1}).status_code == 400
    response = listings_client.post("/validate", json={"documents": [{"path": 3}]})
    assert response.status_code == 400


def test_responses_are_byte_identical(mini_client):
    for url in ("/properties", "/spaces/S000104/traits", "/search?q=KC", "/theorems"):
        first = mini_client.get(url)
        second = mini_client.get(url)
        assert first.content == second.content


def test_every_served_proof_replays(mini_client, mini_bundle, mini_rules):
    from test_deduction import replay
    from traitbase import EntityId, Literal

    spaces = mini_client.get("/spaces").json()["items"]
    for space in spaces:
        traits = mini_client.get(f"/spaces/{space['uid']}/traits").json()
        assumptions = {
            EntityId.parse(row["property"]): row["value"]
            for row in traits["traits"]
            if row["provenance"] == "asserted"
        }
        for row in traits["traits"]:
            if row["provenance"] != "derived":
                continue
            proof = mini_client.get(
                f"/spaces/{space['uid']}/traits/{row['property']}/proof"
            ).json()
            steps = [
                _step_from_json(step) for step in proof["steps"]
            ]
            known = replay(steps, assumptions, mini_rules)
            assert known[EntityId.parse(row["property"])] == row["value"]


def _step_from_json(payload):
    from traitbase import EntityId, Literal
    from traitbase.deduction import ProofStep

    mode = payload["mode"]
    contrapositive = None
    if mode.startswith("contrapositive"):
        contrapositive = int(mode[len("contrapositive(") : -1])
    return ProofStep(
        derived=Literal(
            EntityId.parse(payload["derived"]["property"]), payload["derived"]["value"]
        ),
        theorem=EntityId.parse(payload["theorem"]),
        contrapositive=contrapositive,
        supports=tuple(
            Literal(EntityId.parse(s["property"]), s["value"])
            for s in payload["supports"]
        ),
    )


def test_cors_header_present(listings_client):
    response = listings_client.get("/properties", headers={"Origin": "http://localhost:5173"})
    assert response.headers.get("access-control-allow-origin") == "*"


def test_create_app_refuses_contradictory_bundle(tmp_path, listings_copy):
    (listings_copy / "spaces" / "S000001" / "properties" / "P000001.md").write_text(
        "---\nspace: S000001\nproperty: P000001\nvalue: false\n---\n"
    )
    bundle = load_bundle(listings_copy)
    with pytest.raises(BundleValidationError) as info:
        create_app(bundle)
    assert any(d.code == "contradiction" for d in info.value.diagnostics)


def test_config_defaults():
    config = ApiConfig(bundle_path="x")
    assert config.read_only is True
    assert config.port == 8175
