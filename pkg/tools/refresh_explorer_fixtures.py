#!/usr/bin/env python3
"""Regenerate the explorer's payload fixtures from the live service code.

The explorer's snapshot tests pin payload-to-render behavior against real
API responses; run this after changing the service's JSON shapes, then
review the diff under frontend/tests/fixtures/.
"""

from __future__ import annotations

import json
from pathlib import Path

from fastapi.testclient import TestClient

from traitbase import load_bundle
from traitbase.service import create_app

ROOT = Path(__file__).resolve().parent.parent
BUNDLE = ROOT / "tests" / "fixtures" / "counterexamples-mini"
OUT = ROOT / "frontend" / "tests" / "fixtures"

CAPTURES = [
    ("spaces.json", "GET", "/spaces", None),
    ("space_S000001.json", "GET", "/spaces/S000001", None),
    ("space_S000001_traits.json", "GET", "/spaces/S000001/traits", None),
    ("space_S000104_traits.json", "GET", "/spaces/S000104/traits", None),
    ("proof_S000001_P000001.json", "GET", "/spaces/S000001/traits/P000001/proof", None),
    ("properties.json", "GET", "/properties", None),
    ("property_P000143.json", "GET", "/properties/P000143", None),
    ("theorems.json", "GET", "/theorems", None),
    ("theorem_T000042.json", "GET", "/theorems/T000042", None),
    ("search_discrete_not_t0.json", "GET", "/search?q=Discrete %2B ~T0", None),
    ("search_discrete.json", "GET", "/search?q=Discrete", None),
    ("search_gap.json", "GET", "/search?q=k2H %2B ~wH", None),
    ("search_typo_error.json", "GET", "/search?q=Disrete", None),
    (
        "check_redundant.json",
        "POST",
        "/theorems/check",
        {"if": {"Discrete": True}, "then": {"T0": True}},
    ),
    (
        "check_refuted.json",
        "POST",
        "/theorems/check",
        {"if": {"US": True}, "then": {"KC": True}},
    ),
    (
        "check_not_derivable.json",
        "POST",
        "/theorems/check",
        {"if": {"T0": True}, "then": {"Has multiple points": True}},
    ),
]


def main() -> None:
    client = TestClient(create_app(load_bundle(BUNDLE)))
    OUT.mkdir(parents=True, exist_ok=True)
    for filename, method, url, body in CAPTURES:
        if method == "GET":
            response = client.get(url)
        else:
            response = client.post(url, json=body)
        payload = {"status": response.status_code, "body": response.json()}
        (OUT / filename).write_text(
            json.dumps(payload, indent=2, ensure_ascii=False) + "\n", encoding="utf-8"
        )
        print(f"{filename}: {method} {url} -> {response.status_code}")


if __name__ == "__main__":
    main()
