from __future__ import annotations

import shutil
from pathlib import Path

import pytest

from traitbase import close_bundle, compile_rules, load_bundle

FIXTURES = Path(__file__).parent / "fixtures"
GOLDEN = Path(__file__).parent / "golden"

LISTINGS = FIXTURES / "listings"
MINI = FIXTURES / "counterexamples-mini"


@pytest.fixture(scope="session")
def listings_bundle():
    return load_bundle(LISTINGS)


@pytest.fixture(scope="session")
def mini_bundle():
    return load_bundle(MINI)


@pytest.fixture(scope="session")
def listings_rules(listings_bundle):
    return compile_rules(listings_bundle.theorems.values())


@pytest.fixture(scope="session")
def mini_rules(mini_bundle):
    return compile_rules(mini_bundle.theorems.values())


@pytest.fixture(scope="session")
def listings_closures(listings_bundle, listings_rules):
    return close_bundle(listings_bundle, rules=listings_rules)


@pytest.fixture(scope="session")
def mini_closures(mini_bundle, mini_rules):
    return close_bundle(mini_bundle, rules=mini_rules)


@pytest.fixture
def listings_copy(tmp_path):
    """A private writable copy of the listings fixture tree."""
    target = tmp_path / "listings"
    shutil.copytree(LISTINGS, target)
    return target


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One pass/fail line per acceptance criterion at the end of the run."""
    results: dict[str, str] = {}
    for outcome in ("passed", "failed", "error"):
        for report in terminalreporter.stats.get(outcome, []):
            nodeid = getattr(report, "nodeid", "")
            if "test_acceptance.py" not in nodeid:
                continue
            if getattr(report, "when", "call") != "call" and outcome == "passed":
                continue
            name = nodeid.split("::")[-1]
            if outcome == "passed":
                results.setdefault(name, "PASS")
            else:
                results[name] = "FAIL"
    if results:
        terminalreporter.write_sep("-", "acceptance criteria")
        for name in sorted(results):
            terminalreporter.write_line(f"{results[name]}  {name}")
