from __future__ import annotations

import pytest

from koszul_lab import scenarios


@pytest.fixture(scope="session")
def suite_results():
    """One full default-suite run shared by every test that only reads it."""
    outcomes, summary = scenarios.run_suite()
    return outcomes, summary


@pytest.fixture(scope="session")
def suite_by_check(suite_results):
    outcomes, _ = suite_results
    grouped: dict = {}
    for o in outcomes:
        grouped.setdefault(o.check_id, []).append(o)
    return grouped
