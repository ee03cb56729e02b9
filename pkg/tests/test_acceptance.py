"""Headline claims, one test per criterion; PASS/FAIL lines are printed in the terminal summary."""

import pytest

from dqc1ent.acceptance import CHECKS, run_check

RESULTS = []


@pytest.mark.parametrize("number", [c[0] for c in CHECKS], ids=[f"criterion_{c[0]:02d}" for c in CHECKS])
def test_criterion(number):
    result = run_check(number)
    RESULTS.append(result)
    print(result.line())
    assert result.passed, result.detail
    assert result.seconds < result.budget_seconds
