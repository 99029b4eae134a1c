"""Runs each acceptance criterion and prints one PASS/FAIL line per criterion."""

import pytest

from autoshift import acceptance

RESULTS = []


@pytest.mark.parametrize("number", [c[0] for c in acceptance.CRITERIA])
def test_criterion(number):
    result = acceptance.run(number)
    RESULTS.append(result)
    print(result.line())
    assert result.passed, result.line()
