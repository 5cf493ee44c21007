"""One test per acceptance criterion; the PASS/FAIL lines are repeated in the terminal summary."""
import pytest

from wreathkit.acceptance import CHECKS

RESULTS: list = []
TIME_LIMITS = {1: 60.0, 8: 300.0}


@pytest.mark.parametrize("n", sorted(CHECKS))
def test_criterion(n):
    result = CHECKS[n]()
    RESULTS.append(result)
    print(result.line())
    assert result.passed, result.line()
    if n in TIME_LIMITS:
        assert result.seconds < TIME_LIMITS[n], result.line()
