"""The thirteen acceptance criteria on their full grids at the stated tolerances.

Each test prints one [PASS]/[FAIL] line; the lines are collected again in
the terminal summary.  Run directly (python3 tests/test_acceptance.py) for
the lines alone.
"""
import pytest

from spherical_mv import acceptance

from conftest import ACCEPTANCE_LINES

SLOW = {8, 9}


@pytest.mark.parametrize(
    "k", [pytest.param(k, marks=pytest.mark.slow) if k in SLOW else k for k in acceptance.CRITERIA]
)
def test_criterion(k):
    res = acceptance.run_criterion(k)
    line = f"{res.line()} ({res.seconds:.1f}s)"
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert res.passed, line


def test_reduced_selftest_matrix():
    results = acceptance.run_all(reduced=True)
    assert [r.number for r in results] == list(acceptance.CRITERIA)
    assert all(r.passed for r in results), "\n".join(r.line() for r in results if not r.passed)


if __name__ == "__main__":
    for k in acceptance.CRITERIA:
        print(acceptance.run_criterion(k).line(), flush=True)
