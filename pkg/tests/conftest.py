import json
import pathlib

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", deadline=None, max_examples=40, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

DATA = pathlib.Path(__file__).parent / "data"


def cx(v):
    return complex(v[0], v[1])


@pytest.fixture(scope="session")
def derived():
    """Reference values frozen by scripts/freeze_oracles.py (mpmath, 30 digits)."""
    return json.loads((DATA / "derived.json").read_text())


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("C", 1)[1].split()[0])):
            terminalreporter.write_line(line)
