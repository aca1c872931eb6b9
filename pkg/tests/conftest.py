import json
import os
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from prime_interference.characters import DirichletCharacter
from prime_interference.lfunction import find_zeros

settings.register_profile("default", max_examples=60, deadline=None)
settings.register_profile("ci", max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

DATA = Path(__file__).parent / "data"

# every character the acceptance checks touch
CHARACTER_IDS = ("1.1", "3.2", "4.3", "5.4", "5.2", "5.3")
ZERO_HEIGHT = 250.0


@pytest.fixture(scope="session")
def oracle():
    return json.loads((DATA / "oracle.json").read_text())


@pytest.fixture(scope="session")
def zero_lists():
    """Zeros up to height 250 for each character, computed once per session."""
    out = {}
    for cid in CHARACTER_IDS:
        q, label = map(int, cid.split("."))
        out[cid] = find_zeros(DirichletCharacter(q, label), ZERO_HEIGHT)
    return out


@pytest.fixture(scope="session")
def zeros_to_100(zero_lists):
    return {k: v.truncate(height=100.0) for k, v in zero_lists.items()}


@pytest.fixture(scope="session")
def first_100(zero_lists):
    return {k: v.truncate(count=100) for k, v in zero_lists.items()}


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance

    if test_acceptance.RESULT_LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(test_acceptance.RESULT_LINES):
            terminalreporter.write_line(test_acceptance.RESULT_LINES[n])
