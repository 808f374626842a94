import os
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

from g2scroll.curve import make_curve  # noqa: E402

# criterion number -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@pytest.fixture(scope="session")
def C7():
    return make_curve(7, [0, -1, 0, 0, 0, 1])


@pytest.fixture(scope="session")
def C():
    return make_curve(10007, [0, -1, 0, 0, 0, 1])


@pytest.fixture(scope="session")
def C101():
    return make_curve(101, [3, 1, 4, 1, 5, 1])


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
