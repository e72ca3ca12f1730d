from fractions import Fraction as F

import pytest
from hypothesis import HealthCheck, settings

from dunkl_hermite.reflection import build_group

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

# filled by test_acceptance, printed at the end of the run
ACCEPTANCE_LINES: dict = {}


@pytest.fixture(scope="session")
def z2_small():
    return build_group("Z2^d", 2, [F(1, 2), F(1, 3)])


@pytest.fixture(scope="session")
def z2_int():
    return build_group("Z2^d", 2, [1, 2])


@pytest.fixture(scope="session")
def z2_three():
    return build_group("Z2^d", 3, [F(3, 2), F(1, 2), 1])


@pytest.fixture(scope="session")
def a2():
    return build_group("A", 3, 1)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
