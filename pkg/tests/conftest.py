import os

import pytest
from hypothesis import HealthCheck, settings

from tens_semigroup import build_root_system

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(scope="session")
def c2():
    return build_root_system("C2")


@pytest.fixture(scope="session")
def g2():
    return build_root_system("G2")


@pytest.fixture(scope="session")
def a2():
    return build_root_system("A2")


def amb(rs, *vs):
    """Ambient coordinate weights as fundamental tuples."""
    return tuple(tuple(int(c) for c in rs.fund_of(rs.weight(v))) for v in vs)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("tests.test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n][1])
