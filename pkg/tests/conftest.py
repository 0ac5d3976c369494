import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from wittlab.oring import ring_build

settings.register_profile(
    "default",
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

# (p, n, m) configurations used throughout
SMALL_CONFIGS = [(5, 1, 1), (7, 1, 1), (3, 2, 1), (3, 2, 2), (5, 2, 1)]


@pytest.fixture
def rng():
    return np.random.default_rng(20241016)


@pytest.fixture(scope="session")
def O51():
    return ring_build(5, 1)


@pytest.fixture(scope="session")
def O32():
    return ring_build(3, 2)


@pytest.fixture(scope="session")
def O52():
    return ring_build(5, 2)


@pytest.fixture(scope="session", params=SMALL_CONFIGS, ids=lambda c: "p{}n{}m{}".format(*c))
def ctx(request):
    return ring_build(*request.param)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import LINES
    except ImportError:
        return
    if LINES:
        terminalreporter.section("acceptance criteria")
        for line in LINES:
            terminalreporter.write_line(line)
