import random
import sys

import pytest
from hypothesis import HealthCheck, settings

from lndkernel.construction import (
    standard_derivation,
    standard_ring,
    standard_subring,
    subring_generators,
)

settings.register_profile(
    "default",
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)
settings.load_profile("default")


@pytest.fixture(scope="session")
def ring():
    return standard_ring()


@pytest.fixture(scope="session")
def sub():
    return standard_subring()


@pytest.fixture(scope="session")
def D(ring):
    return standard_derivation(ring)


@pytest.fixture(scope="session")
def gens(ring):
    return subring_generators(ring)


@pytest.fixture
def rng(request):
    return random.Random(f"test:{request.node.name}")


@pytest.fixture(scope="session")
def el(ring):
    """Parse a string into an element of the standard ring."""
    from lndkernel.parser import parse_element

    return lambda text: parse_element(text, ring)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.RESULTS:
        terminalreporter.write_line(line)
