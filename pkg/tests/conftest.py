import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from minitwistor import G1, G2, G3, SeifertSolver, period_lattice

settings.register_profile(
    "default",
    deadline=None,
    max_examples=40,
    suppress_health_check=[HealthCheck.function_scoped_fixture, HealthCheck.too_slow],
)
settings.load_profile("default")


@pytest.fixture(scope="session")
def lat1():
    return period_lattice(G1)


@pytest.fixture(scope="session")
def lat2():
    return period_lattice(G2)


@pytest.fixture(scope="session")
def lat3():
    return period_lattice(G3)


@pytest.fixture(scope="session")
def solver2(lat2):
    return SeifertSolver(G2, lat2)


@pytest.fixture(scope="session")
def solver3(lat3):
    return SeifertSolver(G3, lat3)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
