import random

import pytest
from hypothesis import HealthCheck, settings

from dynquant.repn import sl2_irrep, standard_rep
from dynquant.rootdata import build_root_datum

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture
def rng():
    return random.Random(1234)


@pytest.fixture
def A1():
    return build_root_datum("A1")


@pytest.fixture
def A2():
    return build_root_datum("A2")


def irrep(n, mode="classical"):
    return sl2_irrep(n, mode)


def vector(mode="classical"):
    return standard_rep(build_root_datum("A2"), mode)
