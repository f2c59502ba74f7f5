import pytest
from hypothesis import HealthCheck, settings

from twistcode.fixtures import load_code, load_group, load_ubb
from twistcode.group import PermutationGroup
from twistcode.perm import Permutation

settings.register_profile(
    "default", deadline=None, max_examples=100, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


def cyc(text, n):
    return Permutation.from_cycles(text, n)


@pytest.fixture(scope="session")
def asl():
    return load_code("asl32")


@pytest.fixture(scope="session")
def asl_ubb():
    return load_ubb("asl32")


@pytest.fixture(scope="session")
def pgl27():
    return load_group("pgl27")


@pytest.fixture(scope="session")
def s6():
    return PermutationGroup([cyc("(1,2,3,4,5,6)", 6), cyc("(1,2)", 6)], name="S6")
