import pytest

from cubic27 import schlaefli as S
from cubic27 import surface as SF
from cubic27 import tables
from cubic27.pezzotope import pezzotope


@pytest.fixture(scope="session")
def group():
    return S.generate_weyl()


@pytest.fixture(scope="session")
def running():
    return SF.build(tables.running_example()["points"])


@pytest.fixture(scope="session")
def pezzo():
    return pezzotope()


@pytest.fixture(scope="session")
def five_orbits(group):
    return S.orbit_decompose(S.enumerate_cycles(5, chordless=False), group)
