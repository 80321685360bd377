import numpy as np
import pytest

from ladderforge.fock import FockCutoff, build_generators


@pytest.fixture(scope="session")
def gen8():
    return build_generators(FockCutoff(8, 8))


@pytest.fixture(scope="session")
def gen10():
    return build_generators(FockCutoff(10, 10))


@pytest.fixture(scope="session")
def gen14():
    return build_generators(FockCutoff(14, 14))


@pytest.fixture(scope="session")
def gen20():
    return build_generators(FockCutoff(20, 20))


@pytest.fixture()
def rng():
    return np.random.default_rng(20240811)
