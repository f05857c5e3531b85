import numpy as np
import pytest

from dblab.examples import pw_space
from dblab.expressions import Poly, ZeroSequence
from dblab.space import DbSpace


@pytest.fixture(scope="session")
def pw1() -> DbSpace:
    return pw_space(1.0)


@pytest.fixture(scope="session")
def zpi() -> DbSpace:
    """H(z + i): the one-dimensional space with constant kernel 1/pi."""
    return DbSpace(Poly([1j, 1.0]), ZeroSequence("zi", np.array([-1j])),
                   0.0, 0.0, "zpi")


@pytest.fixture()
def rng() -> np.random.Generator:
    return np.random.default_rng(20260810)
