import numpy as np
import pytest

from geninv import cmatrix


@pytest.fixture
def a1():
    return cmatrix([[2, 0, 1], [0, 0, 2], [0, 0, 0]])


@pytest.fixture
def a2():
    return cmatrix([[1, 0, 0], [1, 0, 1], [0, 0, 0]])


@pytest.fixture
def a3():
    return cmatrix([[2, 0, 0], [0, 0, 0], [2, 2, 0]])


@pytest.fixture
def b3():
    return cmatrix([[2, 0, 0], [0, 0, 0], [1, 0, 1]])


@pytest.fixture
def rng():
    return np.random.default_rng(20240811)


def random_complex(rng, m, n):
    return (rng.standard_normal((m, n)) + 1j * rng.standard_normal((m, n))) / np.sqrt(2)
