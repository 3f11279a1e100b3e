import numpy as np
import pytest

import quiversig as qs
from helpers import fig1_quiver, fig1_representation, triangle_complex


@pytest.fixture
def fig1():
    return fig1_quiver()


@pytest.fixture
def fig1_rep():
    return fig1_representation()


@pytest.fixture
def a2():
    return qs.chain_quiver(2)


@pytest.fixture
def a3():
    return qs.chain_quiver(3)


@pytest.fixture
def a2_golden(a2):
    """The two-node example with r=2 identity copies, one source, one sink."""
    phi = np.zeros((3, 3))
    phi[0, 0] = phi[1, 1] = 1.0
    return qs.Representation(a2, {"1": 3, "2": 3}, {"a1_2": phi})


@pytest.fixture
def triangle():
    return triangle_complex()
