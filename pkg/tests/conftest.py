import math

import numpy as np
import pytest

from schlaefli import Geometry, TetraLengths

ALL_GEOMETRIES = [Geometry.SPHERICAL, Geometry.EUCLIDEAN, Geometry.HYPERBOLIC]
CURVED = [Geometry.SPHERICAL, Geometry.HYPERBOLIC]


@pytest.fixture
def regular_euclidean():
    return TetraLengths(np.ones(6), Geometry.EUCLIDEAN)


@pytest.fixture
def orthant():
    return TetraLengths(np.full(6, math.pi / 2), Geometry.SPHERICAL)


@pytest.fixture
def regular_hyperbolic():
    return TetraLengths(np.ones(6), Geometry.HYPERBOLIC)
