"""
Shared fixtures: the unit interval, the unit square and the 2-d simplex.
"""

import numpy as np
import pytest

from softdikin_core.geometry import validate
from softdikin_core.targets import box, simplex


@pytest.fixture
def unit_interval():
    return validate(np.array([[1.0], [-1.0]]), np.array([1.0, 1.0]), witness=np.zeros(1))


@pytest.fixture
def unit_box():
    return box(2)


@pytest.fixture
def simplex2():
    return simplex(2)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
