import math

import pytest
from hypothesis import settings

from normed_spaces import SpaceDescriptor

# numba compiles on first call, which blows hypothesis' default deadline
settings.register_profile("spinx", deadline=None, max_examples=60)
settings.load_profile("spinx")


@pytest.fixture
def l2_2():
    return SpaceDescriptor.lp(2, 2)


@pytest.fixture
def l4_2():
    return SpaceDescriptor.lp(4, 2)


@pytest.fixture
def l1_2():
    return SpaceDescriptor.lp(1, 2)


@pytest.fixture
def linf_2():
    return SpaceDescriptor.lp(math.inf, 2)


@pytest.fixture
def l4_3():
    return SpaceDescriptor.lp(4, 3)


@pytest.fixture
def hilbert_3():
    return SpaceDescriptor.hilbert(3)


@pytest.fixture
def h1():
    return SpaceDescriptor.h1_plane()
