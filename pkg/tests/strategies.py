import math

import numpy as np
from hypothesis import strategies as st

from normed_spaces import SpaceDescriptor
from order_unit import OrderElement

L2_2 = SpaceDescriptor.lp(2, 2)
L4_2 = SpaceDescriptor.lp(4, 2)
L1_3 = SpaceDescriptor.lp(1, 3)
LINF_2 = SpaceDescriptor.lp(math.inf, 2)
HILBERT_3 = SpaceDescriptor.hilbert(3)
H1 = SpaceDescriptor.h1_plane()


def element(space, v, alpha):
    return OrderElement(space, np.array(v, dtype=np.float64), alpha)


def coordinates(bound=10.0):
    return st.floats(min_value=-bound, max_value=bound, allow_nan=False, allow_infinity=False)


def spaces():
    return st.sampled_from([L2_2, L4_2, L1_3, LINF_2, HILBERT_3])


def vectors(space, bound=10.0):
    return st.lists(coordinates(bound), min_size=space.dim, max_size=space.dim).map(np.array)


@st.composite
def elements(draw, space=None):
    space = space if space is not None else draw(spaces())
    return element(space, draw(vectors(space)), draw(coordinates()))


@st.composite
def cone_elements(draw, space=None):
    space = space if space is not None else draw(spaces())
    v = draw(vectors(space))
    slack = draw(st.floats(min_value=0.0, max_value=5.0))
    return element(space, v, element(space, v, 0.0).vnorm * (1.0 + slack) + slack)


@st.composite
def element_pairs(draw, space=None):
    space = space if space is not None else draw(spaces())
    return draw(elements(space)), draw(elements(space))


def scalars():
    return st.floats(min_value=-5.0, max_value=5.0, allow_nan=False, allow_infinity=False)
