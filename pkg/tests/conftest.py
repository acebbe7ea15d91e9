from fractions import Fraction

import pytest

from tropcyl import LooijengaPair, build_base


@pytest.fixture
def del_pezzo():
    return build_base(LooijengaPair((0, -1, 0, 0)))


@pytest.fixture
def square():
    return build_base(LooijengaPair((0, 0, 0, 0)))


@pytest.fixture
def projective_plane():
    return build_base(LooijengaPair((1, 1, 1)))


@pytest.fixture
def all_minus_two():
    return build_base(LooijengaPair((-2, -2, -2, -2)))


@pytest.fixture
def F():
    return Fraction
