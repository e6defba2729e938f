"""
Shared module fixtures
"""

import pytest
from backend.monomial_module import MonomialModule
from backend.pid import PIDModule
from kernel.unipoly import UniPoly
from tests.factories import GF5, XY, xy_ideal, zmod


@pytest.fixture
def z6():
    return zmod(6)


@pytest.fixture
def z12():
    return zmod(12)


@pytest.fixture
def z30():
    return zmod(30)


@pytest.fixture
def z_plus_z2():
    return zmod(0, 2)


@pytest.fixture
def xy_module():
    """k[x,y]/(x*y)"""
    return MonomialModule.dsum(XY, [xy_ideal((1, 1))])


@pytest.fixture
def embedded_module():
    """k[x,y]/(x^2, x*y), with an embedded prime"""
    return MonomialModule.dsum(XY, [xy_ideal((2, 0), (1, 1))])


@pytest.fixture
def gf5_module():
    """GF(5)[x]/(x^2 + 4x) = GF(5)[x]/(x(x - 1))"""
    return PIDModule.coker(GF5, [[UniPoly((0, 4, 1), 5)]])
