"""
Builders for small modules and primes used across the test suite
"""

from backend.pid import PIDModule
from backend.rings import PrimeIdealRef, RingSpec
from monomial.ideals import MonomialIdeal

Z = RingSpec.integers()
XY = RingSpec.monomial(("x", "y"))
GF5 = RingSpec.gf_poly(5)


def zmod(*orders):
    """Direct sum of Z/n; 0 gives a free summand"""
    n = len(orders)
    return PIDModule.coker(Z, [[orders[i] if i == j else 0 for j in range(n)] for i in range(n)])


def zp(n):
    return PrimeIdealRef.principal(Z, n)


def xy_prime(*variables):
    return PrimeIdealRef.monomial(XY, variables)


def xy_ideal(*gens):
    return MonomialIdeal.of(gens, 2)
