"""
Integer and prime-field arithmetic

Integers are plain Python ints (arbitrary precision). Factorization and
primality come from sympy; GFElement is a small immutable residue type.
"""

from dataclasses import dataclass
from math import prod
from typing import Tuple

from sympy import factorint, isprime

from utils.exceptions import ArithmeticDomainError


def is_prime(n: int) -> bool:
    """Primality test for integers of any size"""
    return n > 1 and bool(isprime(n))


def factor_integer(n: int) -> Tuple[int, ...]:
    """
    Factor a positive integer into primes.

    Args:
        n: Integer with n >= 1

    Returns:
        Sorted tuple of primes, repeated by multiplicity (empty for 1)

    Raises:
        ArithmeticDomainError: If n <= 0

    Examples:
        >>> factor_integer(12)
        (2, 2, 3)
        >>> factor_integer(9991)
        (97, 103)
    """
    if not isinstance(n, int) or isinstance(n, bool):
        raise ArithmeticDomainError(f"factor_integer expects an int, got {type(n).__name__}")
    if n <= 0:
        raise ArithmeticDomainError(
            f"factor_integer expects n >= 1, got {n}",
            details={'n': n}
        )

    factors = []
    for p, e in sorted(factorint(n).items()):
        factors.extend([int(p)] * int(e))

    if prod(factors) != n:
        raise ArithmeticDomainError(f"factorization of {n} does not multiply back", details={'n': n})
    return tuple(factors)


def prime_exponents(n: int) -> Tuple[Tuple[int, int], ...]:
    """Prime factorization of |n| as sorted (prime, exponent) pairs"""
    if n == 0:
        raise ArithmeticDomainError("zero has no prime factorization")
    return tuple((int(p), int(e)) for p, e in sorted(factorint(abs(n)).items()))


def trial_division_factor(n: int) -> Tuple[int, ...]:
    """Slow independent factorization used to cross-check factor_integer in tests"""
    if n <= 0:
        raise ArithmeticDomainError(f"trial_division_factor expects n >= 1, got {n}")
    factors = []
    d = 2
    while d * d <= n:
        while n % d == 0:
            factors.append(d)
            n //= d
        d += 1
    if n > 1:
        factors.append(n)
    return tuple(factors)


@dataclass(frozen=True)
class GFElement:
    """An element of the prime field GF(p), stored as a reduced residue"""

    residue: int
    modulus: int

    def __post_init__(self):
        if not is_prime(self.modulus):
            raise ArithmeticDomainError(
                f"GF modulus must be prime, got {self.modulus}",
                details={'modulus': self.modulus}
            )
        object.__setattr__(self, 'residue', self.residue % self.modulus)

    def _check(self, other: "GFElement") -> int:
        if isinstance(other, int):
            return other % self.modulus
        if other.modulus != self.modulus:
            raise ArithmeticDomainError(
                f"cannot combine GF({self.modulus}) and GF({other.modulus})"
            )
        return other.residue

    def __add__(self, other):
        return GFElement(self.residue + self._check(other), self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        return GFElement(self.residue - self._check(other), self.modulus)

    def __rsub__(self, other):
        return GFElement(self._check(other) - self.residue, self.modulus)

    def __mul__(self, other):
        return GFElement(self.residue * self._check(other), self.modulus)

    __rmul__ = __mul__

    def __neg__(self):
        return GFElement(-self.residue, self.modulus)

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        return GFElement(pow(self.residue, exponent, self.modulus), self.modulus)

    def inverse(self) -> "GFElement":
        if self.residue == 0:
            raise ArithmeticDomainError(f"zero has no inverse in GF({self.modulus})")
        return GFElement(pow(self.residue, -1, self.modulus), self.modulus)

    def __truediv__(self, other):
        divisor = other if isinstance(other, GFElement) else GFElement(other, self.modulus)
        return self * divisor.inverse()

    def is_zero(self) -> bool:
        return self.residue == 0

    def __int__(self):
        return self.residue

    def __str__(self):
        return str(self.residue)
