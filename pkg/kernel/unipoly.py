"""
Dense univariate polynomials over Z or GF(p)

Coefficients are stored low-to-high. GF(p) arithmetic, division, gcdex and
factorization delegate to sympy's galoistools kernel (dense high-to-low
lists over ZZ); Z arithmetic delegates to sympy's densearith.
"""

from dataclasses import dataclass
from itertools import product
from typing import Iterator, List, Optional, Tuple

from sympy.polys import galoistools as gt
from sympy.polys import densearith as da
from sympy.polys.domains import ZZ

from kernel.integers import is_prime
from utils.exceptions import ArithmeticDomainError
from utils.logger import get_logger

logger = get_logger(__name__)

# Above this many trial divisors, irreducibility is certified by Rabin's test instead
IRREDUCIBILITY_TRIAL_LIMIT = 20000


@dataclass(frozen=True)
class UniPoly:
    """A univariate polynomial; modulus None means integer coefficients"""

    coeffs: Tuple[int, ...]
    modulus: Optional[int] = None

    def __post_init__(self):
        coeffs = [int(c) for c in self.coeffs]
        if self.modulus is not None:
            if not is_prime(self.modulus):
                raise ArithmeticDomainError(
                    f"polynomial modulus must be prime, got {self.modulus}",
                    details={'modulus': self.modulus}
                )
            coeffs = [c % self.modulus for c in coeffs]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, 'coeffs', tuple(coeffs))

    # ------------------------------------------------------------------ builders

    @classmethod
    def variable(cls, modulus: Optional[int] = None) -> "UniPoly":
        return cls((0, 1), modulus)

    @classmethod
    def constant(cls, value: int, modulus: Optional[int] = None) -> "UniPoly":
        return cls((value,), modulus)

    @classmethod
    def from_dense(cls, dense: List, modulus: Optional[int] = None) -> "UniPoly":
        """Build from a high-to-low coefficient list (sympy dense layout)"""
        return cls(tuple(int(c) for c in reversed(dense)), modulus)

    def dense(self) -> List:
        """High-to-low coefficient list over ZZ"""
        return [ZZ(c) for c in reversed(self.coeffs)]

    # ------------------------------------------------------------------ queries

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return self.coeffs == (1,)

    def is_monic(self) -> bool:
        return self.leading == 1

    def sort_key(self) -> Tuple:
        return (self.degree, tuple(reversed(self.coeffs)))

    def evaluate(self, value: int) -> int:
        result = 0
        for c in reversed(self.coeffs):
            result = result * value + c
        return result % self.modulus if self.modulus else result

    # ------------------------------------------------------------------ arithmetic

    def _coerce(self, other) -> "UniPoly":
        if isinstance(other, int) and not isinstance(other, bool):
            return UniPoly((other,), self.modulus)
        if not isinstance(other, UniPoly):
            raise ArithmeticDomainError(f"cannot combine a polynomial with {type(other).__name__}")
        if other.modulus != self.modulus:
            raise ArithmeticDomainError(
                "polynomials over different coefficient domains",
                details={'left': self.modulus, 'right': other.modulus}
            )
        return other

    def __add__(self, other):
        other = self._coerce(other)
        if self.modulus:
            return UniPoly.from_dense(gt.gf_add(self.dense(), other.dense(), self.modulus, ZZ), self.modulus)
        return UniPoly.from_dense(da.dup_add(self.dense(), other.dense(), ZZ))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if self.modulus:
            return UniPoly.from_dense(gt.gf_sub(self.dense(), other.dense(), self.modulus, ZZ), self.modulus)
        return UniPoly.from_dense(da.dup_sub(self.dense(), other.dense(), ZZ))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        if self.modulus:
            return UniPoly.from_dense(gt.gf_mul(self.dense(), other.dense(), self.modulus, ZZ), self.modulus)
        return UniPoly.from_dense(da.dup_mul(self.dense(), other.dense(), ZZ))

    __rmul__ = __mul__

    def __neg__(self):
        return UniPoly(tuple(-c for c in self.coeffs), self.modulus)

    def __pow__(self, exponent: int):
        if exponent < 0:
            raise ArithmeticDomainError("negative polynomial powers are not defined")
        if self.modulus:
            return UniPoly.from_dense(gt.gf_pow(self.dense(), exponent, self.modulus, ZZ), self.modulus)
        return UniPoly.from_dense(da.dup_pow(self.dense(), exponent, ZZ))

    def divmod(self, divisor: "UniPoly") -> Tuple["UniPoly", "UniPoly"]:
        """
        Euclidean division.

        Over GF(p) any nonzero divisor is allowed; over Z the divisor must have
        leading coefficient +-1 so the quotient stays integral.
        """
        divisor = self._coerce(divisor)
        if divisor.is_zero():
            raise ArithmeticDomainError("polynomial division by zero")
        if self.modulus:
            q, r = gt.gf_div(self.dense(), divisor.dense(), self.modulus, ZZ)
            return UniPoly.from_dense(q, self.modulus), UniPoly.from_dense(r, self.modulus)
        if abs(divisor.leading) != 1:
            raise ArithmeticDomainError("integer polynomial division needs a unit leading coefficient")
        q, r = da.dup_div(self.dense(), divisor.dense(), ZZ)
        return UniPoly.from_dense(q), UniPoly.from_dense(r)

    def monic(self) -> Tuple[int, "UniPoly"]:
        """Return (leading coefficient, monic associate)"""
        if self.is_zero():
            return 0, self
        if self.modulus:
            lc, f = gt.gf_monic(self.dense(), self.modulus, ZZ)
            return int(lc), UniPoly.from_dense(f, self.modulus)
        if abs(self.leading) != 1:
            raise ArithmeticDomainError("integer polynomial has no monic associate")
        return self.leading, self * self.leading

    def gcdex(self, other: "UniPoly") -> Tuple["UniPoly", "UniPoly", "UniPoly"]:
        """Extended gcd over GF(p): (s, t, g) with s*self + t*other = g, g monic"""
        other = self._coerce(other)
        if not self.modulus:
            raise ArithmeticDomainError("gcdex is only available over GF(p)")
        s, t, g = gt.gf_gcdex(self.dense(), other.dense(), self.modulus, ZZ)
        p = self.modulus
        return UniPoly.from_dense(s, p), UniPoly.from_dense(t, p), UniPoly.from_dense(g, p)

    # ------------------------------------------------------------------ display

    def format(self, var: str = "x") -> str:
        if self.is_zero():
            return "0"
        terms = []
        for power in range(self.degree, -1, -1):
            c = self.coeffs[power]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if power == 0:
                body = str(mag)
            else:
                mono = var if power == 1 else f"{var}^{power}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            terms.append((sign, body))
        first_sign, first_body = terms[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in terms[1:]:
            text += f" {sign} {body}"
        return text

    def __str__(self):
        return self.format()


def monic_polynomials(degree: int, modulus: int) -> Iterator[UniPoly]:
    """All monic polynomials of the given degree over GF(p), in lexicographic order"""
    for tail in product(range(modulus), repeat=degree):
        yield UniPoly(tuple(reversed(tail)) + (1,), modulus)


def certify_irreducible(f: UniPoly) -> bool:
    """
    Certify irreducibility over GF(p).

    Exhaustive trial division by every monic polynomial of degree 1..deg/2
    at desk scale; beyond IRREDUCIBILITY_TRIAL_LIMIT divisors, Rabin's test.
    """
    if f.modulus is None:
        raise ArithmeticDomainError("irreducibility certificates are only issued over GF(p)")
    if f.degree < 1:
        return False
    p = f.modulus
    half = f.degree // 2
    trials = sum(p ** d for d in range(1, half + 1))
    if trials > IRREDUCIBILITY_TRIAL_LIMIT:
        return bool(gt.gf_irreducible_p(f.dense(), p, ZZ))
    for d in range(1, half + 1):
        for g in monic_polynomials(d, p):
            _, r = f.divmod(g)
            if r.is_zero():
                return False
    return True


def factor_univariate_gf(f: UniPoly) -> Tuple[UniPoly, ...]:
    """
    Factor a nonzero polynomial over GF(p) into monic irreducibles.

    Square-free decomposition, then distinct-degree and equal-degree
    (Cantor-Zassenhaus) splitting.

    Args:
        f: Nonzero polynomial with a prime modulus

    Returns:
        Monic irreducible factors repeated by multiplicity, sorted; the
        product times f.leading equals f

    Raises:
        ArithmeticDomainError: On the zero polynomial or integer coefficients

    Examples:
        x^2 + 1 over GF(5) -> (x + 2, x + 3)
    """
    if f.modulus is None:
        raise ArithmeticDomainError("univariate factorization is only supported over GF(p)")
    if f.is_zero():
        raise ArithmeticDomainError("cannot factor the zero polynomial")

    p = f.modulus
    factors: List[UniPoly] = []
    _, square_free = gt.gf_sqf_list(f.dense(), p, ZZ)
    for part, multiplicity in square_free:
        for block, degree in gt.gf_ddf_zassenhaus(part, p, ZZ):
            for piece in gt.gf_edf_zassenhaus(block, degree, p, ZZ):
                factors.extend([UniPoly.from_dense(piece, p)] * int(multiplicity))

    factors.sort(key=lambda g: g.sort_key())

    check = UniPoly.constant(f.leading, p)
    for g in factors:
        check = check * g
    if check != f:
        raise ArithmeticDomainError(f"factorization of {f} does not multiply back")
    for g in set(factors):
        if not certify_irreducible(g):
            raise ArithmeticDomainError(f"factor {g} of {f} failed the irreducibility certificate")

    logger.debug(f"factored {f} over GF({p}) into {len(factors)} factors")
    return tuple(factors)
