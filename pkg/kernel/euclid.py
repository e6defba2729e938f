"""
Euclidean ring backends for the PID module code

Two concrete rings are supported: the integers and GF(p)[x]. Both expose the
same small interface (division with canonical remainder, canonical
associates, gcdex, factorization, residue enumeration) so the normal-form
and module code can be written once.
"""

from abc import ABC, abstractmethod
from itertools import product
from typing import Any, Iterator, List, Optional, Tuple

from kernel.integers import factor_integer, is_prime
from kernel.unipoly import UniPoly, factor_univariate_gf, monic_polynomials
from utils.exceptions import ArithmeticDomainError


class EuclideanRing(ABC):
    """Interface shared by the supported principal ideal domains"""

    name: str

    @property
    @abstractmethod
    def zero(self) -> Any: ...

    @property
    @abstractmethod
    def one(self) -> Any: ...

    @abstractmethod
    def owns(self, a: Any) -> bool:
        """Whether a is an element of this ring"""

    @abstractmethod
    def divmod(self, a: Any, b: Any) -> Tuple[Any, Any]:
        """Division with the canonical remainder for b"""

    @abstractmethod
    def size(self, a: Any) -> int:
        """Euclidean size used for pivot choice"""

    @abstractmethod
    def unit_part(self, a: Any) -> Any:
        """The unit u with a = u * canonical(a); 1 for zero"""

    @abstractmethod
    def unit_inverse(self, u: Any) -> Any: ...

    @abstractmethod
    def factor(self, a: Any) -> List[Tuple[Any, int]]:
        """Canonical prime factors of a nonzero element with exponents"""

    @abstractmethod
    def residues(self, m: Any) -> Iterator[Any]:
        """Canonical representatives of R/(m) for nonzero m"""

    @abstractmethod
    def residue_count(self, m: Any) -> Optional[int]:
        """|R/(m)|, or None when infinite"""

    @abstractmethod
    def sort_key(self, a: Any) -> Tuple: ...

    @abstractmethod
    def format(self, a: Any) -> str: ...

    @abstractmethod
    def annihilator_candidates(self, max_size: int) -> Iterator[Any]:
        """Canonical nonzero elements in increasing size (for brute-force annihilators)"""

    # ------------------------------------------------------------------ derived

    def element(self, a: Any) -> Any:
        """Coerce an input value into the ring"""
        return a

    def is_zero(self, a: Any) -> bool:
        return a == self.zero

    def is_unit(self, a: Any) -> bool:
        return not self.is_zero(a) and self.size(a) == self.size(self.one)

    def canonical(self, a: Any) -> Any:
        return a * self.unit_inverse(self.unit_part(a))

    def divides(self, a: Any, b: Any) -> bool:
        """Whether a divides b"""
        if self.is_zero(a):
            return self.is_zero(b)
        return self.is_zero(self.divmod(b, a)[1])

    def exact_div(self, b: Any, a: Any) -> Optional[Any]:
        """b / a when a divides b, else None"""
        if self.is_zero(a):
            return self.zero if self.is_zero(b) else None
        q, r = self.divmod(b, a)
        return q if self.is_zero(r) else None

    def gcd(self, a: Any, b: Any) -> Any:
        while not self.is_zero(b):
            a, b = b, self.divmod(a, b)[1]
        return self.canonical(a)

    def lcm(self, a: Any, b: Any) -> Any:
        if self.is_zero(a) or self.is_zero(b):
            return self.zero
        return self.canonical(self.exact_div(a * b, self.gcd(a, b)))

    def valuation(self, a: Any, prime: Any) -> int:
        """Exponent of prime in nonzero a"""
        if self.is_zero(a):
            raise ArithmeticDomainError("valuation of zero is infinite")
        v = 0
        while True:
            q = self.exact_div(a, prime)
            if q is None:
                return v
            a, v = q, v + 1

    def reduce(self, a: Any, m: Any) -> Any:
        """Canonical remainder of a modulo m (a itself when m is zero)"""
        if self.is_zero(m):
            return a
        return self.divmod(a, m)[1]

    def is_prime_element(self, a: Any) -> bool:
        if self.is_zero(a) or self.is_unit(a):
            return False
        factors = self.factor(a)
        return len(factors) == 1 and factors[0][1] == 1

    def power(self, a: Any, n: int) -> Any:
        result = self.one
        for _ in range(n):
            result = result * a
        return result


class IntegerRing(EuclideanRing):
    """The integers, with nonnegative canonical associates"""

    name = "Z"

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def owns(self, a):
        return isinstance(a, int) and not isinstance(a, bool)

    def divmod(self, a, b):
        if b == 0:
            raise ArithmeticDomainError("integer division by zero")
        q, r = divmod(a, b)
        if r < 0:
            # Python keeps the divisor's sign; canonical remainders are nonnegative
            q, r = q + 1, r - b
        return q, r

    def size(self, a):
        return abs(a)

    def unit_part(self, a):
        return -1 if a < 0 else 1

    def unit_inverse(self, u):
        return u

    def factor(self, a):
        if a == 0:
            raise ArithmeticDomainError("zero has no prime factorization")
        counts = {}
        for p in factor_integer(abs(a)):
            counts[p] = counts.get(p, 0) + 1
        return sorted(counts.items())

    def residues(self, m):
        return iter(range(abs(m)))

    def residue_count(self, m):
        return abs(m) if m != 0 else None

    def sort_key(self, a):
        return (abs(a), a < 0)

    def format(self, a):
        return str(a)

    def annihilator_candidates(self, max_size):
        return iter(range(1, max_size + 1))

    def __eq__(self, other):
        return isinstance(other, IntegerRing)

    def __hash__(self):
        return hash("Z")

    def __repr__(self):
        return "IntegerRing()"


class GFPolyRing(EuclideanRing):
    """GF(p)[x], with monic canonical associates"""

    def __init__(self, modulus: int, var: str = "x"):
        if not is_prime(modulus):
            raise ArithmeticDomainError(
                f"GF modulus must be prime, got {modulus}",
                details={'modulus': modulus}
            )
        self.modulus = modulus
        self.var = var
        self.name = f"GF({modulus})[{var}]"

    @property
    def zero(self):
        return UniPoly((), self.modulus)

    @property
    def one(self):
        return UniPoly((1,), self.modulus)

    def owns(self, a):
        return isinstance(a, UniPoly) and a.modulus == self.modulus

    def element(self, a) -> UniPoly:
        """Lift ints to constants; pass polynomials through"""
        if isinstance(a, UniPoly):
            return a
        return UniPoly.constant(a, self.modulus)

    def divmod(self, a, b):
        return a.divmod(b)

    def size(self, a):
        # Zero gets size -1 so every unit (degree 0) has the same size as one
        return a.degree

    def is_unit(self, a):
        return a.degree == 0

    def unit_part(self, a):
        if a.is_zero():
            return self.one
        return UniPoly.constant(a.leading, self.modulus)

    def unit_inverse(self, u):
        return UniPoly.constant(pow(u.leading, -1, self.modulus), self.modulus)

    def factor(self, a):
        if a.is_zero():
            raise ArithmeticDomainError("zero has no prime factorization")
        counts = {}
        for g in factor_univariate_gf(a):
            counts[g] = counts.get(g, 0) + 1
        return sorted(counts.items(), key=lambda item: item[0].sort_key())

    def residues(self, m):
        d = m.degree
        for coeffs in product(range(self.modulus), repeat=d):
            yield UniPoly(coeffs, self.modulus)

    def residue_count(self, m):
        return self.modulus ** m.degree if not m.is_zero() else None

    def sort_key(self, a):
        return a.sort_key()

    def format(self, a):
        return a.format(self.var)

    def annihilator_candidates(self, max_size):
        for degree in range(0, max_size + 1):
            yield from monic_polynomials(degree, self.modulus)

    def __eq__(self, other):
        return isinstance(other, GFPolyRing) and other.modulus == self.modulus

    def __hash__(self):
        return hash(("GF", self.modulus))

    def __repr__(self):
        return f"GFPolyRing({self.modulus})"


def ring_of(entries: List[Any]) -> EuclideanRing:
    """
    Infer the Euclidean ring of a collection of matrix entries.

    Raises:
        ArithmeticDomainError: If entries mix integers and polynomials, or
            polynomials of different moduli
    """
    polys = [e for e in entries if isinstance(e, UniPoly)]
    ints = [e for e in entries if isinstance(e, int) and not isinstance(e, bool)]
    if len(polys) + len(ints) != len(entries):
        raise ArithmeticDomainError("matrix entries must be integers or GF(p) polynomials")
    if not polys:
        return IntegerRing()
    moduli = {p.modulus for p in polys}
    if len(moduli) != 1 or None in moduli:
        raise ArithmeticDomainError("mixed-domain matrix entries", details={'moduli': sorted(map(str, moduli))})
    if ints and any(i != 0 for i in ints):
        raise ArithmeticDomainError("mixed-domain matrix entries: integers next to polynomials")
    return GFPolyRing(moduli.pop())
