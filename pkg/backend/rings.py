"""
Ring descriptors and canonical prime ideals

RingSpec names the concrete ring a computation lives over; PrimeIdealRef is
a prime of that ring in canonical form: the zero ideal, a prime integer, a
monic irreducible over GF(p), or a nonempty set of variables.
"""

from dataclasses import dataclass, field
from typing import FrozenSet, List, Optional, Tuple, Union

from kernel.euclid import EuclideanRing, GFPolyRing, IntegerRing
from kernel.integers import is_prime
from kernel.unipoly import UniPoly, certify_irreducible
from utils.exceptions import ArithmeticDomainError, MixedRingError

INTEGERS = "Z"
GF_POLY = "GF[x]"
MONOMIAL = "monomial"


@dataclass(frozen=True)
class RingSpec:
    """Which concrete Noetherian ring a module lives over"""

    kind: str
    modulus: Optional[int] = None
    variables: Tuple[str, ...] = ()

    def __post_init__(self):
        if self.kind not in (INTEGERS, GF_POLY, MONOMIAL):
            raise ArithmeticDomainError(f"unknown ring kind {self.kind!r}")
        if self.modulus is not None and not is_prime(self.modulus):
            raise ArithmeticDomainError(
                f"GF modulus must be prime, got {self.modulus}",
                details={'modulus': self.modulus}
            )
        if self.kind == GF_POLY and (self.modulus is None or len(self.variables) != 1):
            raise ArithmeticDomainError("GF(p)[x] needs a prime modulus and exactly one variable")
        if self.kind == MONOMIAL and not self.variables:
            raise ArithmeticDomainError("a monomial ring needs at least one variable")
        if len(set(self.variables)) != len(self.variables):
            raise ArithmeticDomainError("repeated ring variable", details={'variables': list(self.variables)})

    @classmethod
    def integers(cls) -> "RingSpec":
        return cls(INTEGERS)

    @classmethod
    def gf_poly(cls, modulus: int, var: str = "x") -> "RingSpec":
        return cls(GF_POLY, modulus, (var,))

    @classmethod
    def monomial(cls, variables: Tuple[str, ...], modulus: Optional[int] = None) -> "RingSpec":
        return cls(MONOMIAL, modulus, tuple(variables))

    @property
    def is_pid(self) -> bool:
        return self.kind in (INTEGERS, GF_POLY)

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def euclidean(self) -> EuclideanRing:
        if self.kind == INTEGERS:
            return IntegerRing()
        if self.kind == GF_POLY:
            return GFPolyRing(self.modulus, self.variables[0])
        raise ArithmeticDomainError("monomial rings are not Euclidean")

    def field_name(self) -> str:
        return f"GF({self.modulus})" if self.modulus else "Q"

    def describe(self) -> str:
        if self.kind == INTEGERS:
            return "Z"
        if self.kind == GF_POLY:
            return f"GF({self.modulus})[{self.variables[0]}]"
        return f"{self.field_name()}[{','.join(self.variables)}] monomial"

    def __str__(self):
        return self.describe()


ZERO = "zero"
PRINCIPAL = "principal"
VARIABLES = "variables"


@dataclass(frozen=True)
class PrimeIdealRef:
    """A prime ideal in canonical form; equality is structural"""

    ring: RingSpec
    kind: str
    generator: Union[int, UniPoly, None] = None
    variables: FrozenSet[int] = field(default_factory=frozenset)

    # ------------------------------------------------------------------ builders

    @classmethod
    def zero(cls, ring: RingSpec) -> "PrimeIdealRef":
        return cls(ring, ZERO)

    @classmethod
    def principal(cls, ring: RingSpec, generator) -> "PrimeIdealRef":
        """(g) for a prime element g; normalized to the positive / monic associate"""
        if not ring.is_pid:
            raise ArithmeticDomainError(f"principal primes need a PID, got {ring}")
        R = ring.euclidean()
        g = R.element(generator)
        if not R.owns(g):
            raise ArithmeticDomainError(f"{generator} is not an element of {ring}")
        if R.is_zero(g):
            return cls.zero(ring)
        g = R.canonical(g)
        if ring.kind == INTEGERS:
            ok = is_prime(g)
        else:
            ok = certify_irreducible(g)
        if not ok:
            raise ArithmeticDomainError(f"({R.format(g)}) is not a prime ideal of {ring}")
        return cls(ring, PRINCIPAL, g)

    @classmethod
    def monomial(cls, ring: RingSpec, variables) -> "PrimeIdealRef":
        variables = frozenset(variables)
        if ring.kind != MONOMIAL:
            raise ArithmeticDomainError(f"variable primes need a monomial ring, got {ring}")
        if any(not 0 <= v < ring.nvars for v in variables):
            raise ArithmeticDomainError("variable index out of range", details={'variables': sorted(variables)})
        if not variables:
            return cls.zero(ring)
        return cls(ring, VARIABLES, None, variables)

    # ------------------------------------------------------------------ order

    def is_zero(self) -> bool:
        return self.kind == ZERO

    def is_maximal(self) -> bool:
        if self.ring.is_pid:
            return self.kind == PRINCIPAL
        return len(self.variables) == self.ring.nvars

    def contained_in(self, other: "PrimeIdealRef") -> bool:
        """Ideal containment self <= other"""
        self._same_ring(other)
        if self.kind == ZERO:
            return True
        if other.kind == ZERO:
            return False
        if self.kind == PRINCIPAL:
            return self.generator == other.generator
        return self.variables <= other.variables

    def strictly_below(self, other: "PrimeIdealRef") -> bool:
        return self != other and self.contained_in(other)

    def comaximal_with(self, other: "PrimeIdealRef") -> bool:
        """p + q = (1); V(p) and V(q) are disjoint exactly then"""
        self._same_ring(other)
        if self.kind == PRINCIPAL and other.kind == PRINCIPAL:
            return self.generator != other.generator
        # monomial primes and the zero ideal never sum to the unit ideal
        return False

    def sort_key(self) -> Tuple:
        if self.kind == ZERO:
            return (0,)
        if self.kind == PRINCIPAL:
            if isinstance(self.generator, int):
                return (1, self.generator)
            return (1,) + self.generator.sort_key()
        return (1, len(self.variables), tuple(sorted(self.variables)))

    def _same_ring(self, other: "PrimeIdealRef"):
        if other.ring != self.ring:
            raise MixedRingError(
                "primes from different rings",
                details={'left': str(self.ring), 'right': str(other.ring)}
            )

    # ------------------------------------------------------------------ display

    def generator_strings(self) -> List[str]:
        if self.kind == ZERO:
            return ["0"]
        if self.kind == PRINCIPAL:
            return [self.ring.euclidean().format(self.generator)]
        return [self.ring.variables[i] for i in sorted(self.variables)]

    def format(self) -> str:
        return "(" + ", ".join(self.generator_strings()) + ")"

    def __str__(self):
        return self.format()


def sorted_primes(primes) -> List[PrimeIdealRef]:
    return sorted(primes, key=lambda p: p.sort_key())


def format_prime_set(primes) -> str:
    return "{" + ", ".join(p.format() for p in sorted_primes(primes)) + "}"
