"""
Monomial ideal calculus over k[x_1..x_n]

Monomials are exponent tuples. An ideal is its set of minimal generators;
colon by a monomial is generator-wise max(g - m, 0) and intersection is
pairwise lcm, both followed by minimalization. The coefficient field never
enters any of these computations.
"""

from dataclasses import dataclass
from itertools import combinations, product
from typing import FrozenSet, Iterable, Iterator, List, Sequence, Tuple

from utils.exceptions import PreconditionError
from utils.logger import get_logger

# Initialize logger
logger = get_logger(__name__)

Monomial = Tuple[int, ...]


def one(nvars: int) -> Monomial:
    return (0,) * nvars


def variable(index: int, nvars: int) -> Monomial:
    return tuple(1 if i == index else 0 for i in range(nvars))


def divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_gcd(a: Monomial, b: Monomial) -> Monomial:
    return tuple(min(x, y) for x, y in zip(a, b))


def mono_quotient(a: Monomial, b: Monomial) -> Monomial:
    """a / gcd(a, b), i.e. componentwise max(a - b, 0)"""
    return tuple(max(x - y, 0) for x, y in zip(a, b))


def degree(m: Monomial) -> int:
    return sum(m)


def support(m: Monomial) -> FrozenSet[int]:
    return frozenset(i for i, e in enumerate(m) if e > 0)


def format_monomial(m: Monomial, names: Sequence[str]) -> str:
    factors = []
    for name, e in zip(names, m):
        if e == 1:
            factors.append(name)
        elif e > 1:
            factors.append(f"{name}^{e}")
    return "*".join(factors) if factors else "1"


def monomials_in_box(nvars: int, bound: int) -> Iterator[Monomial]:
    """All monomials with every exponent at most bound"""
    return product(range(bound + 1), repeat=nvars)


@dataclass(frozen=True)
class MonomialIdeal:
    """A monomial ideal given by its minimal generators (sorted)"""

    nvars: int
    generators: Tuple[Monomial, ...]

    @classmethod
    def of(cls, gens: Iterable[Monomial], nvars: int) -> "MonomialIdeal":
        return minimal_generators(gens, nvars)

    @classmethod
    def zero(cls, nvars: int) -> "MonomialIdeal":
        return cls(nvars, ())

    @classmethod
    def unit(cls, nvars: int) -> "MonomialIdeal":
        return cls(nvars, (one(nvars),))

    @classmethod
    def prime(cls, variables: Iterable[int], nvars: int) -> "MonomialIdeal":
        return cls.of([variable(i, nvars) for i in variables], nvars)

    def is_zero(self) -> bool:
        return not self.generators

    def is_unit(self) -> bool:
        return one(self.nvars) in self.generators

    def contains(self, m: Monomial) -> bool:
        return any(divides(g, m) for g in self.generators)

    def issubset(self, other: "MonomialIdeal") -> bool:
        return all(other.contains(g) for g in self.generators)

    def prime_variables(self):
        """The variable set if this ideal is generated by variables (zero ideal gives the empty set), else None"""
        if self.is_unit():
            return None
        variables = set()
        for g in self.generators:
            if degree(g) != 1:
                return None
            variables |= support(g)
        return frozenset(variables)

    def max_exponent(self) -> int:
        return max((e for g in self.generators for e in g), default=0)

    def format(self, names: Sequence[str]) -> str:
        if self.is_zero():
            return "(0)"
        return "(" + ", ".join(format_monomial(g, names) for g in self.generators) + ")"

    def generator_strings(self, names: Sequence[str]) -> List[str]:
        if self.is_zero():
            return ["0"]
        return [format_monomial(g, names) for g in self.generators]


def _generator_key(m: Monomial) -> Tuple:
    # degree first, then lexicographic with x_1 > x_2 > ...
    return (degree(m), tuple(-e for e in m))


def minimal_generators(gens: Iterable[Monomial], nvars: int) -> MonomialIdeal:
    """
    Divisibility-minimal generating set.

    Examples:
        {x, x^2, x*y, y^2} -> (x, y^2)
        {} -> zero ideal
    """
    minimal: List[Monomial] = []
    for m in sorted(set(tuple(g) for g in gens), key=_generator_key):
        if len(m) != nvars:
            raise PreconditionError(
                f"monomial {m} has {len(m)} exponents, ring has {nvars} variables"
            )
        if not any(divides(g, m) for g in minimal):
            minimal.append(m)
    return MonomialIdeal(nvars, tuple(sorted(minimal, key=_generator_key)))


def ideal_sum(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    return minimal_generators(I.generators + J.generators, I.nvars)


def ideal_product(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    return minimal_generators((mono_mul(g, h) for g in I.generators for h in J.generators), I.nvars)


def ideal_intersection(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    """
    Intersection by pairwise lcm of generators.

    Examples:
        (x) & (y) -> (x*y)
        (x^2) & (x) -> (x^2)
    """
    return minimal_generators((mono_lcm(g, h) for g in I.generators for h in J.generators), I.nvars)


def colon_ideal(I: MonomialIdeal, m: Monomial) -> MonomialIdeal:
    """
    (I : m) = {f : f*m in I}, generated by g / gcd(g, m).

    Examples:
        ((x^2, x*y) : x) -> (x, y)
        ((x*y) : y) -> (x)
    """
    return minimal_generators((mono_quotient(g, m) for g in I.generators), I.nvars)


def colon_by_ideal(K: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    """(K : J) = intersection of (K : g) over generators g of J; (K : 0) is the unit ideal"""
    result = MonomialIdeal.unit(K.nvars)
    for g in J.generators:
        result = ideal_intersection(result, colon_ideal(K, g))
    return result


def saturate_ideal(I: MonomialIdeal, m: Monomial) -> MonomialIdeal:
    """
    (I : m^inf), the stable limit of iterated colons by m.

    Examples:
        ((x*y) : x^inf) -> (y)
        ((x^2, x*y) : y^inf) -> (x)
    """
    current = I
    steps = 0
    while True:
        nxt = colon_ideal(current, m)
        if nxt == current:
            logger.debug(f"saturation stabilized after {steps} colon steps")
            return current
        current = nxt
        steps += 1


def standard_monomials(J: MonomialIdeal, K: MonomialIdeal, bound: int) -> Iterator[Monomial]:
    """Monomials of J outside K with all exponents at most bound"""
    for m in monomials_in_box(J.nvars, bound):
        if J.contains(m) and not K.contains(m):
            yield m


def subquotient_associated_primes(J: MonomialIdeal, K: MonomialIdeal) -> FrozenSet[FrozenSet[int]]:
    """
    Associated primes of the subquotient J/K as variable sets.

    A prime (x_S) is associated exactly when (K : m) = (x_S) for some
    monomial m in J outside K. (K : m) only depends on the exponents of m
    truncated at E, the largest exponent among the generators of J and K,
    so searching the box [0, E]^n is exhaustive. The empty set is the zero
    prime.

    Raises:
        PreconditionError: If K is not contained in J

    Examples:
        J=(1), K=(x*y) -> {{x}, {y}}
        J=(1), K=(x^2, x*y) -> {{x}, {x, y}}
    """
    if not K.issubset(J):
        raise PreconditionError("subquotient needs K contained in J", details={'K': K.generators, 'J': J.generators})
    bound = max(J.max_exponent(), K.max_exponent())
    primes = set()
    for m in standard_monomials(J, K, bound):
        variables = colon_ideal(K, m).prime_variables()
        if variables is not None:
            primes.add(variables)
    return frozenset(primes)


def minimal_primes(K: MonomialIdeal) -> FrozenSet[FrozenSet[int]]:
    """Minimal primes over K by exhaustive variable-subset search"""
    if K.is_unit():
        return frozenset()
    covers = []
    for size in range(K.nvars + 1):
        for subset in combinations(range(K.nvars), size):
            chosen = frozenset(subset)
            if any(c <= chosen for c in covers):
                continue
            if all(support(g) & chosen for g in K.generators):
                covers.append(chosen)
    return frozenset(covers)
