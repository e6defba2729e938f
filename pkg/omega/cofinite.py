"""
Cofinite Z-modules: free part with explicit scales plus one Z/p per prime in a symbolic set

The module d_1 Z + ... + d_a Z + (sum of Z/p over p in the torsion support)
lives inside the fixed ambient Z^a + (sum of Z/p over all primes). A scale of
0 marks a free summand absent from this term, so every term of a chain shares
one ambient.
"""

from dataclasses import dataclass
from typing import Any, Dict, Iterable, Optional, Tuple

from sympy import factorint

from omega.symbolic import SymbolicPrimeSet
from utils.exceptions import PreconditionError, ZeroModuleError
from utils.logger import get_logger

# Initialize logger
logger = get_logger(__name__)


@dataclass(frozen=True)
class CofiniteZModule:
    scales: Tuple[int, ...]
    support: SymbolicPrimeSet

    def __post_init__(self):
        if any(d < 0 for d in self.scales):
            raise PreconditionError("free scales must be nonnegative", details={'scales': list(self.scales)})
        if self.support.includes_zero:
            raise PreconditionError("torsion support cannot contain the zero ideal")

    @classmethod
    def of(cls, scales: Iterable[int], lower: Optional[int] = None, below: Optional[int] = None,
           excluded: Iterable[int] = ()) -> "CofiniteZModule":
        """
        Args:
            scales: Free summand scales; 0 marks an absent summand
            lower: Least torsion prime (None for no torsion)
            below: Torsion primes are < below when given (finite truncation)
            excluded: Torsion primes left out
        """
        return cls(tuple(scales), SymbolicPrimeSet.from_bounds(lower, below, excluded))

    @property
    def rank(self) -> int:
        return len(self.scales)

    def is_zero(self) -> bool:
        return all(d == 0 for d in self.scales) and self.support.is_empty()

    def has_free_part(self) -> bool:
        return any(d != 0 for d in self.scales)

    def contains(self, other: "CofiniteZModule") -> bool:
        """other is a submodule of self (same ambient rank)"""
        if other.rank != self.rank:
            return False
        for outer, inner in zip(self.scales, other.scales):
            if inner == 0:
                continue
            if outer == 0 or inner % outer != 0:
                return False
        return other.support.issubset(self.support)

    def torsion_part(self) -> "CofiniteZModule":
        return CofiniteZModule(tuple(0 for _ in self.scales), self.support)

    def format(self) -> str:
        parts = []
        for d in self.scales:
            if d:
                parts.append("Z" if d == 1 else f"{d}Z")
        if self.support.has_primes():
            parts.append(f"sum of Z/p over {self.support.without_zero().format()}")
        return " + ".join(parts) if parts else "0"

    def __str__(self):
        return self.format()

    def to_dict(self) -> Dict[str, Any]:
        return {'scales': list(self.scales), 'torsion': self.support.to_dict()}


def symbolic_ass(module: CofiniteZModule) -> SymbolicPrimeSet:
    """
    Ass(M): (0) when a free scale is present, plus (p) for every torsion prime.

    Raises:
        ZeroModuleError: If M is zero

    Examples:
        Z^2 with every Z/p -> {(0), (p) for primes p >= 2}
    """
    if module.is_zero():
        raise ZeroModuleError("the zero module has no associated primes")
    ass = module.support
    return ass.with_zero() if module.has_free_part() else ass


def ass_or_empty(module: CofiniteZModule) -> SymbolicPrimeSet:
    """Ass(M), or the empty set for the zero module"""
    return SymbolicPrimeSet() if module.is_zero() else symbolic_ass(module)


def kernel_at(module: CofiniteZModule, p: int) -> CofiniteZModule:
    """
    ker(M -> M_(p)) for the minimal prime (p) of Ass(M); p = 0 means the zero ideal.

    At (0) the kernel is the torsion part. At (p), only possible when M is
    torsion, the summand Z/p is dropped.

    Raises:
        PreconditionError: If (p) is not minimal in Ass(M)
    """
    ass = symbolic_ass(module)
    if p == 0:
        if not ass.includes_zero:
            raise PreconditionError("(0) is not an associated prime")
        return module.torsion_part()
    if ass.includes_zero or not ass.contains(p):
        raise PreconditionError(f"({p}) does not have rank 0 in {ass}")
    logger.debug(f"dropping Z/{p} from {module}")
    return CofiniteZModule(module.scales, module.support.difference(SymbolicPrimeSet.build(False, [p])))


def quotient_ass(upper: CofiniteZModule, lower: CofiniteZModule) -> SymbolicPrimeSet:
    """
    Ass(upper / lower) for lower inside upper.

    A free coordinate d Z over 0 contributes Z, hence (0); d Z over d' Z
    contributes Z/(d'/d), hence the primes dividing d'/d; torsion primes in
    upper but not lower contribute themselves.
    """
    if not upper.contains(lower):
        raise PreconditionError("lower term is not a submodule of the upper term")
    zero = False
    primes = set()
    for d, e in zip(upper.scales, lower.scales):
        if d == 0:
            continue
        if e == 0:
            zero = True
        elif e != d:
            primes.update(factorint(e // d))
    free = SymbolicPrimeSet.build(zero, primes)
    return free.union(upper.support.difference(lower.support))


def minimal_prime(ass: SymbolicPrimeSet) -> int:
    """Least element in (0) < (2) < (3) < ...; 0 stands for the zero ideal"""
    if ass.includes_zero:
        return 0
    least = ass.minimum_prime()
    if least is None:
        raise ZeroModuleError("empty prime set has no least element")
    return least
