"""
Specialization order on a finite set of primes

q < p exactly when q is strictly contained in p as an ideal (the closure of
p lies inside the closure of q). Finite posets are automatically
well-founded; the relation is still checked for cycles because it may come
from user input.
"""

from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from backend.rings import PrimeIdealRef, sorted_primes
from config import Config
from utils.exceptions import CapExceededError, CyclicOrderError, MixedRingError
from utils.logger import get_logger

# Initialize logger
logger = get_logger(__name__)


@dataclass(frozen=True)
class SpecPoset:
    """Primes sorted canonically, with less[i][j] meaning elements[i] < elements[j]"""

    elements: Tuple[PrimeIdealRef, ...]
    less: Tuple[Tuple[bool, ...], ...]

    def index(self, prime: PrimeIdealRef) -> int:
        return self.elements.index(prime)

    def lt(self, a: PrimeIdealRef, b: PrimeIdealRef) -> bool:
        return self.less[self.index(a)][self.index(b)]

    def comparable(self, a: PrimeIdealRef, b: PrimeIdealRef) -> bool:
        return a == b or self.lt(a, b) or self.lt(b, a)

    def minimal_elements(self) -> List[PrimeIdealRef]:
        n = len(self.elements)
        return [self.elements[j] for j in range(n) if not any(self.less[i][j] for i in range(n))]

    def is_minimal(self, prime: PrimeIdealRef) -> bool:
        j = self.index(prime)
        return not any(row[j] for row in self.less)

    def __len__(self):
        return len(self.elements)


def build_specialization_poset(primes: Iterable[PrimeIdealRef]) -> SpecPoset:
    """
    Build the specialization poset by ideal containment.

    Raises:
        MixedRingError: If the primes come from different rings

    Examples:
        {(0), (2), (3)} over Z -> (0) < (2), (0) < (3), (2) and (3) incomparable
    """
    elements = tuple(sorted_primes(set(primes)))
    if len({p.ring for p in elements}) > 1:
        raise MixedRingError("primes from different rings", details={'rings': sorted({str(p.ring) for p in elements})})
    less = tuple(
        tuple(a.strictly_below(b) for b in elements)
        for a in elements
    )
    poset = SpecPoset(elements, less)
    _check_strict_order(poset)
    return poset


def _check_strict_order(poset: SpecPoset) -> None:
    n = len(poset)
    lt = poset.less
    for i in range(n):
        if lt[i][i]:
            raise CyclicOrderError(f"{poset.elements[i]} is below itself")
        for j in range(n):
            if lt[i][j] and lt[j][i]:
                raise CyclicOrderError(f"{poset.elements[i]} and {poset.elements[j]} are below each other")
            for k in range(n):
                if lt[i][j] and lt[j][k] and not lt[i][k]:
                    raise CyclicOrderError("specialization relation is not transitive")


def rank_function(poset: SpecPoset) -> Dict[PrimeIdealRef, int]:
    """
    rk(x) = max over y < x of rk(y) + 1, and 0 on minimal elements.

    Examples:
        (0) < (x) < (x, y) -> 0, 1, 2
    """
    n = len(poset)
    ranks: Dict[int, int] = {}
    remaining = set(range(n))
    while remaining:
        ready = [j for j in remaining if all(i in ranks for i in range(n) if poset.less[i][j])]
        if not ready:
            raise CyclicOrderError("specialization relation has a cycle")
        for j in ready:
            ranks[j] = max((ranks[i] + 1 for i in range(n) if poset.less[i][j]), default=0)
            remaining.discard(j)
    return {poset.elements[j]: r for j, r in ranks.items()}


def linear_extensions(poset: SpecPoset, cap: Optional[int] = None) -> List[Tuple[PrimeIdealRef, ...]]:
    """
    All linear extensions, ascending, in lexicographic order of the canonical element order.

    Args:
        poset: The poset to extend
        cap: Maximum number of extensions; without a cap the poset may have at
            most Config.LINEAR_EXTENSION_LIMIT elements

    Raises:
        CapExceededError: If the poset is too large or there are more than cap extensions

    Examples:
        {(x), (y), (x, y)} -> [(x), (y), (x, y)], [(y), (x), (x, y)]
    """
    n = len(poset)
    if cap is None and n > Config.LINEAR_EXTENSION_LIMIT:
        raise CapExceededError(
            f"{n} elements exceed the uncapped enumeration limit of {Config.LINEAR_EXTENSION_LIMIT}",
            details={'elements': n, 'limit': Config.LINEAR_EXTENSION_LIMIT}
        )
    results: List[Tuple[PrimeIdealRef, ...]] = []
    prefix: List[int] = []
    placed = [False] * n

    def extend():
        if len(prefix) == n:
            if cap is not None and len(results) >= cap:
                raise CapExceededError(f"more than {cap} linear extensions", details={'cap': cap})
            results.append(tuple(poset.elements[i] for i in prefix))
            return
        for j in range(n):
            if placed[j]:
                continue
            if any(poset.less[i][j] and not placed[i] for i in range(n)):
                continue
            placed[j] = True
            prefix.append(j)
            extend()
            prefix.pop()
            placed[j] = False

    extend()
    logger.debug(f"{len(results)} linear extensions of a {n}-element poset")
    return results


def is_linear_extension(poset: SpecPoset, order: Sequence[PrimeIdealRef]) -> bool:
    if sorted(order, key=lambda p: p.sort_key()) != list(poset.elements) or len(set(order)) != len(order):
        return False
    position = {p: i for i, p in enumerate(order)}
    return all(
        position[a] < position[b]
        for a in poset.elements for b in poset.elements
        if poset.lt(a, b)
    )


def canonical_well_order(poset: SpecPoset) -> Tuple[PrimeIdealRef, ...]:
    """
    Sort by rank, then by the canonical generator representation.

    Examples:
        {(0), (3), (2)} over Z -> (0), (2), (3)
    """
    ranks = rank_function(poset)
    return tuple(sorted(poset.elements, key=lambda p: (ranks[p], p.sort_key())))
