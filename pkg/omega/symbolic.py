"""
Symbolic sets of prime ideals of Z

A set is stored in a normal form: an explicit finite part plus an optional
cofinite tail {p prime : p >= start, p not in excluded}. Every finite element
lies below the tail start, the start itself is a prime that is not excluded,
and exclusions lie strictly above it. Two sets are equal exactly when their
normal forms are.
"""

from dataclasses import dataclass
from typing import Any, Dict, FrozenSet, Iterable, Iterator, List, Optional

from sympy import isprime, nextprime, prevprime, primerange


def _next_prime_at_least(n: int) -> int:
    return n if n >= 2 and isprime(n) else nextprime(max(n, 1))


@dataclass(frozen=True)
class SymbolicPrimeSet:
    """Set of prime ideals of Z: optionally (0), finitely many (p), and a cofinite tail"""

    includes_zero: bool = False
    finite: FrozenSet[int] = frozenset()
    tail_start: Optional[int] = None
    tail_excluded: FrozenSet[int] = frozenset()

    @classmethod
    def build(cls, includes_zero: bool = False, finite: Iterable[int] = (), tail_start: Optional[int] = None,
              tail_excluded: Iterable[int] = ()) -> "SymbolicPrimeSet":
        """Normalize arbitrary input; non-primes are dropped"""
        finite = {p for p in finite if isprime(p)}
        excluded = {e for e in tail_excluded if isprime(e)}
        if tail_start is not None:
            start = _next_prime_at_least(tail_start)
            while start in excluded:
                if start in finite:
                    break
                excluded.discard(start)
                start = nextprime(start)
            for p in [p for p in finite if p >= start]:
                finite.discard(p)
                excluded.discard(p)
            # a finite run ending just below the tail belongs to the tail
            while start > 2 and prevprime(start) in finite:
                start = prevprime(start)
                finite.discard(start)
            excluded = {e for e in excluded if e > start}
            tail_start = start
        else:
            excluded = set()
        return cls(includes_zero, frozenset(finite), tail_start, frozenset(excluded))

    @classmethod
    def from_bounds(cls, lower: Optional[int], below: Optional[int] = None, excluded: Iterable[int] = (),
                    includes_zero: bool = False) -> "SymbolicPrimeSet":
        """Primes p >= lower (and p < below when given) outside excluded; lower None means none"""
        if lower is None:
            return cls(includes_zero)
        excluded = set(excluded)
        if below is None:
            return cls.build(includes_zero, (), lower, excluded)
        return cls.build(includes_zero, [p for p in primerange(lower, below) if p not in excluded])

    @classmethod
    def tail_from(cls, start: int) -> "SymbolicPrimeSet":
        return cls.build(False, (), start)

    # ------------------------------------------------------------------ queries

    def is_empty(self) -> bool:
        return not self.includes_zero and not self.finite and self.tail_start is None

    def is_finite(self) -> bool:
        return self.tail_start is None

    def has_primes(self) -> bool:
        return bool(self.finite) or self.tail_start is not None

    def contains(self, p: int) -> bool:
        """Membership of (p); p = 0 asks for the zero ideal"""
        if p == 0:
            return self.includes_zero
        if p in self.finite:
            return True
        return self.tail_start is not None and p >= self.tail_start and isprime(p) and p not in self.tail_excluded

    def __contains__(self, p: int) -> bool:
        return self.contains(p)

    def minimum_prime(self) -> Optional[int]:
        """Least nonzero prime in the set"""
        if self.finite:
            return min(self.finite)
        return self.tail_start

    def size(self) -> Optional[int]:
        """Number of elements, None when infinite"""
        if self.tail_start is not None:
            return None
        return len(self.finite) + (1 if self.includes_zero else 0)

    def primes(self, count: Optional[int] = None) -> Iterator[int]:
        """Nonzero primes in increasing order, at most count of them"""
        emitted = 0
        for p in sorted(self.finite):
            if count is not None and emitted >= count:
                return
            yield p
            emitted += 1
        p = self.tail_start
        while p is not None:
            if count is not None and emitted >= count:
                return
            if p not in self.tail_excluded:
                yield p
                emitted += 1
            p = nextprime(p)

    def _candidates(self, other: "SymbolicPrimeSet") -> List[int]:
        """Finite set of primes where membership in self or other may change below both tails"""
        starts = [s for s in (self.tail_start, other.tail_start) if s is not None]
        points = set(self.finite) | set(other.finite) | set(self.tail_excluded) | set(other.tail_excluded)
        if starts:
            points |= set(primerange(min(starts), max(starts) + 1))
        return sorted(points)

    # ------------------------------------------------------------------ algebra

    def union(self, other: "SymbolicPrimeSet") -> "SymbolicPrimeSet":
        zero = self.includes_zero or other.includes_zero
        starts = [s for s in (self.tail_start, other.tail_start) if s is not None]
        if not starts:
            return SymbolicPrimeSet.build(zero, self.finite | other.finite)
        start = min(starts)
        members = [p for p in self._candidates(other) if self.contains(p) or other.contains(p)]
        holes = [p for p in self._candidates(other) if p >= start and not (self.contains(p) or other.contains(p))]
        return SymbolicPrimeSet.build(zero, [p for p in members if p < start], start, holes)

    def intersection(self, other: "SymbolicPrimeSet") -> "SymbolicPrimeSet":
        zero = self.includes_zero and other.includes_zero
        finite = {p for p in self.finite if other.contains(p)} | {p for p in other.finite if self.contains(p)}
        if self.tail_start is None or other.tail_start is None:
            return SymbolicPrimeSet.build(zero, finite)
        start = max(self.tail_start, other.tail_start)
        return SymbolicPrimeSet.build(zero, finite, start, self.tail_excluded | other.tail_excluded)

    def difference(self, other: "SymbolicPrimeSet") -> "SymbolicPrimeSet":
        zero = self.includes_zero and not other.includes_zero
        finite = {p for p in self.finite if not other.contains(p)}
        if self.tail_start is None:
            return SymbolicPrimeSet.build(zero, finite)
        if other.tail_start is None:
            return SymbolicPrimeSet.build(zero, finite, self.tail_start, self.tail_excluded | other.finite)
        # the tail of other swallows everything from its start except its exclusions
        below = [p for p in primerange(self.tail_start, other.tail_start)
                 if p not in self.tail_excluded and not other.contains(p)]
        holes = [e for e in other.tail_excluded if self.contains(e)]
        return SymbolicPrimeSet.build(zero, finite | set(below) | set(holes))

    def issubset(self, other: "SymbolicPrimeSet") -> bool:
        return self.difference(other).is_empty()

    def without_zero(self) -> "SymbolicPrimeSet":
        return SymbolicPrimeSet(False, self.finite, self.tail_start, self.tail_excluded)

    def with_zero(self) -> "SymbolicPrimeSet":
        return SymbolicPrimeSet(True, self.finite, self.tail_start, self.tail_excluded)

    def at_least(self, p: int) -> "SymbolicPrimeSet":
        """{r in self : r >= (p)} in the well-order (0) < (2) < (3) < ..."""
        if p == 0:
            return self
        return self.without_zero().intersection(SymbolicPrimeSet.tail_from(p))

    # ------------------------------------------------------------------ output

    def format(self) -> str:
        parts = ["(0)"] if self.includes_zero else []
        parts.extend(f"({p})" for p in sorted(self.finite))
        if self.tail_start is not None:
            tail = f"(p) for primes p >= {self.tail_start}"
            if self.tail_excluded:
                tail += " except " + ", ".join(str(e) for e in sorted(self.tail_excluded))
            parts.append(tail)
        return "{" + ", ".join(parts) + "}"

    def __str__(self):
        return self.format()

    def to_dict(self) -> Dict[str, Any]:
        return {
            'zero': self.includes_zero,
            'finite': sorted(self.finite),
            'tail_start': self.tail_start,
            'tail_excluded': sorted(self.tail_excluded),
        }
