"""
Module presentations, submodule handles and coprimarity certificates

A ModulePresentation is a finitely generated module over a supported ring.
Submodules are always stored as canonical full data (a Hermite basis of the
preimage lattice, or a tuple of monomial ideals), so handle equality is
submodule equality. Every backend answers questions about a subquotient S/T
of its module; S/0 is the submodule itself.
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass
from random import Random
from typing import Any, Callable, Dict, FrozenSet, List, Optional, Tuple

from backend.rings import PrimeIdealRef, RingSpec


@dataclass(frozen=True)
class SubmoduleHandle:
    """A canonicalized submodule of a specific ambient module"""

    ambient: "ModulePresentation"
    data: Tuple

    def describe(self) -> Dict[str, Any]:
        return self.ambient.describe_handle(self)

    def is_zero(self) -> bool:
        return self == self.ambient.zero()

    def is_whole(self) -> bool:
        return self == self.ambient.whole()

    def __str__(self):
        return self.ambient.format_handle(self)


@dataclass(frozen=True)
class NilpotencyEntry:
    """a^n kills a module generator; exponent None when no n was found"""

    prime_generator: str
    element: str
    exponent: Optional[int]


@dataclass(frozen=True)
class CoprimaryCertificate:
    """Both halves of the coprimary characterization, with witnesses"""

    prime: PrimeIdealRef
    nilpotency: Tuple[NilpotencyEntry, ...]
    injectivity_witnesses: Tuple[str, ...]
    verdict: bool

    @property
    def nilpotent(self) -> bool:
        return all(entry.exponent is not None for entry in self.nilpotency)

    @property
    def injective(self) -> bool:
        return not self.injectivity_witnesses

    def to_dict(self) -> Dict[str, Any]:
        return {
            'prime': self.prime.generator_strings(),
            'nilpotency': [
                {'generator': e.prime_generator, 'element': e.element, 'exponent': e.exponent}
                for e in self.nilpotency
            ],
            'injectivity_witnesses': list(self.injectivity_witnesses),
            'verdict': self.verdict,
        }


class ModulePresentation(ABC):
    """Interface every module backend implements"""

    ring: RingSpec

    # ------------------------------------------------------------------ lattice

    @abstractmethod
    def whole(self) -> SubmoduleHandle: ...

    @abstractmethod
    def zero(self) -> SubmoduleHandle: ...

    @abstractmethod
    def contains(self, outer: SubmoduleHandle, inner: SubmoduleHandle) -> bool:
        """inner is a submodule of outer"""

    @abstractmethod
    def intersection(self, a: SubmoduleHandle, b: SubmoduleHandle) -> SubmoduleHandle: ...

    @abstractmethod
    def sum(self, a: SubmoduleHandle, b: SubmoduleHandle) -> SubmoduleHandle: ...

    # ------------------------------------------------------------------ algebra on S/T

    @abstractmethod
    def associated_primes(self, S: SubmoduleHandle, T: SubmoduleHandle) -> FrozenSet[PrimeIdealRef]: ...

    @abstractmethod
    def localization_kernel_of(self, S: SubmoduleHandle, P: PrimeIdealRef) -> SubmoduleHandle:
        """ker(S -> S_P) as a submodule of the ambient module; no precondition checks"""

    @abstractmethod
    def annihilator(self, S: SubmoduleHandle, T: SubmoduleHandle) -> Any: ...

    @abstractmethod
    def ideal_strings(self, ideal: Any) -> List[str]:
        """Generator strings of an ideal returned by annihilator"""

    @abstractmethod
    def coprimary_certificate(self, S: SubmoduleHandle, T: SubmoduleHandle, P: PrimeIdealRef) -> CoprimaryCertificate: ...

    @abstractmethod
    def invariants(self, S: SubmoduleHandle, T: SubmoduleHandle) -> Dict[str, Any]:
        """Isomorphism invariants of S/T; key 'complete' says whether they decide isomorphism"""

    @abstractmethod
    def element_count(self, S: SubmoduleHandle, T: SubmoduleHandle) -> Optional[int]:
        """Number of elements (PID) or standard monomials (monomial) of S/T; None if infinite"""

    @abstractmethod
    def oracle_ass(self, S: SubmoduleHandle, T: SubmoduleHandle, limit: int) -> FrozenSet[PrimeIdealRef]: ...

    # ------------------------------------------------------------------ search & display

    @abstractmethod
    def submodules(self, limit: int) -> List[SubmoduleHandle]:
        """Every submodule of a finite module"""

    @abstractmethod
    def permuted(self, rng: Random) -> Tuple["ModulePresentation", Callable[[SubmoduleHandle], SubmoduleHandle]]:
        """An isomorphic re-presentation and the map carrying its handles back"""

    @abstractmethod
    def describe(self) -> Dict[str, Any]: ...

    @abstractmethod
    def describe_handle(self, S: SubmoduleHandle) -> Dict[str, Any]: ...

    @abstractmethod
    def format_handle(self, S: SubmoduleHandle) -> str: ...
