"""
Uniform module operations

These functions take a ModulePresentation or SubmoduleHandles of one and
dispatch to the backend. Every question is asked of a subquotient S/T;
T defaults to the zero submodule and a bare presentation means the whole
module.
"""

from typing import Any, Dict, FrozenSet, List, Optional, Tuple, Union

from backend.presentation import CoprimaryCertificate, ModulePresentation, SubmoduleHandle
from backend.rings import PrimeIdealRef, format_prime_set
from config import Config
from poset.specialization import build_specialization_poset
from utils.exceptions import (
    AmbientMismatchError, PreconditionError, UnsupportedBackendError, VerificationFailedError, ZeroModuleError,
)
from utils.logger import get_logger, log_execution_time

# Initialize logger
logger = get_logger(__name__)

ModuleLike = Union[ModulePresentation, SubmoduleHandle]


def as_handle(module: ModuleLike) -> SubmoduleHandle:
    if isinstance(module, SubmoduleHandle):
        return module
    if isinstance(module, ModulePresentation):
        return module.whole()
    raise UnsupportedBackendError(f"unsupported module object {type(module).__name__}")


def subquotient(S: ModuleLike, T: Optional[SubmoduleHandle] = None) -> Tuple[SubmoduleHandle, SubmoduleHandle]:
    """Resolve (S, T) into handles of one ambient module with T inside S"""
    S = as_handle(S)
    if T is None:
        T = S.ambient.zero()
    same_ambient(S, T)
    if not S.ambient.contains(S, T):
        raise PreconditionError("subquotient S/T needs T contained in S",
                                details={'S': S.describe(), 'T': T.describe()})
    return S, T


def same_ambient(a: SubmoduleHandle, b: SubmoduleHandle) -> None:
    if a.ambient != b.ambient:
        raise AmbientMismatchError("submodules of different ambient modules")


def associated_primes(S: ModuleLike, T: Optional[SubmoduleHandle] = None) -> FrozenSet[PrimeIdealRef]:
    """
    Ass(S/T).

    Examples:
        coker [[12]] over Z -> {(2), (3)}
        k[x,y]/(x*y) -> {(x), (y)}
    """
    S, T = subquotient(S, T)
    return S.ambient.associated_primes(S, T)


def localization_kernel(S: ModuleLike, P: PrimeIdealRef, check: bool = True) -> SubmoduleHandle:
    """
    ker(S -> S_P) = {m in S : s*m = 0 for some s outside P}.

    Args:
        S: Submodule (or whole module)
        P: A prime of rank 0 in Ass(S)
        check: Verify the precondition and the two-sided postcondition

    Raises:
        PreconditionError: If P is not a minimal element of Ass(S)
        VerificationFailedError: If the result does not satisfy
            Ass(S/G) = {P} and Ass(G) = Ass(S) - {P}

    Examples:
        Z/12 at (3) -> {0, 3, 6, 9}
        k[x,y]/(x*y) at (y) -> (y)/(x*y)
    """
    S = as_handle(S)
    if not check:
        return S.ambient.localization_kernel_of(S, P)

    ass = associated_primes(S)
    if P not in ass:
        raise PreconditionError(f"{P} is not an associated prime", details={'ass': format_prime_set(ass)})
    poset = build_specialization_poset(ass)
    if not poset.is_minimal(P):
        raise PreconditionError(f"{P} does not have rank 0 in {format_prime_set(ass)}",
                                details={'prime': str(P), 'ass': format_prime_set(ass)})

    kernel = S.ambient.localization_kernel_of(S, P)
    kernel_ass = associated_primes(kernel)
    quotient_ass = associated_primes(S, kernel)
    if kernel_ass != ass - {P} or quotient_ass != frozenset({P}):
        raise VerificationFailedError(
            f"localization kernel at {P} failed its certificate",
            details={'kernel_ass': format_prime_set(kernel_ass), 'quotient_ass': format_prime_set(quotient_ass)}
        )
    return kernel


def annihilator(S: ModuleLike, T: Optional[SubmoduleHandle] = None) -> Any:
    S, T = subquotient(S, T)
    return S.ambient.annihilator(S, T)


def annihilator_strings(S: ModuleLike, T: Optional[SubmoduleHandle] = None) -> List[str]:
    """Generators of ann(S/T) as strings, e.g. ['12'] or ['x^2', 'x*y']"""
    S, T = subquotient(S, T)
    return S.ambient.ideal_strings(S.ambient.annihilator(S, T))


def is_coprimary(S: ModuleLike, P: PrimeIdealRef, T: Optional[SubmoduleHandle] = None) -> CoprimaryCertificate:
    """
    Certify that S/T is P-coprimary: P acts nilpotently, everything outside P injectively.

    Raises:
        ZeroModuleError: If S/T is zero
    """
    S, T = subquotient(S, T)
    if S == T:
        raise ZeroModuleError("coprimarity is undefined for the zero module")
    return S.ambient.coprimary_certificate(S, T, P)


@log_execution_time(logger)
def oracle_ass(S: ModuleLike, T: Optional[SubmoduleHandle] = None, limit: Optional[int] = None) -> FrozenSet[PrimeIdealRef]:
    """
    Associated primes by enumerating elements and their annihilators.

    Raises:
        ModuleTooLargeError: If S/T is infinite or larger than the limit
    """
    S, T = subquotient(S, T)
    return S.ambient.oracle_ass(S, T, limit or Config.ORACLE_MAX_ELEMENTS)


def submodule_intersection(S: SubmoduleHandle, T: SubmoduleHandle) -> SubmoduleHandle:
    same_ambient(S, T)
    return S.ambient.intersection(S, T)


def submodule_sum(S: SubmoduleHandle, T: SubmoduleHandle) -> SubmoduleHandle:
    same_ambient(S, T)
    return S.ambient.sum(S, T)


def submodule_contains(outer: SubmoduleHandle, inner: SubmoduleHandle) -> bool:
    same_ambient(outer, inner)
    return outer.ambient.contains(outer, inner)


def canonical_invariants(S: ModuleLike, T: Optional[SubmoduleHandle] = None) -> Dict[str, Any]:
    """
    Isomorphism invariants of S/T.

    PID: free rank and invariant factors (complete). Monomial cyclic: the
    annihilator (complete). Other monomial subquotients: annihilator plus
    per-degree standard-monomial counts, with 'complete' False.
    """
    S, T = subquotient(S, T)
    return S.ambient.invariants(S, T)


def element_count(S: ModuleLike, T: Optional[SubmoduleHandle] = None) -> Optional[int]:
    S, T = subquotient(S, T)
    return S.ambient.element_count(S, T)
