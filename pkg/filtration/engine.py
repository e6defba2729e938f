"""
Coprimary filtration engine

For an ascending well-order t_1 < t_2 < ... < t_n on Ass(M), the filtration
is M = M^1 > M^2 > ... > M^n > 0 with M^(i+1) = ker(M^i -> (M^i)_(t_i)).
Each step strips the currently minimal prime, so Ass(M^i / M^(i+1)) = {t_i}
and Ass(M^i) = {t_i, ..., t_n}.
"""

from dataclasses import dataclass
from typing import Any, Dict, FrozenSet, List, Optional, Sequence, Tuple, Union

from backend.modules import (
    annihilator_strings, as_handle, associated_primes, canonical_invariants, localization_kernel,
)
from backend.presentation import ModulePresentation, SubmoduleHandle
from backend.rings import PrimeIdealRef, format_prime_set
from poset.specialization import build_specialization_poset, canonical_well_order, is_linear_extension
from utils.exceptions import InvalidOrderError, VerificationFailedError, ZeroModuleError
from utils.logger import get_logger, log_execution_time

# Initialize logger
logger = get_logger(__name__)

CANONICAL = "canonical"


@dataclass(frozen=True)
class StepCertificate:
    """What was checked about one quotient M^i / M^(i+1)"""

    prime: PrimeIdealRef
    quotient_ass: FrozenSet[PrimeIdealRef]
    invariants: Dict[str, Any]
    annihilator: Tuple[str, ...]

    def to_dict(self) -> Dict[str, Any]:
        return {
            'prime': self.prime.generator_strings(),
            'quotient_ass': [p.generator_strings() for p in sorted(self.quotient_ass, key=lambda p: p.sort_key())],
            'invariants': self.invariants,
            'annihilator': list(self.annihilator),
        }


@dataclass(frozen=True)
class Filtration:
    """
    A coprimary filtration stored descending: terms[0] = M, terms[i] = M^(i+1).

    The zero module after the last term is implicit. Quotient terms[i]/terms[i+1]
    has Ass {order[i]}.
    """

    module: ModulePresentation
    order: Tuple[PrimeIdealRef, ...]
    terms: Tuple[SubmoduleHandle, ...]
    steps: Tuple[StepCertificate, ...]

    def __len__(self):
        return len(self.order)

    def term(self, i: int) -> SubmoduleHandle:
        """terms[i], or the zero submodule past the end"""
        return self.terms[i] if i < len(self.terms) else self.module.zero()

    def chain_view(self) -> List[Tuple[SubmoduleHandle, Optional[PrimeIdealRef]]]:
        """
        Ascending view 0 = F_0 < F_1 < ... < F_n = M.

        Entry i is (F_i, p_i) with Ass(F_i / F_(i-1)) = {p_i}; p_1 > p_2 > ...
        in the well-order (F_0 carries no label).
        """
        n = len(self.order)
        view: List[Tuple[SubmoduleHandle, Optional[PrimeIdealRef]]] = [(self.module.zero(), None)]
        for i in range(1, n + 1):
            view.append((self.terms[n - i], self.order[n - i]))
        return view

    def kernel_identity(self) -> bool:
        """F_(n-1) is the localization kernel of M at the order-minimal prime"""
        return self.term(1) == localization_kernel(self.module, self.order[0], check=False)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'order': [p.generator_strings() for p in self.order],
            'terms': [t.describe() for t in self.terms] + [self.module.zero().describe()],
            'steps': [s.to_dict() for s in self.steps],
        }


def resolve_order(module: Union[ModulePresentation, SubmoduleHandle],
                  order: Union[str, Sequence[PrimeIdealRef], None]) -> Tuple[PrimeIdealRef, ...]:
    """
    Turn 'canonical' (or None) or an explicit prime list into a checked linear extension of Ass(M).

    Raises:
        ZeroModuleError: If M is zero
        InvalidOrderError: If the order omits or adds primes, repeats one, or breaks the specialization order
    """
    ass = associated_primes(as_handle(module))
    if not ass:
        raise ZeroModuleError("the zero module has no coprimary filtration")
    poset = build_specialization_poset(ass)
    if order is None or order == CANONICAL:
        return canonical_well_order(poset)

    order = tuple(order)
    missing = ass - set(order)
    extra = set(order) - ass
    if missing or extra or len(set(order)) != len(order):
        raise InvalidOrderError(
            "order must list every associated prime exactly once",
            details={
                'missing': [str(p) for p in sorted(missing, key=lambda p: p.sort_key())],
                'extra': [str(p) for p in sorted(extra, key=lambda p: p.sort_key())],
                'ass': format_prime_set(ass),
            }
        )
    if not is_linear_extension(poset, order):
        raise InvalidOrderError(
            "order is not a linear extension of the specialization order",
            details={'order': [str(p) for p in order]}
        )
    return order


def step_certificate(upper: SubmoduleHandle, lower: SubmoduleHandle, prime: PrimeIdealRef) -> StepCertificate:
    return StepCertificate(
        prime=prime,
        quotient_ass=associated_primes(upper, lower),
        invariants=canonical_invariants(upper, lower),
        annihilator=tuple(annihilator_strings(upper, lower)),
    )


def assemble(module: ModulePresentation, order: Sequence[PrimeIdealRef],
             terms: Sequence[SubmoduleHandle]) -> Filtration:
    """Attach step certificates to an already computed chain"""
    terms = tuple(terms)
    steps = []
    for i, prime in enumerate(order):
        upper = terms[i]
        lower = terms[i + 1] if i + 1 < len(terms) else module.zero()
        steps.append(step_certificate(upper, lower, prime))
    return Filtration(module, tuple(order), terms, tuple(steps))


@log_execution_time(logger)
def build_coprimary_filtration(module: ModulePresentation,
                               order: Union[str, Sequence[PrimeIdealRef], None] = CANONICAL) -> Filtration:
    """
    Build the coprimary filtration for a linear extension of Ass(M).

    Args:
        module: A nonzero module
        order: 'canonical' or an ascending list of primes (minimal first)

    Returns:
        Filtration with certificates for every step

    Raises:
        ZeroModuleError: If the module is zero
        InvalidOrderError: If order is not a linear extension of Ass(M)

    Examples:
        Z/12 with (2), (3) -> M > {0, 4, 8} > 0, quotients Z/4 and Z/3
    """
    order = resolve_order(module, order)
    current = module.whole()
    terms = [current]
    for i, prime in enumerate(order):
        nxt = localization_kernel(current, prime)
        logger.debug(f"step {i + 1}: stripped {prime}, kernel {nxt}")
        if i + 1 < len(order):
            terms.append(nxt)
        current = nxt
    if not current.is_zero():
        raise VerificationFailedError("filtration did not reach the zero submodule", details={'last': current.describe()})
    return assemble(module, order, terms)
