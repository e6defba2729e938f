"""
Intersection identity, sum identity and adjacent swaps

For rank-0 primes P != Q with G = ker at P and H = ker at Q, the kernels
satisfy G & H = ker(G -> G_Q) = ker(H -> H_P). This is what lets two
adjacent steps of a filtration trade places when their primes are
incomparable.
"""

from dataclasses import dataclass
from typing import List, Sequence

from backend.modules import (
    annihilator_strings, associated_primes, localization_kernel, submodule_intersection, submodule_sum,
)
from backend.presentation import ModulePresentation, SubmoduleHandle
from backend.rings import PrimeIdealRef, format_prime_set
from filtration.engine import Filtration, assemble, build_coprimary_filtration, resolve_order
from filtration.report import VerificationReport
from filtration.verify import verify_filtration
from poset.specialization import build_specialization_poset
from utils.exceptions import PreconditionError, SwapNotApplicableError, VerificationFailedError
from utils.logger import get_logger

# Initialize logger
logger = get_logger(__name__)


def _rank_zero_pair(module: ModulePresentation, P: PrimeIdealRef, Q: PrimeIdealRef):
    if P == Q:
        raise PreconditionError(f"the identity needs two distinct primes, got {P} twice")
    ass = associated_primes(module)
    poset = build_specialization_poset(ass)
    for prime in (P, Q):
        if prime not in ass or not poset.is_minimal(prime):
            raise PreconditionError(f"{prime} is not a rank-0 associated prime",
                                    details={'ass': format_prime_set(ass)})


def intersection_identity(module: ModulePresentation, P: PrimeIdealRef, Q: PrimeIdealRef) -> VerificationReport:
    """
    Verify G & H = ker(G -> G_Q) = ker(H -> H_P).

    Raises:
        PreconditionError: If P = Q or either prime is not rank 0 in Ass(M)

    Examples:
        Z/6 with (2), (3): G = {0, 2, 4}, H = {0, 3}; all three are 0
    """
    _rank_zero_pair(module, P, Q)
    G = localization_kernel(module, P)
    H = localization_kernel(module, Q)
    meet = submodule_intersection(G, H)
    via_G = localization_kernel(G, Q)
    via_H = localization_kernel(H, P)
    report = VerificationReport(subject=f"intersection identity at {P}, {Q}")
    report.add("G & H = ker(G -> G_Q)", meet == via_G, None if meet == via_G else f"G & H = {meet}, ker = {via_G}")
    report.add("G & H = ker(H -> H_P)", meet == via_H, None if meet == via_H else f"G & H = {meet}, ker = {via_H}")
    return report


def sum_identity(module: ModulePresentation, P: PrimeIdealRef, Q: PrimeIdealRef) -> VerificationReport:
    """
    Check whether G + H = M for the kernels at P and Q.

    Comaximal P, Q force equality and a failure is a failed check. Otherwise
    the outcome is only recorded; a proper sum is witnessed by Ass and
    the annihilator of M/(G + H).

    Examples:
        k[x,y]/(x*y), (x), (y): xM + yM = (x, y)/(x*y), witness 1 not in (x, y)
    """
    _rank_zero_pair(module, P, Q)
    G = localization_kernel(module, P)
    H = localization_kernel(module, Q)
    total = submodule_sum(G, H)
    whole = module.whole()
    report = VerificationReport(subject=f"sum identity at {P}, {Q}")
    witness = None
    if total != whole:
        ann = annihilator_strings(whole, total)
        witness = (f"M/(G + H) has Ass {format_prime_set(associated_primes(whole, total))} "
                   f"and annihilator ({', '.join(ann)}), so 1 is not in ({', '.join(ann)})")
    if P.comaximal_with(Q):
        report.add("G + H = M", total == whole, witness)
    else:
        report.add("comaximal", True, f"{P} + {Q} is proper; sum identity not forced")
        report.add("G + H = M (observed)", True, witness or "G + H = M")
    return report


@dataclass(frozen=True)
class SwapMove:
    """A performed adjacent swap: position, transposed order, replacement term"""

    source: Filtration
    index: int
    order: tuple
    replacement: SubmoduleHandle
    result: Filtration


def swap_adjacent(filtration: Filtration, index: int) -> Filtration:
    """
    Exchange order[index] and order[index + 1].

    With p = order[index] (upper quotient) and q = order[index + 1] (the
    quotient just below), the swap needs the closure of q not to lie inside
    the closure of p, i.e. p not contained in q. The new term after
    position index is ker(T -> T_q) for T = terms[index].

    Raises:
        SwapNotApplicableError: If the index is out of range or p is contained in q
        VerificationFailedError: If the swapped chain fails verify_filtration

    Examples:
        Z/6 with (2), (3): M > {0, 2, 4} becomes M > {0, 3} with order (3), (2)
    """
    return swap_move(filtration, index).result


def swap_move(filtration: Filtration, index: int) -> SwapMove:
    n = len(filtration.order)
    if not 0 <= index < n - 1:
        raise SwapNotApplicableError(f"swap index {index} is out of range for {n} steps",
                                     details={'index': index, 'steps': n})
    p = filtration.order[index]
    q = filtration.order[index + 1]
    if p.contained_in(q):
        raise SwapNotApplicableError(
            f"cannot swap {p} and {q}: {p} is contained in {q}",
            details={'upper': str(p), 'lower': str(q)}
        )
    order = list(filtration.order)
    order[index], order[index + 1] = q, p
    upper = filtration.terms[index]
    replacement = localization_kernel(upper, q)
    terms = list(filtration.terms)
    terms[index + 1] = replacement
    swapped = assemble(filtration.module, order, terms)

    report = verify_filtration(swapped.module, swapped.terms, swapped.order)
    if not report.passed:
        raise VerificationFailedError("swapped chain is not a coprimary filtration",
                                      details={'failures': [c.to_dict() for c in report.failures()]})
    logger.debug(f"swapped {p} and {q} at position {index}")
    return SwapMove(filtration, index, tuple(order), replacement, swapped)


def swap_path(filtration: Filtration, target_order: Sequence[PrimeIdealRef]) -> List[Filtration]:
    """
    Adjacent swaps (bubble order) carrying a filtration to another linear extension.

    Primes that are out of order relative to a linear extension are
    incomparable, so every swap on the path applies. Returns every
    filtration on the path, starting with the input.
    """
    target = resolve_order(filtration.module, target_order)
    position = {p: i for i, p in enumerate(target)}
    path = [filtration]
    current = filtration
    n = len(target)
    for _ in range(n):
        moved = False
        for k in range(n - 1):
            if position[current.order[k]] > position[current.order[k + 1]]:
                current = swap_adjacent(current, k)
                path.append(current)
                moved = True
        if not moved:
            break
    endpoint = build_coprimary_filtration(filtration.module, target)
    if current.terms != endpoint.terms:
        raise VerificationFailedError("swap path does not end at the target filtration")
    return path
