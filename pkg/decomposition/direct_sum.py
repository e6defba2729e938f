"""
Direct-sum decomposition into coprimary components

When the closures of the associated primes are pairwise disjoint (decided as
P + Q = (1)), M is the direct sum of the components
M_i = intersection over j != i of ker(M -> M_(p_j)), and Ass(M_i) = {p_i}.
"""

from dataclasses import dataclass
from functools import reduce
from typing import Any, Dict, List, Tuple

from backend.modules import (
    annihilator_strings, associated_primes, localization_kernel, submodule_intersection, submodule_sum,
)
from backend.presentation import ModulePresentation, SubmoduleHandle
from backend.rings import PrimeIdealRef, format_prime_set, sorted_primes
from filtration.engine import build_coprimary_filtration
from filtration.report import VerificationReport
from poset.specialization import build_specialization_poset
from utils.exceptions import ClosuresIntersectError, PreconditionError, VerificationFailedError
from utils.logger import get_logger, log_execution_time

# Initialize logger
logger = get_logger(__name__)


@dataclass(frozen=True)
class DecompositionResult:
    """Components indexed by their prime, with the certificates that were checked"""

    module: ModulePresentation
    components: Tuple[Tuple[PrimeIdealRef, SubmoduleHandle], ...]
    report: VerificationReport
    maximal: bool

    def component(self, prime: PrimeIdealRef) -> SubmoduleHandle:
        return dict(self.components)[prime]

    def to_dict(self) -> Dict[str, Any]:
        return {
            'components': [
                {'prime': p.generator_strings(), 'submodule': c.describe()} for p, c in self.components
            ],
            'normal_decomposition': self.maximal,
            'report': self.report.to_dict(),
        }


def closure_witness(module: ModulePresentation, P: PrimeIdealRef, Q: PrimeIdealRef) -> str:
    """
    Why the closures of P and Q meet.

    For two rank-0 primes the witness comes from M/(G + H) with G, H the
    localization kernels: 1 lies outside its annihilator. Otherwise it is the
    ideal containment (or proper sum) itself.
    """
    if P.contained_in(Q) or Q.contained_in(P):
        low, high = (P, Q) if P.contained_in(Q) else (Q, P)
        return f"{low} is contained in {high}"
    poset = build_specialization_poset(associated_primes(module))
    if poset.is_minimal(P) and poset.is_minimal(Q):
        total = submodule_sum(localization_kernel(module, P), localization_kernel(module, Q))
        if total != module.whole():
            ann = annihilator_strings(module.whole(), total)
            return f"1 ∉ ({', '.join(ann)})"
    return f"{P} + {Q} is a proper ideal"


def _require_comaximal(module: ModulePresentation) -> List[PrimeIdealRef]:
    ass = sorted_primes(associated_primes(module))
    for i, P in enumerate(ass):
        for Q in ass[i + 1:]:
            if not P.comaximal_with(Q):
                witness = closure_witness(module, P, Q)
                raise ClosuresIntersectError(
                    f"closures of {P} and {Q} intersect: {witness}",
                    details={'primes': [P.generator_strings(), Q.generator_strings()], 'witness': witness}
                )
    return ass


def coprimary_component(module: ModulePresentation, prime: PrimeIdealRef) -> SubmoduleHandle:
    """
    The p-coprimary component: intersection of the localization kernels at every other prime.

    Raises:
        ClosuresIntersectError: If two associated primes are not comaximal
        PreconditionError: If prime is not associated to M

    Examples:
        Z/30 at (5) -> {0, 6, 12, 18, 24}
    """
    ass = _require_comaximal(module)
    if prime not in ass:
        raise PreconditionError(f"{prime} is not an associated prime", details={'ass': format_prime_set(ass)})
    kernels = [localization_kernel(module, q) for q in ass if q != prime]
    return reduce(submodule_intersection, kernels, module.whole())


def _sum_all(module: ModulePresentation, handles) -> SubmoduleHandle:
    return reduce(submodule_sum, handles, module.zero())


@log_execution_time(logger)
def direct_sum_decompose(module: ModulePresentation) -> DecompositionResult:
    """
    Split M into coprimary components and certify the direct sum.

    Certificates: pairwise intersections are zero, each component meets the
    sum of the others in zero, the components sum to M, each component has a
    single associated prime, each equals the last term of a filtration ending
    at its prime, and partial sums reproduce the ascending chain.

    Raises:
        ClosuresIntersectError: If two associated primes are not comaximal (exit code 3)
        VerificationFailedError: If a certificate fails

    Examples:
        Z/6 -> {0, 3} + {0, 2, 4}
        k[x,y]/(x*y) -> ClosuresIntersectError with witness 1 not in (x, y)
    """
    ass = _require_comaximal(module)
    components = [(p, coprimary_component(module, p)) for p in ass]
    report = VerificationReport(subject="direct sum decomposition")
    zero = module.zero()

    overlaps = [f"{p} and {q} meet in {submodule_intersection(a, b)}"
                for i, (p, a) in enumerate(components) for q, b in components[i + 1:]
                if submodule_intersection(a, b) != zero]
    report.add("pairwise intersections zero", not overlaps, "; ".join(overlaps) or None)

    dependent = []
    for i, (p, c) in enumerate(components):
        others = _sum_all(module, [h for j, (_, h) in enumerate(components) if j != i])
        if submodule_intersection(c, others) != zero:
            dependent.append(f"component at {p} meets the others")
    report.add("independence", not dependent, "; ".join(dependent) or None)

    total = _sum_all(module, [c for _, c in components])
    report.add("sum is M", total == module.whole(), None if total == module.whole() else f"sum is {total}")

    wrong_ass = [f"Ass at {p} is {format_prime_set(associated_primes(c))}"
                 for p, c in components if associated_primes(c) != frozenset({p})]
    report.add("component Ass", not wrong_ass, "; ".join(wrong_ass) or None)

    last_terms = []
    for p, c in components:
        order = [q for q in ass if q != p] + [p]
        filtration = build_coprimary_filtration(module, order)
        if filtration.terms[-1] != c:
            last_terms.append(f"last term for order ending at {p} is {filtration.terms[-1]}")
    report.add("component is last filtration term", not last_terms, "; ".join(last_terms) or None)

    if ass:
        chain = build_coprimary_filtration(module, ass).chain_view()
        by_prime = dict(components)
        partial = []
        for i in range(1, len(chain)):
            expected = _sum_all(module, [by_prime[label] for _, label in chain[1:i + 1]])
            if chain[i][0] != expected:
                partial.append(f"F_{i} is not the sum of its components")
        report.add("partial sums", not partial, "; ".join(partial) or None)

    if not report.passed:
        raise VerificationFailedError("direct sum certificate failed",
                                      details={'failures': [c.to_dict() for c in report.failures()]})
    maximal = all(p.is_maximal() for p in ass)
    logger.info(f"decomposed into {len(components)} components")
    return DecompositionResult(module, tuple(components), report, maximal)
