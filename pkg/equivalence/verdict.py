"""
Equivalence of coprimary filtrations

Two filtrations of the same module are equivalent when the quotients with the
same associated prime are isomorphic. Isomorphism is decided by canonical
invariants: exact for PID modules and cyclic monomial quotients, a heuristic
(annihilator plus degree profile) otherwise, which yields the separate
'equivalent-assumed' verdict.
"""

from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Any, Dict, List, Optional, Tuple

from backend.modules import associated_primes
from backend.presentation import ModulePresentation
from backend.rings import PrimeIdealRef, format_prime_set
from config import Config
from filtration.engine import Filtration, build_coprimary_filtration
from poset.specialization import build_specialization_poset, linear_extensions
from utils.exceptions import (
    CapExceededError, DifferentModulesError, TooManyExtensionsError, VerificationFailedError,
)
from utils.logger import get_logger, log_execution_time

# Initialize logger
logger = get_logger(__name__)


class Verdict(str, Enum):
    EQUIVALENT = "equivalent"
    NOT_EQUIVALENT = "not-equivalent"
    EQUIVALENT_ASSUMED = "equivalent-assumed"


@dataclass(frozen=True)
class StepComparison:
    prime: PrimeIdealRef
    left: Optional[Dict[str, Any]]
    right: Optional[Dict[str, Any]]
    match: bool
    complete: bool

    def to_dict(self) -> Dict[str, Any]:
        return {
            'prime': self.prime.generator_strings(),
            'left': self.left,
            'right': self.right,
            'match': self.match,
            'complete': self.complete,
        }


@dataclass(frozen=True)
class EquivalenceVerdict:
    """Verdict plus the per-prime invariant comparison it was drawn from"""

    verdict: Verdict
    comparisons: Tuple[StepComparison, ...] = ()
    reason: Optional[str] = None

    @property
    def equivalent(self) -> bool:
        return self.verdict != Verdict.NOT_EQUIVALENT

    def to_dict(self) -> Dict[str, Any]:
        return {
            'verdict': self.verdict.value,
            'reason': self.reason,
            'comparisons': [c.to_dict() for c in self.comparisons],
        }


def _invariant_key(invariants: Dict[str, Any]) -> Dict[str, Any]:
    return {k: v for k, v in invariants.items() if k != 'complete'}


def filtrations_equivalent(first: Filtration, second: Filtration) -> EquivalenceVerdict:
    """
    Compare two filtrations of one module step by step.

    Steps are matched by their associated prime. Mismatched prime sets give
    NOT_EQUIVALENT; matching invariants give EQUIVALENT, or EQUIVALENT_ASSUMED
    when some matched pair was only compared heuristically.

    Raises:
        DifferentModulesError: If the filtrations belong to different modules

    Examples:
        Z/12 under (2),(3) and (3),(2): quotients Z/4 and Z/3 both ways -> equivalent
    """
    if first.module != second.module:
        raise DifferentModulesError("filtrations of different modules cannot be compared")

    left = {s.prime: s for s in first.steps}
    right = {s.prime: s for s in second.steps}
    if len(left) != len(first.steps) or len(right) != len(second.steps) or set(left) != set(right):
        return EquivalenceVerdict(
            Verdict.NOT_EQUIVALENT,
            reason=f"prime sets differ: {format_prime_set(set(left))} vs {format_prime_set(set(right))}",
        )

    comparisons = []
    for prime in sorted(left, key=lambda p: p.sort_key()):
        a = left[prime].invariants
        b = right[prime].invariants
        complete = bool(a.get('complete')) and bool(b.get('complete'))
        comparisons.append(StepComparison(prime, a, b, _invariant_key(a) == _invariant_key(b), complete))

    if not all(c.match for c in comparisons):
        bad = next(c for c in comparisons if not c.match)
        return EquivalenceVerdict(Verdict.NOT_EQUIVALENT, tuple(comparisons),
                                  reason=f"quotients at {bad.prime} have different invariants")
    if all(c.complete for c in comparisons):
        return EquivalenceVerdict(Verdict.EQUIVALENT, tuple(comparisons))
    logger.warning("equivalence decided by heuristic invariants for a non-cyclic monomial quotient")
    return EquivalenceVerdict(Verdict.EQUIVALENT_ASSUMED, tuple(comparisons),
                              reason="non-cyclic monomial quotients compared by annihilator and degree profile")


@dataclass
class ExtensionSurvey:
    """Filtrations for every linear extension and their pairwise verdicts"""

    module: ModulePresentation
    filtrations: List[Filtration] = field(default_factory=list)
    verdicts: List[Tuple[int, int, EquivalenceVerdict]] = field(default_factory=list)
    hypothesis: bool = False

    @property
    def all_equivalent(self) -> bool:
        return all(v.equivalent for _, _, v in self.verdicts)

    @property
    def observed(self) -> str:
        if not self.all_equivalent:
            return Verdict.NOT_EQUIVALENT.value
        if any(v.verdict == Verdict.EQUIVALENT_ASSUMED for _, _, v in self.verdicts):
            return Verdict.EQUIVALENT_ASSUMED.value
        return Verdict.EQUIVALENT.value

    def to_dict(self) -> Dict[str, Any]:
        return {
            'extensions': [[p.generator_strings() for p in f.order] for f in self.filtrations],
            'hypothesis': 'satisfied' if self.hypothesis else 'not satisfied',
            'observed': self.observed,
            'pairs': [
                {'first': i, 'second': j, **v.to_dict()} for i, j, v in self.verdicts
            ],
        }


def pairwise_comaximal(primes) -> bool:
    """Closures pairwise disjoint, decided as P + Q = (1) for every pair"""
    return all(p.comaximal_with(q) for p, q in combinations(primes, 2))


@log_execution_time(logger)
def all_extensions_equivalent(module: ModulePresentation,
                              max_extensions: Optional[int] = None) -> ExtensionSurvey:
    """
    Build the filtration of every linear extension of Ass(M) and compare all pairs.

    Args:
        module: A nonzero module with at most Config.EQUIVALENCE_MAX_ASS associated primes
        max_extensions: Cap on the number of extensions (default Config.DEFAULT_MAX_EXTENSIONS)

    Returns:
        ExtensionSurvey recording whether the pairwise-comaximal hypothesis holds

    Raises:
        TooManyExtensionsError: If Ass(M) is too large or the cap is exceeded
        VerificationFailedError: If the hypothesis holds but two filtrations differ

    Examples:
        Z/30: 6 extensions, hypothesis satisfied, all equivalent
        k[x,y]/(x*y): hypothesis not satisfied, observed equivalent
    """
    ass = associated_primes(module)
    if len(ass) > Config.EQUIVALENCE_MAX_ASS:
        raise TooManyExtensionsError(
            f"{len(ass)} associated primes exceed the survey limit {Config.EQUIVALENCE_MAX_ASS}",
            details={'ass': format_prime_set(ass)}
        )
    cap = max_extensions or Config.DEFAULT_MAX_EXTENSIONS
    poset = build_specialization_poset(ass)
    try:
        orders = linear_extensions(poset, cap=cap)
    except CapExceededError as e:
        raise TooManyExtensionsError(f"more than {cap} linear extensions", details=e.details) from e

    survey = ExtensionSurvey(module, hypothesis=pairwise_comaximal(ass))
    survey.filtrations = [build_coprimary_filtration(module, order) for order in orders]
    for i, j in combinations(range(len(survey.filtrations)), 2):
        survey.verdicts.append((i, j, filtrations_equivalent(survey.filtrations[i], survey.filtrations[j])))

    if survey.hypothesis and not survey.all_equivalent:
        raise VerificationFailedError(
            "pairwise comaximal primes produced inequivalent filtrations",
            details=survey.to_dict()
        )
    logger.info(f"{len(orders)} extensions, hypothesis {'holds' if survey.hypothesis else 'fails'}, "
                f"observed {survey.observed}")
    return survey
