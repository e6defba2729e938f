"""
Omega-indexed filtrations of cofinite Z-modules

The canonical chain strips the least associated prime at each step in the
well-order (0) < (2) < (3) < (5) < ... . The alternative chain
M^j = primorial(j - 1) Z + (sum of Z/p for p >= p_j) on Z + Z + (every Z/p)
also descends with singleton quotient Ass and has zero intersection, yet it
breaks the term-Ass condition at its first proper term.
"""

from typing import List, Optional, Sequence

from sympy import prime, primorial

from backend.pid import PIDModule
from backend.presentation import SubmoduleHandle
from backend.rings import RingSpec
from config import Config
from filtration.engine import CANONICAL, build_coprimary_filtration
from filtration.report import VerificationReport
from filtration.verify import LIMIT_POINTS, QUOTIENT_ASS, STRICT_DESCENT, TERM_ASS
from omega.cofinite import CofiniteZModule, ass_or_empty, kernel_at, minimal_prime, quotient_ass, symbolic_ass
from utils.exceptions import MalformedChainError, PreconditionError, VerificationFailedError
from utils.logger import get_logger, log_execution_time

# Initialize logger
logger = get_logger(__name__)

SUCCESSOR_CLAUSE = "(e) last nonzero term coprimary"
ZERO_INTERSECTION = "intersection is zero"


def omega_example_module() -> CofiniteZModule:
    """Z + Z + (sum of Z/p over every prime)"""
    return CofiniteZModule.of((1, 1), 2)


def _check_prefix_length(k: int) -> None:
    if k < 1:
        raise PreconditionError(f"prefix length must be at least 1, got {k}")
    if k > Config.OMEGA_MAX_PREFIX:
        raise PreconditionError(f"prefix length {k} exceeds {Config.OMEGA_MAX_PREFIX}")


def canonical_omega_prefix(module: CofiniteZModule, k: int) -> List[CofiniteZModule]:
    """
    First k terms of the canonical chain, M^0 = M, stopping early at the zero module.

    Examples:
        Z^2 with every Z/p, k=4 -> [M, Z/p for p >= 2, p >= 3, p >= 5]
        Z, k=3 -> [Z, 0]
    """
    _check_prefix_length(k)
    terms = [module]
    while len(terms) < k and not terms[-1].is_zero():
        current = terms[-1]
        terms.append(kernel_at(current, minimal_prime(symbolic_ass(current))))
    return terms


def _primorial(n: int) -> int:
    return 1 if n == 0 else int(primorial(n))


def alternative_chain_prefix(k: int) -> List[CofiniteZModule]:
    """
    M^1 .. M^k of the alternative chain on Z + Z + (every Z/p).

    M^j keeps the second free coordinate scaled by the product of the first
    j - 1 primes and the torsion from the j-th prime on.

    Examples:
        k=4 -> scales 1, 2, 6, 30
    """
    _check_prefix_length(k)
    return [CofiniteZModule.of((0, _primorial(j - 1)), int(prime(j))) for j in range(1, k + 1)]


def _step_prime(upper: CofiniteZModule, lower: CofiniteZModule) -> Optional[int]:
    """The single prime of Ass(upper/lower) (0 for the zero ideal), or None if not a singleton"""
    qa = quotient_ass(upper, lower)
    if qa.size() != 1:
        return None
    return 0 if qa.includes_zero else next(iter(qa.finite))


def _label(p: int) -> str:
    return f"({p})"


def omega_verify(chain: Sequence[CofiniteZModule]) -> VerificationReport:
    """
    Check a chain prefix M^0 > M^1 > ... symbolically.

    Strict descent, singleton quotient Ass in increasing order, and
    Ass(M^t) = {r in Ass(M) : r >= t} for every term whose step prime is
    known. Limit points are vacuous on an omega prefix. A zero-intersection
    certificate (an extra passing check) is issued only when every free
    coordinate either vanishes or gains a prime factor at each step and the
    least torsion prime keeps growing.

    Raises:
        MalformedChainError: If the chain is empty or mixes ambient ranks

    Examples:
        alternative chain [M, M^1, M^2, ...] -> (e) fails at t = 1, intersection certified
    """
    chain = list(chain)
    if not chain:
        raise MalformedChainError("empty chain")
    if len({t.rank for t in chain}) > 1:
        raise MalformedChainError("chain terms have different free ranks",
                                  details={'ranks': [t.rank for t in chain]})

    report = VerificationReport(subject="omega chain prefix")
    n = len(chain)

    contained = [chain[i].contains(chain[i + 1]) for i in range(n - 1)]
    descent = []
    for i in range(n - 1):
        if not contained[i]:
            descent.append(f"M^{i + 1} is not contained in M^{i}")
        elif chain[i] == chain[i + 1]:
            descent.append(f"M^{i} = M^{i + 1}")
    report.add(STRICT_DESCENT, not descent, "; ".join(descent) or None)

    step_primes: List[Optional[int]] = []
    quotient_problems = []
    for i in range(n - 1):
        if not contained[i]:
            step_primes.append(None)
            quotient_problems.append(f"M^{i}/M^{i + 1} is undefined")
            continue
        p = _step_prime(chain[i], chain[i + 1])
        step_primes.append(p)
        if p is None:
            quotient_problems.append(f"Ass(M^{i}/M^{i + 1}) = {quotient_ass(chain[i], chain[i + 1])} is not a singleton")
        elif i > 0 and step_primes[i - 1] is not None and p <= step_primes[i - 1]:
            quotient_problems.append(f"step primes {_label(step_primes[i - 1])}, {_label(p)} are not increasing")
    report.add(QUOTIENT_ASS, not quotient_problems, "; ".join(quotient_problems) or None)

    report.add(LIMIT_POINTS, True, "vacuous at omega prefixes")

    ambient_ass = ass_or_empty(chain[0])
    term_problems = []
    for i, p in enumerate(step_primes):
        if p is None:
            continue
        expected = ambient_ass.at_least(p)
        actual = ass_or_empty(chain[i])
        if actual != expected:
            term_problems.append(f"fails at t = {i}: Ass(M^{i}) = {actual}, expected {expected}")
    report.add(TERM_ASS, not term_problems, "; ".join(term_problems) or None)

    if n >= 2 and chain[-1].is_zero():
        last = chain[-2]
        ass = ass_or_empty(last)
        report.add(SUCCESSOR_CLAUSE, ass.size() == 1,
                   None if ass.size() == 1 else f"Ass(M^{n - 2}) = {ass} is not a singleton")

    issued, witness = _zero_intersection(chain)
    if issued:
        report.add(ZERO_INTERSECTION, True, witness)
    else:
        logger.info(f"no zero-intersection certificate: {witness}")

    if not report.passed:
        logger.info(f"omega chain check failed: {', '.join(report.failed_names())}")
    return report


def _zero_intersection(chain: List[CofiniteZModule]):
    """Symbolic certificate that the intersection of the whole chain is 0"""
    if chain[-1].is_zero():
        return True, "the chain reaches 0"
    n = len(chain)
    if n < 2:
        return False, "a single term gives no descent to extrapolate"
    steps = range(1, n - 1) if n >= 3 else range(n - 1)
    for i in steps:
        upper, lower = chain[i], chain[i + 1]
        for c, (d, e) in enumerate(zip(upper.scales, lower.scales)):
            if e == 0:
                continue
            if d == 0 or e % d != 0 or e == d:
                return False, f"free coordinate {c + 1} does not gain a prime factor from M^{i} to M^{i + 1}"
        low_upper = upper.support.minimum_prime()
        low_lower = lower.support.minimum_prime()
        if low_lower is not None and (low_upper is None or low_lower <= low_upper):
            return False, f"least torsion prime does not grow from M^{i} to M^{i + 1}"
    return True, ("every free coordinate vanishes or gains a prime factor at each step and the "
                  "least torsion prime grows, so no nonzero element lies in every term")


# ---------------------------------------------------------------------- presentations


def to_presentation(module: CofiniteZModule) -> PIDModule:
    """
    A plain Z presentation of a finite-support module.

    Nonzero free coordinates become generators of Z (rescaled by their scale),
    each torsion prime p a generator with relation p.

    Raises:
        PreconditionError: If the torsion support is infinite
    """
    if not module.support.is_finite():
        raise PreconditionError("only finite torsion support has a finite presentation",
                                details={'support': str(module.support)})
    free = sum(1 for d in module.scales if d)
    primes = sorted(module.support.finite)
    rank = free + len(primes)
    matrix = [[0] * len(primes) for _ in range(rank)]
    for j, p in enumerate(primes):
        matrix[free + j][j] = p
    return PIDModule.coker(RingSpec.integers(), matrix, rank)


def embed(ambient: CofiniteZModule, term: CofiniteZModule, presentation: PIDModule) -> SubmoduleHandle:
    """The submodule of to_presentation(ambient) corresponding to a term inside ambient"""
    if not ambient.contains(term):
        raise PreconditionError("term is not a submodule of the ambient module")
    free_coords = [i for i, d in enumerate(ambient.scales) if d]
    primes = sorted(ambient.support.finite)
    generators = []
    for k, i in enumerate(free_coords):
        if term.scales[i]:
            row = [0] * presentation.rank
            row[k] = term.scales[i] // ambient.scales[i]
            generators.append(row)
    for j, p in enumerate(primes):
        if term.support.contains(p):
            row = [0] * presentation.rank
            row[len(free_coords) + j] = 1
            generators.append(row)
    return presentation.handle(generators)


@log_execution_time(logger)
def cross_check(module: CofiniteZModule) -> bool:
    """
    The symbolic canonical chain of a finite-support module matches the filtration engine.

    Raises:
        VerificationFailedError: If the two chains differ
    """
    presentation = to_presentation(module)
    if module.is_zero():
        return True
    steps = len(module.support.finite) + (1 if module.has_free_part() else 0)
    symbolic = canonical_omega_prefix(module, steps + 1)
    expected = tuple(embed(module, t, presentation) for t in symbolic if not t.is_zero())
    engine = build_coprimary_filtration(presentation, CANONICAL)
    if engine.terms != expected:
        raise VerificationFailedError(
            "symbolic chain disagrees with the filtration engine",
            details={'symbolic': [str(t) for t in symbolic], 'engine': [str(t) for t in engine.terms]}
        )
    return True
