"""
Certificates for coprimary filtrations

verify_filtration checks a candidate chain M = T_1 > T_2 > ... > T_n > 0
against an ascending order t_1 < ... < t_n:
  (a) strict descent, (b) T_1 = M, (c) Ass(T_i / T_(i+1)) = {t_i},
  (d) no limit points (vacuous for finite chains),
  (e) Ass(T_i) = {t_i, ..., t_n} and the last term is t_n-coprimary.
"""

from random import Random
from typing import List, Optional, Sequence, Tuple

from backend.modules import (
    as_handle, associated_primes, is_coprimary, localization_kernel, submodule_contains,
)
from backend.presentation import ModulePresentation, SubmoduleHandle
from backend.rings import PrimeIdealRef, format_prime_set
from config import Config
from filtration.engine import build_coprimary_filtration, resolve_order
from filtration.report import VerificationReport
from utils.exceptions import MalformedChainError
from utils.logger import get_logger, log_execution_time

# Initialize logger
logger = get_logger(__name__)

STRICT_DESCENT = "(a) strict descent"
STARTS_AT_M = "(b) first term is M"
QUOTIENT_ASS = "(c) quotient Ass"
LIMIT_POINTS = "(d) limit points"
TERM_ASS = "(e) Ass of terms"


def verify_filtration(module: ModulePresentation, chain: Sequence[SubmoduleHandle],
                      order: Sequence[PrimeIdealRef]) -> VerificationReport:
    """
    Check properties (a)-(e) of a candidate chain, each independently.

    A chain with one extra trailing zero term is checked without it and fails
    strict descent, since that term repeats the implicit zero.

    Args:
        module: The ambient module M
        chain: Descending terms T_1..T_n (the trailing zero is implicit)
        order: Ascending primes t_1..t_n

    Returns:
        VerificationReport with one check per property; failures carry witnesses

    Raises:
        MalformedChainError: If the chain length does not match the order or a
            term belongs to another module
    """
    chain = list(chain)
    order = list(order)
    repeated_zero = (len(chain) == len(order) + 1 and len(chain) > 1
                     and chain[-1].ambient == module and chain[-1].is_zero())
    if repeated_zero:
        chain = chain[:-1]
    if len(chain) != len(order) or not chain:
        raise MalformedChainError(
            f"chain has {len(chain)} terms but the order has {len(order)} primes",
            details={'terms': len(chain), 'primes': len(order)}
        )
    if any(t.ambient != module for t in chain):
        raise MalformedChainError("chain terms must be submodules of the given module")

    report = VerificationReport(subject="coprimary filtration")
    terms = chain + [module.zero()]
    n = len(chain)

    descent_problems = [f"T_{n + 1} = 0"] if repeated_zero else []
    contained = []
    for i in range(n):
        inside = submodule_contains(terms[i], terms[i + 1])
        contained.append(inside)
        if not inside:
            descent_problems.append(f"T_{i + 2} is not contained in T_{i + 1}")
        elif terms[i] == terms[i + 1]:
            descent_problems.append(f"T_{i + 1} = T_{i + 2}")
    report.add(STRICT_DESCENT, not descent_problems, "; ".join(descent_problems) or None)

    report.add(STARTS_AT_M, chain[0] == module.whole(),
               None if chain[0] == module.whole() else f"T_1 = {chain[0]} is not M")

    quotient_problems = []
    for i in range(n):
        if not contained[i]:
            quotient_problems.append(f"T_{i + 1}/T_{i + 2} is undefined")
            continue
        ass = associated_primes(terms[i], terms[i + 1])
        if ass != frozenset({order[i]}):
            quotient_problems.append(f"Ass(T_{i + 1}/T_{i + 2}) = {format_prime_set(ass)}, expected {{{order[i]}}}")
    report.add(QUOTIENT_ASS, not quotient_problems, "; ".join(quotient_problems) or None)

    report.add(LIMIT_POINTS, True, "vacuous: a finite chain has no limit points")

    term_problems = []
    for i in range(n):
        ass = associated_primes(terms[i])
        expected = frozenset(order[i:])
        if ass != expected:
            term_problems.append(f"Ass(T_{i + 1}) = {format_prime_set(ass)}, expected {format_prime_set(expected)}")
    last = chain[-1]
    if last.is_zero():
        term_problems.append(f"T_{n} is zero")
    else:
        certificate = is_coprimary(last, order[-1])
        if not certificate.verdict:
            witness = certificate.injectivity_witnesses[0] if certificate.injectivity_witnesses else \
                f"{order[-1]} does not act nilpotently on T_{n}"
            term_problems.append(f"T_{n} is not {order[-1]}-coprimary: {witness}")
    report.add(TERM_ASS, not term_problems, "; ".join(term_problems) or None)

    if not report.passed:
        logger.info(f"filtration check failed: {', '.join(report.failed_names())}")
    return report


def lemma_key_check(S, P: PrimeIdealRef, G: SubmoduleHandle) -> VerificationReport:
    """
    Decide the two-sided characterization of the localization kernel for a candidate G:
    Ass(S/G) = {P} and Ass(G) = Ass(S) - {P} hold together exactly when G = ker(S -> S_P).
    """
    S = as_handle(S)
    report = VerificationReport(subject=f"localization kernel at {P}")
    ass = associated_primes(S)
    inside = submodule_contains(S, G)
    quotient_ok = inside and associated_primes(S, G) == frozenset({P})
    report.add("Ass(S/G) = {P}", quotient_ok,
               None if quotient_ok else ("G is not inside S" if not inside
                                         else f"Ass(S/G) = {format_prime_set(associated_primes(S, G))}"))
    kernel_ok = associated_primes(G) == ass - {P}
    report.add("Ass(G) = Ass(S) - {P}", kernel_ok,
               None if kernel_ok else f"Ass(G) = {format_prime_set(associated_primes(G))}")
    kernel = localization_kernel(S, P)
    matches = G == kernel
    report.add("G is the localization kernel", matches, None if matches else f"kernel is {kernel}, G is {G}")
    agree = (quotient_ok and kernel_ok) == matches
    report.add("characterization agrees", agree, None if agree else "properties hold for a non-kernel submodule")
    return report


@log_execution_time(logger)
def exhaustive_chain_search(module: ModulePresentation, order=None,
                            limit: Optional[int] = None) -> List[Tuple[SubmoduleHandle, ...]]:
    """
    Every chain of submodules passing (a)-(e) for the order, found by brute force.

    Only finite modules are searched (at most Config.UNIQUENESS_SEARCH_MAX_ELEMENTS
    elements); the engine's filtration should be the only result.
    """
    order = resolve_order(module, order)
    subs = module.submodules(limit or Config.UNIQUENESS_SEARCH_MAX_ELEMENTS)
    n = len(order)
    found: List[Tuple[SubmoduleHandle, ...]] = []

    def extend(chain: List[SubmoduleHandle]):
        i = len(chain) - 1
        current = chain[-1]
        for candidate in subs:
            if candidate == current or not submodule_contains(current, candidate):
                continue
            if associated_primes(current, candidate) != frozenset({order[i]}):
                continue
            if associated_primes(candidate) != frozenset(order[i + 1:]):
                continue
            if i + 1 == n:
                found.append(tuple(chain))
            else:
                extend(chain + [candidate])

    extend([module.whole()])
    return [c for c in found if verify_filtration(module, c, order).passed]


def permutation_stability(module: ModulePresentation, order=None, seed: int = 0) -> bool:
    """
    Rebuild the filtration on a randomly re-presented copy and compare handles step by step.
    """
    order = resolve_order(module, order)
    reference = build_coprimary_filtration(module, order)
    twin, pull_back = module.permuted(Random(seed))
    rebuilt = build_coprimary_filtration(twin, order)
    mapped = tuple(pull_back(t) for t in rebuilt.terms)
    stable = mapped == reference.terms
    if not stable:
        logger.warning(f"filtration changed under re-presentation with seed {seed}")
    return stable
