"""
Command dispatch for the coprime CLI

Each command takes a parsed ProblemFile and returns a CommandResult: a JSON
ready payload plus the exit code (0 success, 3 a certificate did not hold).
Errors escape as CoprimeError subclasses and are mapped to exit codes by the
caller.
"""

from dataclasses import dataclass
from itertools import combinations
from typing import Any, Callable, Dict, Optional, Union

from backend.modules import associated_primes, element_count, localization_kernel, oracle_ass
from backend.presentation import ModulePresentation
from backend.rings import sorted_primes
from cli.parser import ProblemFile, build_module, build_submodule, parse_order_text
from config import Config
from decomposition.direct_sum import direct_sum_decompose
from equivalence.swap import intersection_identity, sum_identity, swap_move
from equivalence.verdict import all_extensions_equivalent, filtrations_equivalent
from filtration.engine import CANONICAL, build_coprimary_filtration, resolve_order
from filtration.report import VerificationReport
from filtration.verify import exhaustive_chain_search, lemma_key_check, permutation_stability, verify_filtration
from omega.chains import (
    alternative_chain_prefix, canonical_omega_prefix, cross_check, omega_example_module, omega_verify,
)
from omega.cofinite import CofiniteZModule, ass_or_empty
from poset.specialization import build_specialization_poset
from utils.exceptions import ModuleTooLargeError, PreconditionError, SemanticError, UnsupportedBackendError
from utils.logger import get_logger, log_execution_time

# Initialize logger
logger = get_logger(__name__)

COMMANDS = ("ass", "filt", "verify", "equiv", "swap", "extensions", "decompose", "oracle", "omega")


@dataclass
class CommandOptions:
    order: Optional[str] = None
    seed: Optional[int] = None
    max_extensions: Optional[int] = None
    prefix: Optional[int] = None
    module: Optional[str] = None
    index: Optional[int] = None


@dataclass
class CommandResult:
    payload: Dict[str, Any]
    exit_code: int = 0


def _primes(primes) -> list:
    return [p.generator_strings() for p in sorted_primes(primes)]


class CommandContext:
    """Resolved module, options and problem for one invocation"""

    def __init__(self, problem: ProblemFile, options: CommandOptions):
        self.problem = problem
        self.options = options
        self.decl = problem.module_decl(options.module)
        self.module = build_module(problem, self.decl)

    @property
    def presentation(self) -> ModulePresentation:
        if isinstance(self.module, CofiniteZModule):
            raise UnsupportedBackendError("cofinite modules only support the ass and omega commands")
        return self.module

    def _int_option(self, value: Optional[int], key: str, default: int) -> int:
        if value is not None:
            return value
        param = self.problem.param(key)
        if param is None:
            return default
        if not isinstance(param, int):
            raise SemanticError(f"parameter {key} must be a number, got {param!r}")
        return param

    @property
    def seed(self) -> int:
        return self._int_option(self.options.seed, "seed", Config.DEFAULT_SEED)

    @property
    def index(self) -> int:
        return self._int_option(self.options.index, "index", 0)

    @property
    def prefix(self) -> int:
        return self._int_option(self.options.prefix, "prefix", Config.OMEGA_DEFAULT_PREFIX)

    @property
    def max_extensions(self) -> int:
        return self._int_option(self.options.max_extensions, "max_extensions", Config.DEFAULT_MAX_EXTENSIONS)

    def order(self, position: int = 0):
        """Order from --order (first order only), else the problem's order lines, else canonical"""
        if position == 0 and self.options.order is not None:
            if self.options.order.strip() == CANONICAL:
                return CANONICAL
            return parse_order_text(self.options.order, self.problem.ring)
        if position < len(self.problem.orders):
            return self.problem.orders[position]
        if position == 0:
            return CANONICAL
        raise PreconditionError(f"command needs {position + 1} order lines")

    def handle(self, name: str):
        if name == self.decl.name:
            return self.presentation.whole()
        decl = self.problem.submodule_decl(name)
        if decl is None:
            raise SemanticError(f"{name!r} is not a submodule of {self.decl.name}")
        return build_submodule(self.problem, decl, self.presentation)


# ---------------------------------------------------------------------- commands


def _cmd_ass(ctx: CommandContext) -> CommandResult:
    if isinstance(ctx.module, CofiniteZModule):
        return CommandResult({'ass': ass_or_empty(ctx.module).to_dict()})
    return CommandResult({'ass': _primes(associated_primes(ctx.presentation))})


def _cmd_filt(ctx: CommandContext) -> CommandResult:
    filtration = build_coprimary_filtration(ctx.presentation, ctx.order())
    report = verify_filtration(filtration.module, filtration.terms, filtration.order)
    return CommandResult({'filtration': filtration.to_dict(), 'verification': report.to_dict()},
                         0 if report.passed else 3)


def _cmd_verify(ctx: CommandContext) -> CommandResult:
    module = ctx.presentation
    order = resolve_order(module, ctx.order())
    if ctx.problem.chain is not None:
        chain = [ctx.handle(name) for name in ctx.problem.chain]
        report = verify_filtration(module, chain, order)
        return CommandResult({'chain': list(ctx.problem.chain), 'verification': report.to_dict()},
                             0 if report.passed else 3)

    filtration = build_coprimary_filtration(module, order)
    report = verify_filtration(module, filtration.terms, order)
    poset = build_specialization_poset(order)
    for prime in poset.minimal_elements():
        kernel = filtration.term(1) if prime == order[0] else localization_kernel(module, prime)
        report.extend(lemma_key_check(module, prime, kernel), prefix=f"kernel at {prime}: ")
    seeds = range(ctx.seed, ctx.seed + Config.STABILITY_SEEDS)
    unstable = [s for s in seeds if not permutation_stability(module, order, seed=s)]
    report.add("permutation stability", not unstable,
               None if not unstable else f"changed under seeds {unstable}")
    count = element_count(module)
    if module.ring.is_pid and count is not None and count <= Config.UNIQUENESS_SEARCH_MAX_ELEMENTS:
        chains = exhaustive_chain_search(module, order)
        report.add("uniqueness", len(chains) == 1, None if len(chains) == 1 else f"{len(chains)} chains pass")
    return CommandResult({'filtration': filtration.to_dict(), 'verification': report.to_dict()},
                         0 if report.passed else 3)


def _cmd_equiv(ctx: CommandContext) -> CommandResult:
    first = build_coprimary_filtration(ctx.presentation, ctx.order(0))
    second = build_coprimary_filtration(ctx.presentation, ctx.order(1))
    verdict = filtrations_equivalent(first, second)
    return CommandResult({
        'orders': [[p.generator_strings() for p in f.order] for f in (first, second)],
        'equivalence': verdict.to_dict(),
    })


def _cmd_swap(ctx: CommandContext) -> CommandResult:
    filtration = build_coprimary_filtration(ctx.presentation, ctx.order())
    move = swap_move(filtration, ctx.index)
    back = swap_move(move.result, ctx.index).result
    report = verify_filtration(move.result.module, move.result.terms, move.result.order)
    report.add("inverse swap restores the chain", back.terms == filtration.terms,
               None if back.terms == filtration.terms else "swapping back gives a different chain")
    return CommandResult({
        'index': ctx.index,
        'before': filtration.to_dict(),
        'after': move.result.to_dict(),
        'replacement': move.replacement.describe(),
        'verification': report.to_dict(),
    }, 0 if report.passed else 3)


def _cmd_extensions(ctx: CommandContext) -> CommandResult:
    module = ctx.presentation
    survey = all_extensions_equivalent(module, ctx.max_extensions)
    poset = build_specialization_poset(associated_primes(module))
    report = VerificationReport(subject="rank-0 pairs")
    for P, Q in combinations(poset.minimal_elements(), 2):
        report.extend(intersection_identity(module, P, Q), prefix=f"{P}, {Q}: ")
        report.extend(sum_identity(module, P, Q), prefix=f"{P}, {Q}: ")
    return CommandResult({'survey': survey.to_dict(), 'verification': report.to_dict()},
                         0 if report.passed else 3)


def _cmd_decompose(ctx: CommandContext) -> CommandResult:
    return CommandResult({'decomposition': direct_sum_decompose(ctx.presentation).to_dict()})


def _cmd_oracle(ctx: CommandContext) -> CommandResult:
    module = ctx.presentation
    computed = associated_primes(module)
    try:
        brute = oracle_ass(module)
    except ModuleTooLargeError as e:
        return CommandResult({'ass': _primes(computed), 'oracle': None, 'skipped': e.message})
    agree = computed == brute
    return CommandResult({'ass': _primes(computed), 'oracle': _primes(brute), 'agree': agree},
                         0 if agree else 3)


def _cmd_omega(ctx: CommandContext) -> CommandResult:
    if not isinstance(ctx.module, CofiniteZModule):
        raise UnsupportedBackendError("omega needs a cofinite module declaration")
    module = ctx.module
    which = ctx.problem.param("chain", "canonical")
    if which == "alternative":
        if module != omega_example_module():
            raise PreconditionError("the alternative chain lives on cofinite scales (1, 1) from 2")
        chain = [module] + alternative_chain_prefix(ctx.prefix)
    elif which == "canonical":
        chain = canonical_omega_prefix(module, ctx.prefix)
    else:
        raise SemanticError(f"unknown omega chain {which!r}; use canonical or alternative")
    report = omega_verify(chain)
    payload = {'chain': which, 'terms': [t.to_dict() for t in chain],
               'display': [str(t) for t in chain], 'verification': report.to_dict()}
    if module.support.is_finite():
        payload['cross_check'] = cross_check(module)
    return CommandResult(payload, 0 if report.passed else 3)


DISPATCH: Dict[str, Callable[[CommandContext], CommandResult]] = {
    "ass": _cmd_ass,
    "filt": _cmd_filt,
    "verify": _cmd_verify,
    "equiv": _cmd_equiv,
    "swap": _cmd_swap,
    "extensions": _cmd_extensions,
    "decompose": _cmd_decompose,
    "oracle": _cmd_oracle,
    "omega": _cmd_omega,
}


def _module_echo(ctx: CommandContext) -> Dict[str, Any]:
    if isinstance(ctx.module, CofiniteZModule):
        return {'name': ctx.decl.name, 'cofinite': ctx.module.to_dict()}
    return {'name': ctx.decl.name, **ctx.module.describe()}


@log_execution_time(logger)
def execute_command(problem: ProblemFile, command: str,
                    options: Union[CommandOptions, None] = None) -> CommandResult:
    """
    Run one command and wrap its payload in the report envelope.

    Raises:
        UnsupportedBackendError: For an unknown command or a module the command cannot handle
        CoprimeError: Whatever the underlying operation raises
    """
    if command not in DISPATCH:
        raise UnsupportedBackendError(f"unknown command {command!r}", details={'commands': list(COMMANDS)})
    ctx = CommandContext(problem, options or CommandOptions())
    logger.info(f"running {command} on module {ctx.decl.name}")
    result = DISPATCH[command](ctx)
    result.payload = {
        'schema_version': Config.JSON_SCHEMA_VERSION,
        'tool_version': Config.TOOL_VERSION,
        'command': command,
        'ring': problem.ring.describe(),
        'module': _module_echo(ctx),
        'result': result.payload,
    }
    return result
