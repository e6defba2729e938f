"""
Problem-file parser and renderer

Grammar (one declaration per line, '#' comments):

    ring Z | ring GF(p)[x] | ring Q[x,y,...] monomial | ring GF(p)[x,y,...] monomial
    module M = coker [[a, b], [c, d]]        rows are generators, columns relations
    module M = cyclic (x*y, z^2)             A / (monomial ideal)
    module M = dsum ((x); (y, x^2))          direct sum of cyclic quotients
    module M = cofinite scales (1, 1) from 2 [below B] [except (3, 7)]
    submodule N = span [[...]]               columns generate (PID)
    submodule N = ideals ((x); (y))          one ideal per summand (monomial)
    order = (2), (3)                         ascending; a second line is a comparison order
    chain = M, N1, N2                        descending, by name
    param key = value
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from backend.monomial_module import MonomialModule
from backend.pid import PIDModule
from backend.presentation import ModulePresentation, SubmoduleHandle
from backend.rings import INTEGERS, MONOMIAL, PrimeIdealRef, RingSpec
from cli.lexer import Token, tokenize
from kernel.normal_forms import transpose
from kernel.unipoly import UniPoly
from monomial.ideals import MonomialIdeal, format_monomial
from omega.cofinite import CofiniteZModule
from utils.exceptions import ArithmeticDomainError, SemanticError, SyntacticError
from utils.logger import get_logger

# Initialize logger
logger = get_logger(__name__)

COKER = "coker"
CYCLIC = "cyclic"
DSUM = "dsum"
COFINITE = "cofinite"
SPAN = "span"
IDEALS = "ideals"

Monomial = Tuple[int, ...]
ParamValue = Union[int, str]


@dataclass(frozen=True)
class ModuleDecl:
    name: str
    kind: str
    payload: Any
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class SubmoduleDecl:
    name: str
    kind: str
    payload: Any
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class ProblemFile:
    """A parsed problem: one ring, named modules and submodules, orders, a chain and parameters"""

    ring: RingSpec
    modules: Tuple[ModuleDecl, ...] = ()
    submodules: Tuple[SubmoduleDecl, ...] = ()
    orders: Tuple[Tuple[PrimeIdealRef, ...], ...] = ()
    chain: Optional[Tuple[str, ...]] = None
    params: Tuple[Tuple[str, ParamValue], ...] = ()

    def module_decl(self, name: Optional[str] = None) -> ModuleDecl:
        """The named module, or the first one"""
        if not self.modules:
            raise SemanticError("the problem declares no module")
        if name is None:
            return self.modules[0]
        for decl in self.modules:
            if decl.name == name:
                return decl
        raise SemanticError(f"unknown module {name!r}", details={'modules': [d.name for d in self.modules]})

    def submodule_decl(self, name: str) -> Optional[SubmoduleDecl]:
        return next((d for d in self.submodules if d.name == name), None)

    def param(self, key: str, default: Optional[ParamValue] = None) -> Optional[ParamValue]:
        return dict(self.params).get(key, default)


# ---------------------------------------------------------------------- token cursor


class _Cursor:
    """Walks the tokens of one line"""

    def __init__(self, tokens: List[Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self, offset: int = 0) -> Optional[Token]:
        i = self.pos + offset
        return self.tokens[i] if i < len(self.tokens) else None

    def at_end(self) -> bool:
        return self.pos >= len(self.tokens)

    def _end_position(self) -> Tuple[int, int]:
        last = self.tokens[-1]
        return last.line, last.column + len(str(last.value))

    def error(self, message: str, token: Optional[Token] = None) -> SyntacticError:
        if token is None:
            token = self.peek()
        if token is None:
            line, column = self._end_position()
            return SyntacticError(message + " at end of line", line, column)
        return SyntacticError(message, token.line, token.column)

    def next(self) -> Token:
        token = self.peek()
        if token is None:
            raise self.error("unexpected end of line")
        self.pos += 1
        return token

    def accept(self, kind: str, value: Optional[str] = None) -> Optional[Token]:
        token = self.peek()
        if token is not None and token.kind == kind and (value is None or token.value == value):
            self.pos += 1
            return token
        return None

    def expect(self, kind: str, value: Optional[str] = None) -> Token:
        token = self.accept(kind, value)
        if token is None:
            wanted = repr(value) if value is not None else kind
            found = self.peek()
            raise self.error(f"expected {wanted}, found {found.value!r}" if found else f"expected {wanted}")
        return token

    def finish(self) -> None:
        if not self.at_end():
            token = self.peek()
            raise self.error(f"unexpected {token.value!r}", token)


# ---------------------------------------------------------------------- expressions


@dataclass(frozen=True)
class _Term:
    coeff: int
    powers: Tuple[Tuple[str, int], ...]
    token: Token


def _parse_factor(cur: _Cursor) -> Tuple[int, Dict[str, int]]:
    token = cur.peek()
    if token is None:
        raise cur.error("expected a number or variable")
    if cur.accept("int"):
        return token.value, {}
    if cur.accept("name"):
        exponent = 1
        if cur.accept("caret"):
            exponent = cur.expect("int").value
        return 1, {token.value: exponent}
    raise cur.error(f"expected a number or variable, found {token.value!r}")


def _parse_expression(cur: _Cursor) -> List[_Term]:
    """Signed sum of products of integers and powers of variables"""
    terms = []
    sign = -1 if cur.accept("minus") else 1
    while True:
        start = cur.peek()
        coeff, powers = _parse_factor(cur)
        while cur.accept("star"):
            c, p = _parse_factor(cur)
            coeff *= c
            for name, e in p.items():
                powers[name] = powers.get(name, 0) + e
        terms.append(_Term(sign * coeff, tuple(sorted(powers.items())), start))
        if cur.accept("plus"):
            sign = 1
        elif cur.accept("minus"):
            sign = -1
        else:
            return terms


def _unknown_variable(term: _Term, ring: RingSpec) -> SemanticError:
    names = [n for n, _ in term.powers if n not in ring.variables]
    return SemanticError(f"unknown variable {names[0]!r} in ring {ring}", term.token.line, term.token.column)


def _ring_element(terms: List[_Term], ring: RingSpec):
    """An integer (Z) or a polynomial (GF(p)[x])"""
    if ring.kind == INTEGERS:
        for t in terms:
            if t.powers:
                raise _unknown_variable(t, ring)
        return sum(t.coeff for t in terms)
    var = ring.variables[0]
    total = UniPoly((), ring.modulus)
    for t in terms:
        if any(n != var for n, _ in t.powers):
            raise _unknown_variable(t, ring)
        exponent = dict(t.powers).get(var, 0)
        total = total + UniPoly.constant(t.coeff, ring.modulus) * UniPoly.variable(ring.modulus) ** exponent
    return total


def _monomial(terms: List[_Term], ring: RingSpec) -> Optional[Monomial]:
    """A monomial generator; None for the generator 0"""
    head = terms[0]
    if len(terms) != 1 or head.coeff not in (0, 1):
        raise SemanticError("non-monomial generator", head.token.line, head.token.column)
    if head.coeff == 0:
        if head.powers:
            raise SemanticError("non-monomial generator", head.token.line, head.token.column)
        return None
    exponents = [0] * ring.nvars
    for name, e in head.powers:
        if name not in ring.variables:
            raise _unknown_variable(head, ring)
        exponents[ring.variables.index(name)] += e
    return tuple(exponents)


def _parse_int_list(cur: _Cursor) -> Tuple[int, ...]:
    cur.expect("lpar")
    values = []
    if not cur.accept("rpar"):
        while True:
            values.append(cur.expect("int").value)
            if cur.accept("rpar"):
                break
            cur.expect("comma")
    return tuple(values)


def _parse_generators(cur: _Cursor, ring: RingSpec) -> Tuple[Monomial, ...]:
    cur.expect("lpar")
    gens = []
    while True:
        m = _monomial(_parse_expression(cur), ring)
        if m is not None:
            gens.append(m)
        if cur.accept("rpar"):
            return tuple(gens)
        cur.expect("comma")


def _parse_generator_groups(cur: _Cursor, ring: RingSpec) -> Tuple[Tuple[Monomial, ...], ...]:
    cur.expect("lpar")
    groups = [_parse_generators(cur, ring)]
    while cur.accept("semi"):
        groups.append(_parse_generators(cur, ring))
    cur.expect("rpar")
    return tuple(groups)


def _parse_matrix(cur: _Cursor, ring: RingSpec) -> Tuple[Tuple[Any, ...], ...]:
    cur.expect("lbracket")
    rows = []
    if cur.accept("rbracket"):
        return ()
    while True:
        open_token = cur.expect("lbracket")
        row = []
        if not cur.accept("rbracket"):
            while True:
                row.append(_ring_element(_parse_expression(cur), ring))
                if cur.accept("rbracket"):
                    break
                cur.expect("comma")
        if rows and len(row) != len(rows[0]):
            raise SemanticError("ragged matrix: rows have different lengths", open_token.line, open_token.column)
        rows.append(tuple(row))
        if cur.accept("rbracket"):
            return tuple(rows)
        cur.expect("comma")


def _parse_prime(cur: _Cursor, ring: RingSpec) -> PrimeIdealRef:
    start = cur.expect("lpar")
    gens = [_parse_expression(cur)]
    while cur.accept("comma"):
        gens.append(_parse_expression(cur))
    cur.expect("rpar")
    try:
        if ring.kind == MONOMIAL:
            monomials = [_monomial(g, ring) for g in gens]
            variables = set()
            for m in monomials:
                if m is None:
                    continue
                if sum(m) != 1:
                    raise SemanticError("monomial primes are generated by variables", start.line, start.column)
                variables.add(m.index(1))
            return PrimeIdealRef.monomial(ring, variables)
        if len(gens) != 1:
            raise SemanticError(f"primes of {ring} have one generator", start.line, start.column)
        return PrimeIdealRef.principal(ring, _ring_element(gens[0], ring))
    except ArithmeticDomainError as e:
        raise SemanticError(e.message, start.line, start.column) from e


def _parse_prime_list(cur: _Cursor, ring: RingSpec) -> Tuple[PrimeIdealRef, ...]:
    primes = [_parse_prime(cur, ring)]
    while cur.accept("comma"):
        primes.append(_parse_prime(cur, ring))
    return tuple(primes)


def parse_order_text(text: str, ring: RingSpec) -> Tuple[PrimeIdealRef, ...]:
    """Parse '(g), (g), ...' as given on the command line"""
    lines = tokenize(text)
    if len(lines) != 1:
        raise SyntacticError("an order is a single line of primes", 1, 1)
    cur = _Cursor(lines[0])
    primes = _parse_prime_list(cur, ring)
    cur.finish()
    return primes


# ---------------------------------------------------------------------- declarations


def _parse_ring(cur: _Cursor) -> RingSpec:
    head = cur.expect("name")
    try:
        if head.value == "Z":
            return RingSpec.integers()
        modulus = None
        if head.value == "GF":
            cur.expect("lpar")
            modulus = cur.expect("int").value
            cur.expect("rpar")
        elif head.value != "Q":
            raise SemanticError(f"unknown ring {head.value!r}", head.line, head.column)
        cur.expect("lbracket")
        names = [cur.expect("name").value]
        while cur.accept("comma"):
            names.append(cur.expect("name").value)
        cur.expect("rbracket")
        if cur.accept("name", "monomial"):
            return RingSpec.monomial(tuple(names), modulus)
        if modulus is None or len(names) != 1:
            raise SemanticError("only GF(p)[x] is a polynomial PID; add 'monomial' for monomial rings",
                                head.line, head.column)
        return RingSpec.gf_poly(modulus, names[0])
    except ArithmeticDomainError as e:
        raise SemanticError(e.message, head.line, head.column) from e


def _parse_module(cur: _Cursor, ring: RingSpec) -> ModuleDecl:
    name = cur.expect("name")
    cur.expect("equal")
    kind = cur.expect("name")
    if kind.value == COKER:
        if not ring.is_pid:
            raise SemanticError(f"coker needs a PID ring, not {ring}", kind.line, kind.column)
        payload = _parse_matrix(cur, ring)
    elif kind.value in (CYCLIC, DSUM):
        if ring.kind != MONOMIAL:
            raise SemanticError(f"{kind.value} needs a monomial ring, not {ring}", kind.line, kind.column)
        payload = (_parse_generators(cur, ring),) if kind.value == CYCLIC else _parse_generator_groups(cur, ring)
    elif kind.value == COFINITE:
        if ring.kind != INTEGERS:
            raise SemanticError("cofinite modules live over Z", kind.line, kind.column)
        payload = _parse_cofinite(cur)
    else:
        raise SemanticError(f"unknown module kind {kind.value!r}", kind.line, kind.column)
    return ModuleDecl(name.value, kind.value, payload, name.line)


def _parse_cofinite(cur: _Cursor) -> Tuple:
    cur.expect("name", "scales")
    scales = _parse_int_list(cur)
    lower = below = None
    excluded: Tuple[int, ...] = ()
    if cur.accept("name", "from"):
        lower = cur.expect("int").value
    if cur.accept("name", "below"):
        below = cur.expect("int").value
    if cur.accept("name", "except"):
        excluded = tuple(sorted(_parse_int_list(cur)))
    return scales, lower, below, excluded


def _parse_submodule(cur: _Cursor, ring: RingSpec) -> SubmoduleDecl:
    name = cur.expect("name")
    cur.expect("equal")
    kind = cur.expect("name")
    if kind.value == SPAN and ring.is_pid:
        payload = _parse_matrix(cur, ring)
    elif kind.value == IDEALS and ring.kind == MONOMIAL:
        payload = _parse_generator_groups(cur, ring)
    else:
        raise SemanticError(f"submodule kind {kind.value!r} does not fit ring {ring}", kind.line, kind.column)
    return SubmoduleDecl(name.value, kind.value, payload, name.line)


def _parse_names(cur: _Cursor) -> Tuple[Token, ...]:
    names = [cur.expect("name")]
    while cur.accept("comma"):
        names.append(cur.expect("name"))
    return tuple(names)


def parse_problem(text: str) -> ProblemFile:
    """
    Parse a problem file.

    Raises:
        LexicalError: On characters outside the token set
        SyntacticError: On token sequences outside the grammar
        SemanticError: On unknown variables, non-prime moduli, non-monomial
            generators, duplicate or unresolved names

    Examples:
        "ring Z\\nmodule M = coker [[12]]" -> Z/12
    """
    ring: Optional[RingSpec] = None
    modules: List[ModuleDecl] = []
    submodules: List[SubmoduleDecl] = []
    orders: List[Tuple[PrimeIdealRef, ...]] = []
    chain_tokens: Optional[Tuple[Token, ...]] = None
    params: List[Tuple[str, ParamValue]] = []
    names: Dict[str, int] = {}

    def claim(token: Token) -> None:
        if token.value in names:
            raise SemanticError(f"name {token.value!r} already declared on line {names[token.value]}",
                                token.line, token.column)
        names[token.value] = token.line

    for tokens in tokenize(text):
        cur = _Cursor(tokens)
        keyword = cur.expect("name")
        if keyword.value != "ring" and ring is None:
            raise SemanticError("the ring must be declared first", keyword.line, keyword.column)
        if keyword.value == "ring":
            if ring is not None:
                raise SemanticError("only one ring may be declared", keyword.line, keyword.column)
            ring = _parse_ring(cur)
        elif keyword.value == "module":
            claim(cur.peek() or keyword)
            modules.append(_parse_module(cur, ring))
        elif keyword.value == "submodule":
            claim(cur.peek() or keyword)
            submodules.append(_parse_submodule(cur, ring))
        elif keyword.value == "order":
            cur.expect("equal")
            orders.append(_parse_prime_list(cur, ring))
        elif keyword.value == "chain":
            if chain_tokens is not None:
                raise SemanticError("only one chain may be declared", keyword.line, keyword.column)
            cur.expect("equal")
            chain_tokens = _parse_names(cur)
        elif keyword.value == "param":
            key = cur.expect("name")
            cur.expect("equal")
            value = cur.next()
            if value.kind not in ("int", "name"):
                raise cur.error(f"parameter value must be a number or a word, found {value.value!r}", value)
            params.append((key.value, value.value))
        else:
            raise SemanticError(f"unknown declaration {keyword.value!r}", keyword.line, keyword.column)
        cur.finish()

    if ring is None:
        raise SyntacticError("missing ring declaration", 1, 1)

    chain = None
    if chain_tokens is not None:
        for token in chain_tokens:
            if token.value not in names:
                raise SemanticError(f"unresolved name {token.value!r} in chain", token.line, token.column)
        chain = tuple(t.value for t in chain_tokens)

    problem = ProblemFile(ring, tuple(modules), tuple(submodules), tuple(orders), chain, tuple(params))
    logger.debug(f"parsed problem over {ring} with {len(modules)} module(s)")
    return problem


# ---------------------------------------------------------------------- building


def build_module(problem: ProblemFile, decl: ModuleDecl) -> Union[ModulePresentation, CofiniteZModule]:
    ring = problem.ring
    if decl.kind == COKER:
        return PIDModule.coker(ring, decl.payload, rank=len(decl.payload))
    if decl.kind in (CYCLIC, DSUM):
        return MonomialModule.dsum(ring, [MonomialIdeal.of(group, ring.nvars) for group in decl.payload])
    scales, lower, below, excluded = decl.payload
    return CofiniteZModule.of(scales, lower, below, excluded)


def build_submodule(problem: ProblemFile, decl: SubmoduleDecl, module: ModulePresentation) -> SubmoduleHandle:
    if decl.kind == SPAN:
        columns = transpose(decl.payload) if decl.payload else []
        return module.handle(columns)
    return module.handle([MonomialIdeal.of(group, problem.ring.nvars) for group in decl.payload])


# ---------------------------------------------------------------------- rendering


def _format_entry(ring: RingSpec, value) -> str:
    return ring.euclidean().format(value)


def _format_matrix(ring: RingSpec, matrix) -> str:
    return "[" + ", ".join("[" + ", ".join(_format_entry(ring, e) for e in row) + "]" for row in matrix) + "]"


def _format_generators(ring: RingSpec, gens: Sequence[Monomial]) -> str:
    if not gens:
        return "(0)"
    return "(" + ", ".join(format_monomial(g, ring.variables) for g in gens) + ")"


def _format_groups(ring: RingSpec, groups) -> str:
    return "(" + "; ".join(_format_generators(ring, g) for g in groups) + ")"


def _format_ints(values: Sequence[int]) -> str:
    return "(" + ", ".join(str(v) for v in values) + ")"


def render_problem(problem: ProblemFile) -> str:
    """Write a problem back in the input grammar; parse_problem reads it back to an equal problem"""
    ring = problem.ring
    lines = [f"ring {ring.describe()}"]
    for decl in problem.modules:
        if decl.kind == COKER:
            body = f"coker {_format_matrix(ring, decl.payload)}"
        elif decl.kind == CYCLIC:
            body = f"cyclic {_format_generators(ring, decl.payload[0])}"
        elif decl.kind == DSUM:
            body = f"dsum {_format_groups(ring, decl.payload)}"
        else:
            scales, lower, below, excluded = decl.payload
            body = f"cofinite scales {_format_ints(scales)}"
            if lower is not None:
                body += f" from {lower}"
            if below is not None:
                body += f" below {below}"
            if excluded:
                body += f" except {_format_ints(excluded)}"
        lines.append(f"module {decl.name} = {body}")
    for decl in problem.submodules:
        if decl.kind == SPAN:
            lines.append(f"submodule {decl.name} = span {_format_matrix(ring, decl.payload)}")
        else:
            lines.append(f"submodule {decl.name} = ideals {_format_groups(ring, decl.payload)}")
    for order in problem.orders:
        lines.append("order = " + ", ".join(p.format() for p in order))
    if problem.chain is not None:
        lines.append("chain = " + ", ".join(problem.chain))
    for key, value in problem.params:
        lines.append(f"param {key} = {value}")
    return "\n".join(lines) + "\n"
