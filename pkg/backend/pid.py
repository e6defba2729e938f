"""
Modules over Z and GF(p)[x]

A PID module is coker(A) = R^k / im(A), the columns of A being relations.
A submodule is the Hermite basis of its full preimage lattice L, with
im(A) <= L <= R^k. Subquotients S/T are decomposed by a Smith form of the
coordinates of T in the basis of S; the left-inverse transform carries the
invariant-factor generators back into ambient coordinates.
"""

from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import product
from math import prod
from random import Random
from typing import Any, List, Optional, Sequence, Tuple

from backend.presentation import CoprimaryCertificate, ModulePresentation, NilpotencyEntry, SubmoduleHandle
from backend.rings import GF_POLY, PrimeIdealRef, RingSpec
from kernel.euclid import EuclideanRing
from kernel.normal_forms import (
    EchelonResult, coordinates, hermite_basis, lattice_contains, lattice_intersection,
    lattice_sum, reduce_vector, smith_normal_form, transpose,
)
from kernel.unipoly import UniPoly
from utils.exceptions import (
    AmbientMismatchError, ArithmeticDomainError, ModuleTooLargeError, PreconditionError, ZeroModuleError,
)
from utils.logger import get_logger

# Initialize logger
logger = get_logger(__name__)


@lru_cache(maxsize=4096)
def _echelon(rows: Tuple[Tuple, ...], width: int, ring: EuclideanRing) -> EchelonResult:
    return hermite_basis([list(r) for r in rows], width, ring)


@dataclass(frozen=True)
class CyclicSummand:
    """One summand R/(d) of a subquotient; d is zero for a free summand"""

    generator: Tuple
    factor: Any


@lru_cache(maxsize=4096)
def _decompose(s_rows: Tuple[Tuple, ...], t_rows: Tuple[Tuple, ...], width: int,
               ring: EuclideanRing) -> Tuple[CyclicSummand, ...]:
    S = _echelon(s_rows, width, ring)
    s = len(S.basis)
    if s == 0:
        return ()
    coords = []
    for row in t_rows:
        c = coordinates(S, row)
        if c is None:
            raise PreconditionError("subquotient S/T needs T contained in S")
        coords.append(c)
    # columns of the relation matrix are the coordinates of T's generators
    relation_matrix = transpose(coords, cols=s) if coords else [[] for _ in range(s)]
    snf = smith_normal_form(relation_matrix, ring)
    factors = list(snf.diagonal) + [ring.zero] * (s - len(snf.diagonal))
    summands = []
    for i, d in enumerate(factors):
        if ring.is_unit(d):
            continue
        vec = [ring.zero] * width
        for j in range(s):
            c = snf.left_inverse[j][i]
            if not ring.is_zero(c):
                vec = [v + c * b for v, b in zip(vec, S.basis[j])]
        summands.append(CyclicSummand(tuple(vec), d))
    return tuple(summands)


@dataclass(frozen=True)
class PIDModule(ModulePresentation):
    """coker of a k x m relation matrix over Z or GF(p)[x]"""

    ring: RingSpec
    rank: int
    relations: Tuple[Tuple, ...]

    @classmethod
    def coker(cls, ring: RingSpec, matrix: Sequence[Sequence[Any]], rank: Optional[int] = None) -> "PIDModule":
        """
        Build coker(matrix); rows index generators, columns are relations.

        Raises:
            ArithmeticDomainError: On entries outside the ring or ragged rows
        """
        R = ring.euclidean()
        rows = [[R.element(e) for e in row] for row in matrix]
        if rank is None:
            rank = len(rows)
        if len(rows) != rank:
            raise ArithmeticDomainError(f"relation matrix has {len(rows)} rows, expected {rank}")
        widths = {len(r) for r in rows}
        if len(widths) > 1:
            raise ArithmeticDomainError("ragged relation matrix", details={'row_lengths': sorted(widths)})
        for e in (e for r in rows for e in r):
            if not R.owns(e):
                raise ArithmeticDomainError(f"entry {e} is not an element of {ring}")
        return cls(ring, rank, tuple(tuple(r) for r in rows))

    @cached_property
    def R(self) -> EuclideanRing:
        return self.ring.euclidean()

    @property
    def relation_count(self) -> int:
        return len(self.relations[0]) if self.relations else 0

    @cached_property
    def _relation_rows(self) -> Tuple[Tuple, ...]:
        return tuple(tuple(col) for col in transpose(self.relations)) if self.relation_count else ()

    # ------------------------------------------------------------------ handles

    def handle(self, generators: Sequence[Sequence[Any]]) -> SubmoduleHandle:
        """The submodule generated by the given ambient vectors"""
        rows = [tuple(self.R.element(x) for x in g) for g in generators]
        if any(len(r) != self.rank for r in rows):
            raise AmbientMismatchError(f"generator length does not match ambient rank {self.rank}")
        basis = _echelon(tuple(rows) + self._relation_rows, self.rank, self.R).basis
        return SubmoduleHandle(self, basis)

    def lattice(self, S: SubmoduleHandle) -> EchelonResult:
        return _echelon(S.data, self.rank, self.R)

    def whole(self) -> SubmoduleHandle:
        return self.handle([[self.R.one if i == j else self.R.zero for j in range(self.rank)]
                            for i in range(self.rank)])

    def zero(self) -> SubmoduleHandle:
        return self.handle([])

    def contains(self, outer, inner):
        return lattice_contains(self.lattice(outer), self.lattice(inner))

    def intersection(self, a, b):
        return SubmoduleHandle(self, lattice_intersection(self.lattice(a), self.lattice(b), self.rank).basis)

    def sum(self, a, b):
        return SubmoduleHandle(self, lattice_sum(self.lattice(a), self.lattice(b), self.rank).basis)

    def decompose(self, S: SubmoduleHandle, T: SubmoduleHandle) -> Tuple[CyclicSummand, ...]:
        """S/T as a direct sum of nonzero cyclic modules R/(d_i), d_1 | d_2 | ..., free summands last"""
        return _decompose(S.data, T.data, self.rank, self.R)

    # ------------------------------------------------------------------ algebra

    def associated_primes(self, S, T):
        primes = set()
        for summand in self.decompose(S, T):
            if self.R.is_zero(summand.factor):
                primes.add(PrimeIdealRef.zero(self.ring))
            else:
                for p, _ in self.R.factor(summand.factor):
                    primes.add(PrimeIdealRef.principal(self.ring, p))
        return frozenset(primes)

    def localization_kernel_of(self, S, P):
        R = self.R
        generators = []
        for summand in self.decompose(S, self.zero()):
            if R.is_zero(summand.factor):
                continue
            if P.is_zero():
                multiplier = R.one
            else:
                multiplier = R.power(P.generator, R.valuation(summand.factor, P.generator))
            generators.append([multiplier * x for x in summand.generator])
        kernel = self.handle(generators)
        logger.debug(f"localization kernel at {P}: {len(kernel.data)} basis rows")
        return kernel

    def annihilator(self, S, T):
        R = self.R
        summands = self.decompose(S, T)
        if not summands:
            return R.one
        result = R.one
        for summand in summands:
            result = R.lcm(result, summand.factor)
        return result

    def ideal_strings(self, ideal):
        return [self.R.format(self.R.canonical(ideal))]

    def format_vector(self, vector: Sequence[Any], T: Optional[SubmoduleHandle] = None) -> str:
        if T is not None:
            vector = reduce_vector(self.lattice(T), vector)
        entries = [self.R.format(x) for x in vector]
        return entries[0] if len(entries) == 1 else "(" + ", ".join(entries) + ")"

    def coprimary_certificate(self, S, T, P):
        R = self.R
        summands = self.decompose(S, T)
        if not summands:
            raise ZeroModuleError("coprimarity is undefined for the zero module")

        nilpotency = []
        witnesses = []
        for summand in summands:
            d = summand.factor
            element = self.format_vector(summand.generator, T)
            if not P.is_zero():
                pi = P.generator
                exponent = None
                if not R.is_zero(d):
                    bound = sum(e for _, e in R.factor(d))
                    for n in range(bound + 1):
                        if R.divides(d, R.power(pi, n)):
                            exponent = n
                            break
                nilpotency.append(NilpotencyEntry(R.format(pi), element, exponent))
            if R.is_zero(d):
                continue
            for q, _ in R.factor(d):
                if not P.is_zero() and q == P.generator:
                    continue
                cofactor = R.exact_div(d, q)
                killed = self.format_vector([cofactor * x for x in summand.generator], T)
                witnesses.append(
                    f"{R.format(q)}*{killed} = 0 with {killed} != 0, {R.format(q)} not in {P}"
                )

        certificate = CoprimaryCertificate(
            prime=P,
            nilpotency=tuple(nilpotency),
            injectivity_witnesses=tuple(witnesses),
            verdict=all(e.exponent is not None for e in nilpotency) and not witnesses,
        )
        return certificate

    def invariants(self, S, T):
        summands = self.decompose(S, T)
        free = sum(1 for s in summands if self.R.is_zero(s.factor))
        return {
            'kind': 'pid',
            'free_rank': free,
            'invariant_factors': [self.R.format(s.factor) for s in summands if not self.R.is_zero(s.factor)],
            'complete': True,
        }

    def element_count(self, S, T):
        counts = [self.R.residue_count(s.factor) for s in self.decompose(S, T)]
        if any(c is None for c in counts):
            return None
        return prod(counts)

    # ------------------------------------------------------------------ brute force

    def _quotient_lattice(self, S: SubmoduleHandle, T: SubmoduleHandle) -> Tuple[EchelonResult, EchelonResult]:
        """Basis of S and the echelon form of T's coordinates in it"""
        basis = self.lattice(S)
        s = len(basis.basis)
        coords = []
        for row in T.data:
            c = coordinates(basis, row)
            if c is None:
                raise PreconditionError("subquotient S/T needs T contained in S")
            coords.append(c)
        return basis, hermite_basis(coords, s, self.R)

    def elements(self, S: SubmoduleHandle, T: SubmoduleHandle, limit: int) -> List[Tuple]:
        """
        Canonical coset representatives of S/T as ambient vectors.

        Independent of the Smith form: representatives are the reduced
        coordinate vectors modulo an echelon basis of T inside S.

        Raises:
            ModuleTooLargeError: If S/T is infinite or has more than limit elements
        """
        R = self.R
        basis, relations = self._quotient_lattice(S, T)
        s = len(basis.basis)
        if len(relations.pivots) < s:
            raise ModuleTooLargeError("module is not finite", details={'free_coordinates': s - len(relations.pivots)})
        pivots = [relations.basis[i][c] for i, c in enumerate(relations.pivots)]
        size = prod(R.residue_count(d) for d in pivots) if pivots else 1
        if size > limit:
            raise ModuleTooLargeError(f"module has {size} elements, limit is {limit}", details={'size': size, 'limit': limit})
        reps = []
        for coeffs in product(*(list(R.residues(d)) for d in pivots)):
            vec = [R.zero] * self.rank
            for c, row in zip(coeffs, basis.basis):
                if not R.is_zero(c):
                    vec = [v + c * b for v, b in zip(vec, row)]
            reps.append(tuple(vec))
        return reps

    def oracle_ass(self, S, T, limit):
        R = self.R
        basis, relations = self._quotient_lattice(S, T)
        elements = self.elements(S, T, limit)
        bound = len(elements) if self.ring.kind != GF_POLY else sum(
            relations.basis[i][c].degree for i, c in enumerate(relations.pivots)
        )
        primes = set()
        for vec in elements:
            coords = coordinates(basis, vec)
            if all(R.is_zero(c) for c in coords):
                continue
            for a in R.annihilator_candidates(bound):
                if coordinates(relations, [a * c for c in coords]) is not None:
                    if R.is_prime_element(a):
                        primes.add(PrimeIdealRef.principal(self.ring, a))
                    break
        return frozenset(primes)

    def submodules(self, limit):
        elements = self.elements(self.whole(), self.zero(), limit)
        found = {self.zero()}
        frontier = [self.zero()]
        while frontier:
            nxt = []
            for sub in frontier:
                for vec in elements:
                    bigger = self.handle(list(sub.data) + [vec])
                    if bigger not in found:
                        found.add(bigger)
                        nxt.append(bigger)
            frontier = nxt
        logger.debug(f"enumerated {len(found)} submodules of a module with {len(elements)} elements")
        return sorted(found, key=lambda h: (self.element_count(h, self.zero()), str(h)))

    def _random_scalar(self, rng: Random):
        if self.ring.kind == GF_POLY:
            p = self.ring.modulus
            return UniPoly((rng.randrange(p), rng.randrange(p)), p)
        return rng.randint(-3, 3)

    def permuted(self, rng):
        R = self.R
        perm = list(range(self.rank))
        rng.shuffle(perm)
        rows = [list(self.relations[perm[i]]) for i in range(self.rank)]
        m = self.relation_count
        if m:
            cols = list(range(m))
            rng.shuffle(cols)
            rows = [[row[c] for c in cols] for row in rows]
            for _ in range(2 * m):
                i, j = rng.randrange(m), rng.randrange(m)
                if i != j:
                    c = self._random_scalar(rng)
                    for row in rows:
                        row[i] = row[i] + c * row[j]
        twin = PIDModule.coker(self.ring, rows, self.rank)

        def pull_back(handle: SubmoduleHandle) -> SubmoduleHandle:
            vectors = []
            for row in handle.data:
                original = [R.zero] * self.rank
                for i, x in enumerate(row):
                    original[perm[i]] = x
                vectors.append(original)
            return self.handle(vectors)

        return twin, pull_back

    # ------------------------------------------------------------------ display

    def describe(self):
        return {
            'backend': 'pid',
            'rank': self.rank,
            'relations': [[self.R.format(x) for x in row] for row in self.relations],
        }

    def describe_handle(self, S):
        return {'basis': [[self.R.format(x) for x in row] for row in S.data]}

    def format_handle(self, S):
        rows = ["[" + ", ".join(self.R.format(x) for x in row) + "]" for row in S.data]
        return "span{" + ", ".join(rows) + "}"
