"""
Direct sums of cyclic monomial modules

A MonomialModule is A/I_1 + ... + A/I_s over A = k[x_1..x_n] with monomial
ideals I_j. Only split submodules (J_1/I_1 + ... + J_s/I_s) are tracked:
localization kernels, sums and intersections of split submodules are split
again, since localization commutes with finite direct sums.
"""

from dataclasses import dataclass
from itertools import combinations_with_replacement
from random import Random
from typing import List, Optional, Sequence, Tuple

from backend.presentation import CoprimaryCertificate, ModulePresentation, NilpotencyEntry, SubmoduleHandle
from backend.rings import PrimeIdealRef, RingSpec
from monomial.ideals import (
    MonomialIdeal, colon_by_ideal, colon_ideal, degree, format_monomial, ideal_intersection, ideal_sum,
    minimal_generators, mono_mul, monomials_in_box, saturate_ideal, standard_monomials,
    subquotient_associated_primes, variable,
)
from utils.exceptions import AmbientMismatchError, ModuleTooLargeError, UnsupportedBackendError, ZeroModuleError
from utils.logger import get_logger

# Initialize logger
logger = get_logger(__name__)


@dataclass(frozen=True)
class MonomialModule(ModulePresentation):
    """A direct sum of quotients A/I_j by monomial ideals"""

    ring: RingSpec
    ideals: Tuple[MonomialIdeal, ...]

    @classmethod
    def dsum(cls, ring: RingSpec, ideals: Sequence[MonomialIdeal]) -> "MonomialModule":
        if any(I.nvars != ring.nvars for I in ideals):
            raise AmbientMismatchError("ideal and ring disagree on the number of variables")
        return cls(ring, tuple(ideals))

    @property
    def nvars(self) -> int:
        return self.ring.nvars

    def handle(self, ideals: Sequence[MonomialIdeal]) -> SubmoduleHandle:
        """The split submodule with components J_j; each is taken modulo I_j"""
        if len(ideals) != len(self.ideals):
            raise AmbientMismatchError(f"expected {len(self.ideals)} component ideals, got {len(ideals)}")
        return SubmoduleHandle(self, tuple(ideal_sum(J, I) for J, I in zip(ideals, self.ideals)))

    def whole(self):
        return SubmoduleHandle(self, tuple(MonomialIdeal.unit(self.nvars) for _ in self.ideals))

    def zero(self):
        return SubmoduleHandle(self, self.ideals)

    def contains(self, outer, inner):
        return all(J.issubset(K) for J, K in zip(inner.data, outer.data))

    def intersection(self, a, b):
        return SubmoduleHandle(self, tuple(ideal_intersection(J, K) for J, K in zip(a.data, b.data)))

    def sum(self, a, b):
        return SubmoduleHandle(self, tuple(ideal_sum(J, K) for J, K in zip(a.data, b.data)))

    # ------------------------------------------------------------------ algebra

    def associated_primes(self, S, T):
        primes = set()
        for J, K in zip(S.data, T.data):
            for variables in subquotient_associated_primes(J, K):
                primes.add(PrimeIdealRef.monomial(self.ring, variables))
        return frozenset(primes)

    def localization_kernel_of(self, S, P):
        # (I : (A - P)^inf) = (I : u^inf) with u the product of the variables outside P
        u = tuple(0 if i in P.variables else 1 for i in range(self.nvars))
        kernel = SubmoduleHandle(self, tuple(
            ideal_intersection(J, saturate_ideal(I, u)) for J, I in zip(S.data, self.ideals)
        ))
        logger.debug(f"localization kernel at {P}: {self.format_handle(kernel)}")
        return kernel

    def annihilator(self, S, T):
        result = MonomialIdeal.unit(self.nvars)
        for J, K in zip(S.data, T.data):
            result = ideal_intersection(result, colon_by_ideal(K, J))
        return result

    def ideal_strings(self, ideal):
        return ideal.generator_strings(self.ring.variables)

    def coprimary_certificate(self, S, T, P):
        if S == T:
            raise ZeroModuleError("coprimarity is undefined for the zero module")
        names = self.ring.variables
        nilpotency = []
        witnesses = []
        for j, (J, K) in enumerate(zip(S.data, T.data)):
            if J == K:
                continue
            bound = max(K.max_exponent(), 0) + 1
            for i in sorted(P.variables):
                x = variable(i, self.nvars)
                for g in J.generators:
                    if K.contains(g):
                        continue
                    exponent = None
                    power = g
                    for n in range(bound + 1):
                        if K.contains(power):
                            exponent = n
                            break
                        power = mono_mul(power, x)
                    nilpotency.append(NilpotencyEntry(names[i], self._element(j, g), exponent))
            for i in range(self.nvars):
                if i in P.variables:
                    continue
                torsion = ideal_intersection(colon_ideal(K, variable(i, self.nvars)), J)
                for m in torsion.generators:
                    if not K.contains(m):
                        witnesses.append(
                            f"{names[i]}*{self._element(j, m)} = 0 with {self._element(j, m)} != 0, "
                            f"{names[i]} not in {P}"
                        )
                        break
        return CoprimaryCertificate(
            prime=P,
            nilpotency=tuple(nilpotency),
            injectivity_witnesses=tuple(witnesses),
            verdict=all(e.exponent is not None for e in nilpotency) and not witnesses,
        )

    def _element(self, summand: int, m) -> str:
        text = format_monomial(m, self.ring.variables)
        return text if len(self.ideals) == 1 else f"{text}@{summand + 1}"

    def invariants(self, S, T):
        parts = [(J, K) for J, K in zip(S.data, T.data) if J != K]
        annihilator = self.ideal_strings(self.annihilator(S, T))
        if not parts:
            return {'kind': 'zero', 'complete': True}
        if len(parts) == 1:
            J, K = parts[0]
            fresh = [g for g in J.generators if not K.contains(g)]
            if len(fresh) == 1:
                # J/K = A*g mod K, isomorphic to A/(K : g)
                return {
                    'kind': 'cyclic',
                    'annihilator': self.ideal_strings(colon_ideal(K, fresh[0])),
                    'complete': True,
                }
        bound = max(max(J.max_exponent(), K.max_exponent()) for J, K in parts)
        profiles = sorted(self._degree_profile(J, K, bound + 1) for J, K in parts)
        return {
            'kind': 'assumed',
            'annihilator': annihilator,
            'degree_profiles': profiles,
            'complete': False,
        }

    def _degree_profile(self, J: MonomialIdeal, K: MonomialIdeal, span: int) -> List[int]:
        """
        Standard-monomial counts per total degree, starting at the lowest degree of J/K.

        A graded profile, not an isomorphism invariant. Equal profiles never
        prove isomorphism, so verdicts drawn from them are only assumed.
        """
        fresh = [g for g in J.generators if not K.contains(g)]
        start = min(degree(g) for g in fresh)
        profile = []
        for d in range(start, start + span + 1):
            count = 0
            for combo in combinations_with_replacement(range(self.nvars), d):
                m = [0] * self.nvars
                for i in combo:
                    m[i] += 1
                m = tuple(m)
                if J.contains(m) and not K.contains(m):
                    count += 1
            profile.append(count)
        return profile

    def _finite_bound(self, J: MonomialIdeal, K: MonomialIdeal) -> Optional[int]:
        """Exponent bound enclosing every standard monomial of J/K, or None if J/K is infinite"""
        if J.issubset(K):
            return 0
        annihilator = colon_by_ideal(K, J)
        powers = []
        for i in range(self.nvars):
            pure = [g[i] for g in annihilator.generators if sum(g) == g[i]]
            if not pure:
                return None
            powers.append(min(pure))
        return max(powers) + J.max_exponent()

    def element_count(self, S, T):
        total = 0
        for J, K in zip(S.data, T.data):
            bound = self._finite_bound(J, K)
            if bound is None:
                return None
            total += sum(1 for _ in standard_monomials(J, K, bound))
        return total

    def oracle_ass(self, S, T, limit):
        """
        Annihilators of monomial elements by membership brute force.

        For a multigraded module every associated prime is the annihilator
        of a monomial element, so monomial elements suffice.
        """
        count = self.element_count(S, T)
        if count is None:
            raise ModuleTooLargeError("module is not artinian")
        if count > limit:
            raise ModuleTooLargeError(f"module has {count} standard monomials, limit is {limit}",
                                      details={'size': count, 'limit': limit})
        primes = set()
        for J, K in zip(S.data, T.data):
            bound = self._finite_bound(J, K)
            box = list(monomials_in_box(self.nvars, K.max_exponent()))
            for m in standard_monomials(J, K, bound):
                killers = [f for f in box if K.contains(mono_mul(f, m))]
                variables = minimal_generators(killers, self.nvars).prime_variables()
                if variables is not None:
                    primes.add(PrimeIdealRef.monomial(self.ring, variables))
        return frozenset(primes)

    def submodules(self, limit):
        raise UnsupportedBackendError("submodule enumeration is only available for finite PID modules")

    def permuted(self, rng: Random):
        order = list(range(len(self.ideals)))
        rng.shuffle(order)
        shuffled = []
        for j in order:
            gens = list(self.ideals[j].generators)
            rng.shuffle(gens)
            shuffled.append(MonomialIdeal.of(gens, self.nvars))
        twin = MonomialModule.dsum(self.ring, shuffled)

        def pull_back(handle: SubmoduleHandle) -> SubmoduleHandle:
            components = [None] * len(order)
            for position, j in enumerate(order):
                components[j] = handle.data[position]
            return self.handle(components)

        return twin, pull_back

    # ------------------------------------------------------------------ display

    def describe(self):
        return {
            'backend': 'monomial',
            'summands': [I.generator_strings(self.ring.variables) for I in self.ideals],
        }

    def describe_handle(self, S):
        return {'ideals': [J.generator_strings(self.ring.variables) for J in S.data]}

    def format_handle(self, S):
        parts = [f"{J.format(self.ring.variables)}/{I.format(self.ring.variables)}"
                 for J, I in zip(S.data, self.ideals)]
        return " + ".join(parts)
