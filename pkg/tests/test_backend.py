"""
Tests for module presentations: Ass, localization kernels, invariants and the brute-force oracle
"""

import random
from itertools import combinations

import pytest
from backend.modules import (
    annihilator, annihilator_strings, associated_primes, canonical_invariants, element_count, is_coprimary,
    localization_kernel, oracle_ass, submodule_contains, submodule_intersection, submodule_sum,
)
from backend.monomial_module import MonomialModule
from backend.pid import PIDModule
from backend.rings import PrimeIdealRef, RingSpec
from kernel.unipoly import UniPoly
from monomial.ideals import MonomialIdeal
from tests.factories import GF5, XY, Z, xy_ideal, xy_prime, zmod, zp
from utils.exceptions import (
    AmbientMismatchError, ModuleTooLargeError, PreconditionError, UnsupportedBackendError, ZeroModuleError,
)

XYZ = RingSpec.monomial(("x", "y", "z"))


def _xyz_ideal(*gens):
    return MonomialIdeal.of(gens, 3)


class TestPIDModule:
    """Test cokernel presentations over Z and GF(p)[x]"""

    def test_ass_of_cyclic_group(self, z12):
        """Test Ass of a cyclic group"""
        assert associated_primes(z12) == {zp(2), zp(3)}

    def test_ass_with_free_part(self, z_plus_z2):
        """Test Ass with a free summand"""
        assert associated_primes(z_plus_z2) == {PrimeIdealRef.zero(Z), zp(2)}

    def test_zero_module_has_empty_ass(self):
        """Test that the zero module has empty Ass"""
        assert associated_primes(zmod(1)) == frozenset()

    def test_localization_kernels(self, z12):
        """Test localization kernels on Z/12"""
        assert localization_kernel(z12, zp(3)) == z12.handle([[3]])
        assert localization_kernel(z12, zp(2)) == z12.handle([[4]])

    def test_localization_kernel_at_zero_is_torsion(self, z_plus_z2):
        """Test that the kernel at (0) is the torsion"""
        zero = PrimeIdealRef.zero(Z)
        assert localization_kernel(z_plus_z2, zero) == z_plus_z2.handle([[0, 1]])

    def test_localization_kernel_needs_minimal_prime(self, z_plus_z2):
        """Test that the kernel needs a minimal prime"""
        with pytest.raises(PreconditionError):
            localization_kernel(z_plus_z2, zp(2))
        with pytest.raises(PreconditionError):
            localization_kernel(z_plus_z2, zp(3))

    def test_invariants(self, z12, z_plus_z2):
        """Test canonical invariants"""
        assert canonical_invariants(z12) == {
            'kind': 'pid', 'free_rank': 0, 'invariant_factors': ['12'], 'complete': True,
        }
        assert canonical_invariants(z_plus_z2)['free_rank'] == 1
        assert canonical_invariants(z_plus_z2)['invariant_factors'] == ['2']

    def test_element_count(self, z12, z_plus_z2):
        """Test element counts"""
        assert element_count(z12) == 12
        assert element_count(z_plus_z2) is None

    def test_annihilator(self, z12):
        """Test annihilator strings"""
        assert annihilator_strings(z12) == ['12']
        assert annihilator_strings(z12.handle([[3]])) == ['4']

    def test_lattice_operations(self, z12):
        """Test intersection, sum and containment"""
        twos, threes = z12.handle([[2]]), z12.handle([[3]])
        assert submodule_intersection(twos, threes) == z12.handle([[6]])
        assert submodule_sum(twos, threes) == z12.whole()
        assert submodule_sum(twos, threes).is_whole()
        assert not twos.is_whole()
        assert submodule_contains(twos, z12.handle([[6]]))
        assert not submodule_contains(threes, twos)

    def test_polynomial_ring(self, gf5_module):
        """Test a GF(5)[x] module"""
        x = PrimeIdealRef.principal(GF5, UniPoly((0, 1), 5))
        x_minus_1 = PrimeIdealRef.principal(GF5, UniPoly((4, 1), 5))
        assert associated_primes(gf5_module) == {x, x_minus_1}
        assert element_count(gf5_module) == 25

    def test_mixed_ambients_rejected(self, z6, z12):
        """Test rejection of mixed ambients"""
        with pytest.raises(AmbientMismatchError):
            submodule_sum(z6.whole(), z12.whole())

    def test_subquotient_needs_containment(self, z12):
        """Test that a subquotient needs containment"""
        with pytest.raises(PreconditionError):
            associated_primes(z12.handle([[4]]), z12.handle([[2]]))


class TestCoprimaryCertificate:
    """Test the nilpotent/injective characterization"""

    def test_prime_power_is_coprimary(self):
        """Test that a prime power is coprimary"""
        certificate = is_coprimary(zmod(4), zp(2))
        assert certificate.verdict
        assert certificate.nilpotent and certificate.injective

    def test_mixed_torsion_is_not(self, z6):
        """Test that mixed torsion is not coprimary"""
        certificate = is_coprimary(z6, zp(2))
        assert not certificate.verdict
        assert certificate.injectivity_witnesses

    def test_zero_module_rejected(self, z6):
        """Test that the zero module is rejected"""
        with pytest.raises(ZeroModuleError):
            is_coprimary(z6.zero(), zp(2))

    def test_certificate_serializes(self):
        """Test certificate serialization"""
        data = is_coprimary(zmod(9), zp(3)).to_dict()
        assert data['prime'] == ['3']
        assert data['verdict'] is True


class TestMonomialModule:
    """Test direct sums of monomial quotients"""

    def test_ass_of_cross(self, xy_module):
        """Test Ass of k[x,y]/(xy)"""
        assert associated_primes(xy_module) == {xy_prime(0), xy_prime(1)}

    def test_embedded_prime(self, embedded_module):
        """Test the embedded prime module"""
        assert associated_primes(embedded_module) == {xy_prime(0), xy_prime(0, 1)}

    def test_localization_kernel(self, xy_module):
        """Test the localization kernel"""
        assert localization_kernel(xy_module, xy_prime(1)) == xy_module.handle([xy_ideal((0, 1))])

    def test_cyclic_invariants(self, xy_module):
        """Test invariants of a cyclic monomial module"""
        invariants = canonical_invariants(xy_module)
        assert invariants['kind'] == 'cyclic'
        assert invariants['annihilator'] == ['x*y']

    def test_sum_invariants_are_assumed(self):
        """Test that sum invariants are marked incomplete"""
        module = MonomialModule.dsum(XY, [xy_ideal((1, 0)), xy_ideal((0, 1))])
        assert canonical_invariants(module)['complete'] is False

    def test_infinite_module_is_too_large(self, xy_module):
        """Test that the oracle refuses an infinite module"""
        with pytest.raises(ModuleTooLargeError):
            oracle_ass(xy_module)

    def test_submodule_enumeration_unsupported(self, xy_module):
        """Test that monomial submodule enumeration is refused"""
        with pytest.raises(UnsupportedBackendError):
            xy_module.submodules(10)


class TestOracleAgreement:
    """Computed Ass must agree with the element-wise oracle"""

    def test_random_integer_modules(self):
        """Test the oracle on random integer modules"""
        rng = random.Random(2024)
        checked = 0
        while checked < 200:
            rank = rng.randint(1, 2)
            matrix = [[rng.randint(-8, 8) for _ in range(rank)] for _ in range(rank)]
            module = PIDModule.coker(Z, matrix)
            count = element_count(module)
            if count is None or count > 400:
                continue
            assert associated_primes(module) == oracle_ass(module), matrix
            checked += 1

    def test_random_polynomial_modules(self):
        """Test the oracle on random GF(5)[x] modules"""
        rng = random.Random(5)
        for _ in range(30):
            f = UniPoly(tuple(rng.randrange(5) for _ in range(3)) + (1,), 5)
            module = PIDModule.coker(GF5, [[f]])
            assert associated_primes(module) == oracle_ass(module)

    def test_random_artinian_monomial_modules(self):
        """Test the oracle on random artinian monomial modules"""
        rng = random.Random(99)
        for _ in range(50):
            gens = [(rng.randint(1, 3), 0), (0, rng.randint(1, 3))]
            gens += [(rng.randint(0, 3), rng.randint(0, 3)) for _ in range(rng.randint(0, 3))]
            gens = [g for g in gens if g != (0, 0)]
            module = MonomialModule.dsum(XY, [MonomialIdeal.of(gens, 2)])
            assert associated_primes(module) == oracle_ass(module), gens

    def test_random_artinian_modules_in_three_variables(self):
        """Test the oracle on random artinian sums over k[x,y,z]"""
        rng = random.Random(123)
        maximal = PrimeIdealRef.monomial(XYZ, [0, 1, 2])
        for _ in range(30):
            ideals = []
            for _ in range(2):
                gens = [(rng.randint(1, 3), 0, 0), (0, rng.randint(1, 3), 0), (0, 0, rng.randint(1, 3))]
                gens += [tuple(rng.randint(0, 2) for _ in range(3)) for _ in range(rng.randint(0, 3))]
                ideals.append(_xyz_ideal(*[g for g in gens if g != (0, 0, 0)]))
            module = MonomialModule.dsum(XYZ, ideals)
            quotient = module.handle([_xyz_ideal((0, 1, 0)), MonomialIdeal.zero(3)])
            assert associated_primes(module) == oracle_ass(module) == {maximal}, ideals
            assert associated_primes(module.whole(), quotient) == oracle_ass(module.whole(), quotient)

    def test_sums_of_monomial_quotients(self):
        """Test sums of monomial quotients"""
        module = MonomialModule.dsum(XY, [xy_ideal((2, 0), (0, 2)), xy_ideal((1, 0), (0, 3))])
        assert associated_primes(module) == oracle_ass(module) == {xy_prime(0, 1)}


def _backend_corpus():
    """(label, module, submodules) over every backend, zero modules included"""
    x, x4 = UniPoly((0, 1), 5), UniPoly((4, 1), 5)
    z12, z8, z_plus_z2, z4_6 = zmod(12), zmod(8), zmod(0, 2), zmod(4, 6)
    gf5 = PIDModule.coker(GF5, [[UniPoly((0, 4, 1), 5)]])
    gf5_mixed = PIDModule.coker(GF5, [[UniPoly((0, 0, 1), 5), 0], [0, 0]])
    cross = MonomialModule.dsum(XY, [xy_ideal((1, 1))])
    embedded = MonomialModule.dsum(XY, [xy_ideal((2, 0), (1, 1))])
    line = MonomialModule.dsum(XY, [xy_ideal((1, 0))])
    free = MonomialModule.dsum(XY, [MonomialIdeal.zero(2)])
    zero3, unit3 = MonomialIdeal.zero(3), MonomialIdeal.unit(3)
    three = MonomialModule.dsum(XYZ, [_xyz_ideal((1, 1, 0), (0, 1, 2)), _xyz_ideal((2, 0, 0), (0, 0, 1))])
    cyclic3 = MonomialModule.dsum(XYZ, [_xyz_ideal((2, 1, 0), (0, 1, 1))])
    return [
        ("Z/12", z12, [z12.handle([[2]]), z12.handle([[3]]), z12.handle([[4]]), z12.handle([[6]])]),
        ("Z/8", z8, [z8.handle([[2]]), z8.handle([[4]])]),
        ("Z+Z/2", z_plus_z2, [z_plus_z2.handle([[1, 0]]), z_plus_z2.handle([[0, 1]]),
                              z_plus_z2.handle([[2, 0]]), z_plus_z2.handle([[2, 1]])]),
        ("Z/4+Z/6", z4_6, [z4_6.handle([[2, 0]]), z4_6.handle([[1, 3]])]),
        ("GF5 x(x-1)", gf5, [gf5.handle([[x]]), gf5.handle([[x4]])]),
        ("GF5 x^2 + free", gf5_mixed, [gf5_mixed.handle([[x, 0]]), gf5_mixed.handle([[0, x4]])]),
        ("k[x,y]/(xy)", cross, [cross.handle([xy_ideal((1, 0))]), cross.handle([xy_ideal((0, 1))])]),
        ("k[x,y]/(x^2,xy)", embedded, [embedded.handle([xy_ideal((1, 0))]),
                                       embedded.handle([xy_ideal((0, 1))])]),
        ("k[x,y]/(x)", line, [line.handle([xy_ideal((0, 1))])]),
        ("k[x,y]", free, [free.handle([xy_ideal((1, 0))]), free.handle([xy_ideal((1, 1))])]),
        ("k[x,y,z] sum", three, [
            three.handle([_xyz_ideal((0, 1, 0)), zero3]),
            three.handle([_xyz_ideal((1, 0, 0), (0, 0, 1)), unit3]),
            three.handle([zero3, _xyz_ideal((1, 0, 0))]),
            three.handle([_xyz_ideal((0, 0, 2)), _xyz_ideal((0, 1, 0))]),
        ]),
        ("k[x,y,z]/(x^2y,yz)", cyclic3, [cyclic3.handle([_xyz_ideal((0, 1, 0))]),
                                         cyclic3.handle([_xyz_ideal((1, 0, 0), (0, 0, 1))])]),
        ("Z/1", zmod(1), []),
        ("k[x,y]/(1)", MonomialModule.dsum(XY, [MonomialIdeal.unit(2)]), []),
    ]


BACKEND_CORPUS = _backend_corpus()
CORPUS_IDS = [label for label, _, _ in BACKEND_CORPUS]
NONZERO_CORPUS = [entry for entry in BACKEND_CORPUS if not entry[1].whole().is_zero()]


def _candidate_primes(module):
    ring = module.ring
    if not ring.is_pid:
        return [PrimeIdealRef.monomial(ring, vs)
                for k in range(ring.nvars + 1) for vs in combinations(range(ring.nvars), k)]
    if ring == GF5:
        generators = [UniPoly((0, 1), 5), UniPoly((4, 1), 5), UniPoly((1, 1), 5)]
    else:
        generators = [2, 3, 5, 7]
    return [PrimeIdealRef.zero(ring)] + [PrimeIdealRef.principal(ring, g) for g in generators]


def _ann_inside(module, ann, P):
    """Whether the annihilator lies in P"""
    if isinstance(module, PIDModule):
        if P.is_zero():
            return module.R.is_zero(ann)
        return module.R.divides(P.generator, ann)
    if P.is_zero():
        return ann.is_zero()
    return all(any(g[i] > 0 for i in P.variables) for g in ann.generators)


class TestBackendInvariants:
    """Test Ass, annihilators and coprimarity against each other on every backend"""

    @pytest.mark.parametrize("label,module,submodules", BACKEND_CORPUS, ids=CORPUS_IDS)
    def test_ass_lies_between_submodule_and_quotient(self, label, module, submodules):
        """Test Ass(S) inside Ass(M) inside Ass(S) union Ass(M/S)"""
        whole = associated_primes(module)
        for S in [module.zero(), module.whole()] + submodules:
            inner = associated_primes(S)
            quotient = associated_primes(module.whole(), S)
            assert inner <= whole, f"{label}: Ass({S}) not in Ass(M)"
            assert whole <= inner | quotient, f"{label}: Ass(M) escapes at {S}"

    @pytest.mark.parametrize("label,module,submodules", BACKEND_CORPUS, ids=CORPUS_IDS)
    def test_associated_primes_contain_annihilator(self, label, module, submodules):
        """Test that every associated prime contains the annihilator"""
        for S in [module.whole()] + submodules:
            ann = annihilator(module.whole(), S)
            for P in associated_primes(module.whole(), S):
                assert _ann_inside(module, ann, P), f"{label}: ann(M/{S}) not in {P}"

    @pytest.mark.parametrize("label,module,submodules", NONZERO_CORPUS,
                             ids=[label for label, _, _ in NONZERO_CORPUS])
    def test_coprimary_verdict_matches_ass(self, label, module, submodules):
        """Test that M is P-coprimary exactly when Ass(M) = {P}"""
        ass = associated_primes(module)
        for P in set(_candidate_primes(module)) | ass:
            verdict = is_coprimary(module, P).verdict
            assert verdict == (ass == {P}), f"{label}: verdict {verdict} for {P}"

    @pytest.mark.parametrize("label,module,submodules", BACKEND_CORPUS, ids=CORPUS_IDS)
    def test_ass_empty_only_for_zero(self, label, module, submodules):
        """Test that Ass is empty exactly on zero modules and quotients"""
        assert (associated_primes(module) == frozenset()) == module.whole().is_zero()
        for S in [module.zero(), module.whole()] + submodules:
            assert (associated_primes(module.whole(), S) == frozenset()) == S.is_whole()

    def test_line_is_coprimary(self):
        """Test that k[x,y]/(x) is (x)-coprimary"""
        line = MonomialModule.dsum(XY, [xy_ideal((1, 0))])
        certificate = is_coprimary(line, xy_prime(0))
        assert certificate.verdict
        assert not certificate.injectivity_witnesses

    def test_three_variable_ass(self):
        """Test Ass of k[x,y,z]/(xy, yz^2) + k[x,y,z]/(x^2, z)"""
        module = MonomialModule.dsum(XYZ, [_xyz_ideal((1, 1, 0), (0, 1, 2)), _xyz_ideal((2, 0, 0), (0, 0, 1))])
        assert associated_primes(module) == {
            PrimeIdealRef.monomial(XYZ, [1]), PrimeIdealRef.monomial(XYZ, [0, 2]),
        }

    @pytest.mark.parametrize("module", [zmod(1), MonomialModule.dsum(XYZ, [MonomialIdeal.unit(3)])],
                             ids=["Z/1", "k[x,y,z]/(1)"])
    def test_zero_modules_are_never_coprimary(self, module):
        """Test that the zero module is refused for every prime"""
        for P in _candidate_primes(module):
            with pytest.raises(ZeroModuleError):
                is_coprimary(module, P)
