"""
Tests for adjacent swaps and the equivalence of filtrations across linear extensions
"""

import pytest
from backend.pid import PIDModule
from backend.rings import PrimeIdealRef
from equivalence.swap import intersection_identity, sum_identity, swap_adjacent, swap_move, swap_path
from equivalence.verdict import Verdict, all_extensions_equivalent, filtrations_equivalent, pairwise_comaximal
from filtration.engine import assemble, build_coprimary_filtration
from kernel.unipoly import UniPoly
from tests.factories import GF5, Z, xy_prime, zmod, zp
from utils.exceptions import (
    DifferentModulesError, PreconditionError, SwapNotApplicableError, TooManyExtensionsError,
)


class TestIdentities:
    """Intersection and sum of two localization kernels"""

    def test_intersection_for_cyclic_group(self, z6):
        """Test G ∩ H = 0 on Z/6"""
        assert intersection_identity(z6, zp(2), zp(3)).passed

    def test_intersection_for_cross(self, xy_module):
        """Test G ∩ H = 0 on k[x,y]/(xy)"""
        assert intersection_identity(xy_module, xy_prime(0), xy_prime(1)).passed

    def test_sum_is_whole_for_comaximal_primes(self, z6):
        """Test G + H = M for comaximal primes"""
        report = sum_identity(z6, zp(2), zp(3))
        assert report.passed
        assert report.get("G + H = M") is not None

    def test_sum_is_proper_for_cross(self, xy_module):
        """Test that G + H is proper for k[x,y]/(xy)"""
        report = sum_identity(xy_module, xy_prime(0), xy_prime(1))
        observed = report.get("G + H = M (observed)")
        assert report.passed
        assert observed.witness.endswith("so 1 is not in (x, y)")

    def test_needs_rank_zero_primes(self, z_plus_z2):
        """Test that the identities need rank-0 primes"""
        with pytest.raises(PreconditionError):
            intersection_identity(z_plus_z2, PrimeIdealRef.zero(Z), zp(2))

    def test_needs_distinct_primes(self, z6):
        """Test that the identities need distinct primes"""
        with pytest.raises(PreconditionError):
            sum_identity(z6, zp(2), zp(2))


class TestSwap:
    """Test adjacent transpositions"""

    def test_swap_cyclic_group(self, z6):
        """Test swap on Z/6"""
        filtration = build_coprimary_filtration(z6, [zp(2), zp(3)])
        move = swap_move(filtration, 0)
        assert move.result.order == (zp(3), zp(2))
        assert move.replacement == z6.handle([[3]])
        assert move.result.terms == build_coprimary_filtration(z6, [zp(3), zp(2)]).terms

    def test_swap_is_an_involution(self, z30):
        """Test that swapping twice restores the filtration"""
        filtration = build_coprimary_filtration(z30)
        for index in range(2):
            back = swap_adjacent(swap_adjacent(filtration, index), index)
            assert back.terms == filtration.terms
            assert back.order == filtration.order

    def test_swap_cross(self, xy_module):
        """Test swap on k[x,y]/(xy)"""
        swapped = swap_adjacent(build_coprimary_filtration(xy_module), 0)
        assert swapped.order == (xy_prime(1), xy_prime(0))

    def test_comparable_primes_rejected(self, z_plus_z2):
        """Test that comparable primes are rejected"""
        filtration = build_coprimary_filtration(z_plus_z2)
        with pytest.raises(SwapNotApplicableError):
            swap_adjacent(filtration, 0)

    def test_index_out_of_range(self, z6):
        """Test an out-of-range index"""
        with pytest.raises(SwapNotApplicableError):
            swap_adjacent(build_coprimary_filtration(z6), 1)

    def test_swap_path_reaches_target(self, z30):
        """Test that a swap path reaches the target order"""
        start = build_coprimary_filtration(z30, [zp(2), zp(3), zp(5)])
        path = swap_path(start, [zp(5), zp(3), zp(2)])
        assert len(path) == 4
        assert path[-1].order == (zp(5), zp(3), zp(2))

    def test_swap_path_to_same_order(self, z30):
        """Test a swap path to the same order"""
        start = build_coprimary_filtration(z30)
        assert swap_path(start, start.order) == [start]


class TestFiltrationsEquivalent:
    """Test step-by-step comparison"""

    def test_cyclic_group(self, z12):
        """Test verdict for two orders of a cyclic group"""
        first = build_coprimary_filtration(z12, [zp(2), zp(3)])
        second = build_coprimary_filtration(z12, [zp(3), zp(2)])
        verdict = filtrations_equivalent(first, second)
        assert verdict.verdict == Verdict.EQUIVALENT
        assert verdict.equivalent

    def test_cross_is_equivalent(self, xy_module):
        """Test that k[x,y]/(xy) orders are equivalent"""
        first = build_coprimary_filtration(xy_module, [xy_prime(0), xy_prime(1)])
        second = build_coprimary_filtration(xy_module, [xy_prime(1), xy_prime(0)])
        assert filtrations_equivalent(first, second).verdict == Verdict.EQUIVALENT

    def test_different_quotients_are_not(self, z12):
        """Test that different quotients are not equivalent"""
        proper = build_coprimary_filtration(z12, [zp(2), zp(3)])
        bogus = assemble(z12, [zp(2), zp(3)], [z12.whole(), z12.handle([[3]])])
        verdict = filtrations_equivalent(proper, bogus)
        assert verdict.verdict == Verdict.NOT_EQUIVALENT
        assert "(2)" in verdict.reason

    def test_different_modules(self, z6, z12):
        """Test that filtrations of different modules are rejected"""
        with pytest.raises(DifferentModulesError):
            filtrations_equivalent(build_coprimary_filtration(z6), build_coprimary_filtration(z12))

    def test_serializes(self, z12):
        """Test serialization"""
        f = build_coprimary_filtration(z12)
        data = filtrations_equivalent(f, f).to_dict()
        assert data['verdict'] == "equivalent"


class TestAllExtensions:
    """Survey every linear extension"""

    def test_squarefree_cyclic_group(self, z30):
        """Test a squarefree cyclic group"""
        survey = all_extensions_equivalent(z30)
        assert len(survey.filtrations) == 6
        assert len(survey.verdicts) == 15
        assert survey.hypothesis
        assert survey.observed == "equivalent"

    @pytest.mark.parametrize("n", [12, 60, 90, 210])
    def test_dedekind_integers(self, n):
        """Test squarefree cyclic groups over Z"""
        survey = all_extensions_equivalent(zmod(n))
        assert survey.hypothesis and survey.all_equivalent

    def test_polynomial_quotient(self):
        """Test a GF(5)[x] quotient"""
        f = UniPoly((0, 4, 1), 5) * UniPoly((2, 0, 1), 5)
        survey = all_extensions_equivalent(PIDModule.coker(GF5, [[f]]))
        assert survey.hypothesis and survey.all_equivalent
        assert len(survey.filtrations) == 6

    def test_cross_hypothesis_fails(self, xy_module):
        """Test that the comaximality hypothesis fails for k[x,y]/(xy)"""
        survey = all_extensions_equivalent(xy_module)
        assert not survey.hypothesis
        assert survey.to_dict()['hypothesis'] == 'not satisfied'
        assert survey.observed == "equivalent"

    def test_cap(self, z30):
        """Test the extension cap"""
        with pytest.raises(TooManyExtensionsError):
            all_extensions_equivalent(z30, max_extensions=5)

    def test_too_many_primes(self):
        """Test the Ass size limit"""
        with pytest.raises(TooManyExtensionsError):
            all_extensions_equivalent(zmod(2 * 3 * 5 * 7 * 11 * 13))

    def test_pairwise_comaximal(self):
        """Test pairwise comaximality"""
        assert pairwise_comaximal({zp(2), zp(3)})
        assert not pairwise_comaximal({PrimeIdealRef.zero(Z), zp(3)})
