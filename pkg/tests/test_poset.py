"""
Tests for prime ideal references and the specialization poset
"""

import pytest
from backend.rings import PrimeIdealRef, RingSpec, format_prime_set
from poset.specialization import (
    build_specialization_poset, canonical_well_order, is_linear_extension, linear_extensions, rank_function,
)
from utils.exceptions import ArithmeticDomainError, CapExceededError, MixedRingError

Z = RingSpec.integers()
XY = RingSpec.monomial(("x", "y"))
XYZ = RingSpec.monomial(("x", "y", "z"))


def zp(n):
    return PrimeIdealRef.principal(Z, n)


def mono(*variables, ring=XY):
    return PrimeIdealRef.monomial(ring, variables)


class TestPrimeIdealRef:
    """Test canonical prime ideals"""

    def test_principal_normalizes_sign(self):
        """Test sign normalization of principal primes"""
        assert zp(-3) == zp(3)
        assert str(zp(3)) == "(3)"

    def test_composite_rejected(self):
        """Test rejection of a composite generator"""
        with pytest.raises(ArithmeticDomainError):
            zp(6)

    def test_zero_generator_is_zero_ideal(self):
        """Test that generator 0 gives the zero ideal"""
        assert zp(0) == PrimeIdealRef.zero(Z)
        assert PrimeIdealRef.zero(Z).generator_strings() == ["0"]

    def test_containment(self):
        """Test containment"""
        assert PrimeIdealRef.zero(Z).contained_in(zp(2))
        assert not zp(2).contained_in(zp(3))
        assert mono(0).strictly_below(mono(0, 1))

    def test_comaximality(self):
        """Test comaximality"""
        assert zp(2).comaximal_with(zp(3))
        assert not mono(0).comaximal_with(mono(1))

    def test_mixed_rings_rejected(self):
        """Test rejection of primes from different rings"""
        with pytest.raises(MixedRingError):
            zp(2).contained_in(mono(0))

    def test_ring_description(self):
        """Test ring description"""
        assert Z.describe() == "Z"
        assert RingSpec.gf_poly(5).describe() == "GF(5)[x]"

    def test_format_prime_set(self):
        """Test formatting of prime sets"""
        assert format_prime_set({zp(3), PrimeIdealRef.zero(Z), zp(2)}) == "{(0), (2), (3)}"


class TestSpecializationPoset:
    """Test poset construction and ranks"""

    def test_containment_order(self):
        """Test the containment order"""
        poset = build_specialization_poset({mono(0), mono(0, 1)})
        assert poset.lt(mono(0), mono(0, 1))
        assert not poset.lt(mono(0, 1), mono(0))

    def test_maximal_ideals_form_antichain(self):
        """Test that maximal ideals form an antichain"""
        poset = build_specialization_poset({zp(2), zp(3)})
        assert not poset.comparable(zp(2), zp(3))
        assert poset.minimal_elements() == [zp(2), zp(3)]

    def test_zero_below_everything(self):
        """Test that (0) lies below every prime"""
        zero = PrimeIdealRef.zero(Z)
        poset = build_specialization_poset({zero, zp(2), zp(3)})
        assert poset.lt(zero, zp(2)) and poset.lt(zero, zp(3))
        assert poset.minimal_elements() == [zero]

    def test_mixed_rings_rejected(self):
        """Test rejection of primes from different rings"""
        with pytest.raises(MixedRingError):
            build_specialization_poset({zp(2), mono(0)})

    def test_rank_of_chain(self):
        """Test ranks on a chain"""
        chain = [PrimeIdealRef.zero(XY), mono(0), mono(0, 1)]
        ranks = rank_function(build_specialization_poset(chain))
        assert [ranks[p] for p in chain] == [0, 1, 2]

    def test_rank_of_antichain(self):
        """Test ranks on an antichain"""
        ranks = rank_function(build_specialization_poset({zp(2), zp(3)}))
        assert set(ranks.values()) == {0}

    def test_rank_of_vee(self):
        """Test ranks on a vee"""
        ranks = rank_function(build_specialization_poset({mono(0), mono(1), mono(0, 1)}))
        assert ranks == {mono(0): 0, mono(1): 0, mono(0, 1): 1}


class TestLinearExtensions:
    """Test enumeration of linear extensions"""

    def test_vee_has_two(self):
        """Test that a vee has two linear extensions"""
        poset = build_specialization_poset({mono(0), mono(1), mono(0, 1)})
        assert linear_extensions(poset) == [
            (mono(0), mono(1), mono(0, 1)),
            (mono(1), mono(0), mono(0, 1)),
        ]

    def test_chain_has_one(self):
        """Test that a chain has one linear extension"""
        poset = build_specialization_poset({mono(0, ring=XYZ), mono(0, 1, ring=XYZ), mono(0, 1, 2, ring=XYZ)})
        assert len(linear_extensions(poset)) == 1

    def test_antichain_has_all_permutations(self):
        """Test that an antichain has every permutation"""
        poset = build_specialization_poset({zp(2), zp(3), zp(5)})
        extensions = linear_extensions(poset)
        assert len(extensions) == 6
        assert all(is_linear_extension(poset, e) for e in extensions)

    def test_cap(self):
        """Test the extension cap"""
        poset = build_specialization_poset({zp(2), zp(3), zp(5)})
        with pytest.raises(CapExceededError):
            linear_extensions(poset, cap=5)

    def test_is_linear_extension_rejects_bad_order(self):
        """Test rejection of a bad order"""
        poset = build_specialization_poset({mono(0), mono(0, 1)})
        assert not is_linear_extension(poset, [mono(0, 1), mono(0)])
        assert not is_linear_extension(poset, [mono(0)])


class TestCanonicalWellOrder:
    """Test the rank-then-generator order"""

    def test_vee(self):
        """Test the canonical order on a vee"""
        poset = build_specialization_poset({mono(1), mono(0), mono(0, 1)})
        assert canonical_well_order(poset) == (mono(0), mono(1), mono(0, 1))

    def test_single_prime(self):
        """Test a single prime"""
        assert canonical_well_order(build_specialization_poset({zp(7)})) == (zp(7),)

    def test_integers(self):
        """Test the canonical order over Z"""
        zero = PrimeIdealRef.zero(Z)
        poset = build_specialization_poset({zero, zp(3), zp(2)})
        assert canonical_well_order(poset) == (zero, zp(2), zp(3))

    def test_canonical_order_is_an_extension(self):
        """Test that the canonical order is a linear extension"""
        poset = build_specialization_poset({mono(0), mono(1), mono(0, 1), PrimeIdealRef.zero(XY)})
        assert is_linear_extension(poset, canonical_well_order(poset))
