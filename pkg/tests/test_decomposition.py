"""
Tests for the coprimary direct sum decomposition
"""

import pytest
from backend.modules import associated_primes, element_count
from backend.rings import PrimeIdealRef
from decomposition.direct_sum import closure_witness, coprimary_component, direct_sum_decompose
from kernel.integers import prime_exponents
from tests.factories import Z, xy_prime, zmod, zp
from utils.exceptions import ClosuresIntersectError, PreconditionError, exit_code_for


class TestDirectSumDecompose:
    """Decomposition when Ass is pairwise comaximal"""

    def test_z6(self, z6):
        """Test Z/6"""
        result = direct_sum_decompose(z6)
        assert result.component(zp(2)) == z6.handle([[3]])
        assert result.component(zp(3)) == z6.handle([[2]])
        assert result.report.passed
        assert result.maximal

    def test_z30_component(self, z30):
        """Test the (5) component of Z/30"""
        assert coprimary_component(z30, zp(5)) == z30.handle([[6]])
        assert direct_sum_decompose(z30).component(zp(5)) == z30.handle([[6]])

    @pytest.mark.parametrize("n", [12, 60, 72, 350, 1001])
    def test_chinese_remainder_components(self, n):
        """Test CRT components of cyclic groups"""
        module = zmod(n)
        result = direct_sum_decompose(module)
        for p, e in prime_exponents(n):
            component = result.component(zp(p))
            assert component == module.handle([[n // p ** e]])
            assert element_count(component) == p ** e

    def test_polynomial_quotient(self, gf5_module):
        """Test a GF(5)[x] quotient"""
        result = direct_sum_decompose(gf5_module)
        assert len(result.components) == 2
        for prime, component in result.components:
            assert associated_primes(component) == {prime}
            assert element_count(component) == 5

    def test_free_module_is_its_own_component(self):
        """Test that a free module is its own component"""
        module = zmod(0)
        result = direct_sum_decompose(module)
        assert result.component(PrimeIdealRef.zero(Z)) == module.whole()
        assert not result.maximal

    def test_to_dict(self, z6):
        """Test serialization"""
        data = direct_sum_decompose(z6).to_dict()
        assert [c['prime'] for c in data['components']] == [['2'], ['3']]
        assert data['normal_decomposition'] is True
        assert data['report']['passed'] is True

    def test_unknown_prime(self, z6):
        """Test a component lookup for a prime outside Ass"""
        with pytest.raises(PreconditionError):
            coprimary_component(z6, zp(5))


class TestClosuresIntersect:
    """Refusal when two closures meet"""

    def test_cross_module(self, xy_module):
        """Test k[x,y]/(xy)"""
        with pytest.raises(ClosuresIntersectError) as exc:
            direct_sum_decompose(xy_module)
        assert exc.value.details['witness'] == "1 ∉ (x, y)"
        assert exit_code_for(exc.value) == 3

    def test_embedded_prime(self, embedded_module):
        """Test the embedded prime module"""
        with pytest.raises(ClosuresIntersectError) as exc:
            direct_sum_decompose(embedded_module)
        assert exc.value.details['witness'] == "(x) is contained in (x, y)"

    def test_free_and_torsion(self, z_plus_z2):
        """Test Z ⊕ Z/2"""
        with pytest.raises(ClosuresIntersectError):
            direct_sum_decompose(z_plus_z2)

    def test_witness_for_rank_zero_pair(self, xy_module):
        """Test the witness for two rank-0 primes"""
        assert closure_witness(xy_module, xy_prime(0), xy_prime(1)) == "1 ∉ (x, y)"
