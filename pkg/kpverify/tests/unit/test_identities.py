"""
Unit tests for the finite identities (core/identities).
"""

import pytest

from kpverify.core.identities import (
    bordered_trace_identities,
    e_var,
    lemma1_det_expansion,
    lemma1_product_identity,
    sample_points,
    schur_closed_forms,
    schur_power_closed_form,
    schur_power_symbolic,
    schur_sqrt_closed_form,
    weierstrass_injectivity,
)
from kpverify.utils.errors import ValidationError


@pytest.mark.unit
class TestDeterminantExpansion:
    """Test the bordered exponential determinant and the pair-ratio product."""

    @pytest.mark.parametrize("M", [1, 2, 3])
    def test_symbolic(self, M):
        assert lemma1_det_expansion(M)

    def test_at_point(self):
        point = {e_var(i, 1): v for i, v in zip((1, 2), (3, 5))}

        assert lemma1_det_expansion(1, point)

    def test_rejects_empty(self):
        with pytest.raises(ValidationError):
            lemma1_det_expansion(0)

    def test_product_identity_fixed_points(self):
        assert lemma1_product_identity(1, 1, (2, 3))
        assert lemma1_product_identity(1, 2, (2, 3))
        assert lemma1_product_identity(2, 2, (2, 3, 5))

    def test_product_identity_sampled(self):
        for point in sample_points(4, 3, seed=7):
            for k in range(1, 5):
                assert lemma1_product_identity(3, k, point)

    def test_product_identity_validation(self):
        with pytest.raises(ValidationError):
            lemma1_product_identity(1, 1, (2, 3, 4))
        with pytest.raises(ValidationError):
            lemma1_product_identity(1, 3, (2, 3))
        with pytest.raises(ValidationError):
            lemma1_product_identity(1, 1, (2, -2))

    def test_sample_points(self):
        points = sample_points(3, 5, seed=11)

        assert points == sample_points(3, 5, seed=11)
        for p in points:
            assert len(set(p)) == 3
            assert all(a + b != 0 for a in p for b in p)


@pytest.mark.unit
class TestBorderedTraces:
    """Test traces of the bordered matrix."""

    @pytest.mark.parametrize("M", [1, 2])
    def test_all_hold(self, M):
        results = bordered_trace_identities(M)

        assert set(results) == {"cubic", "quadratic", "linear"}
        assert all(results.values()), results


@pytest.mark.unit
class TestClosedForms:
    """Test Weierstrass injectivity and the 2×2 Schur closed forms."""

    @pytest.mark.parametrize("D", [1, 2, 4])
    def test_weierstrass_injective(self, D):
        assert weierstrass_injectivity(D)

    def test_power_closed_form(self):
        assert schur_power_closed_form(1, 2, 3, 2)
        assert schur_power_closed_form("1/2", 2, 1, 3)

    def test_power_needs_distinct_diagonal(self):
        with pytest.raises(ValidationError):
            schur_power_closed_form(2, 2, 1, 2)

    def test_power_symbolic(self):
        assert schur_power_symbolic(4)

    def test_sqrt_closed_form(self):
        assert schur_sqrt_closed_form(1, 4)
        assert schur_sqrt_closed_form("3/2", 3)

    def test_sqrt_rejects_non_positive(self):
        with pytest.raises(ValidationError):
            schur_sqrt_closed_form(0, 2)

    def test_all_closed_forms(self):
        results = schur_closed_forms({"z1": 1, "z2": 3, "sbar": 2, "n": 3})

        assert results == {"power": True, "power-symbolic": True, "sqrt": True}
