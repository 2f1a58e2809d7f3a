"""
Unit tests for the numeric Gaussian cross-checks (core/quadrature).
"""

import pytest

from kpverify.core.quadrature import (
    ONE,
    TR_H2,
    complex_vector_gaussian_check,
    hciz_check,
    normalization_check,
    normalization_constant,
    vandermonde,
    wick_bridge_check,
)
from kpverify.utils.errors import ValidationError


@pytest.mark.unit
class TestNormalization:
    """Test the Gaussian normalization constant."""

    @pytest.mark.parametrize("lam", [["2"], ["1", "3/2"]])
    def test_normalized(self, lam):
        result = normalization_check(lam, order=16)

        assert result.ok, result.detail()

    def test_constant_single_eigenvalue(self):
        assert normalization_constant(["2"]) == pytest.approx(1 / 3.141592653589793**0.5)

    def test_vandermonde_convention(self):
        assert vandermonde([1.0, 3.0]) == -2.0
        assert vandermonde([1.0, 2.0, 4.0]) == pytest.approx(-1.0 * -3.0 * -2.0)

    def test_eigenvalue_validation(self):
        with pytest.raises(ValidationError):
            normalization_check(["1", "1"])
        with pytest.raises(ValidationError):
            normalization_check(["-1"])
        with pytest.raises(ValidationError):
            normalization_check(["1", "2", "3"])


@pytest.mark.unit
class TestEigenvalueReduction:
    """Test entry quadrature against the eigenvalue form at M = 1."""

    @pytest.mark.parametrize("f", [ONE, TR_H2])
    def test_single_eigenvalue(self, f):
        result = hciz_check(["2"], f, order=16)

        assert result.ok, result.detail()

    def test_unknown_invariant(self):
        with pytest.raises(ValidationError):
            hciz_check(["2"], "det")


@pytest.mark.unit
class TestGaussianBridges:
    """Test the complex vector integral and the Wick bridge."""

    def test_complex_vector_scalar(self):
        result = complex_vector_gaussian_check([[2]], order=16)

        assert result.ok, result.detail()
        assert result.rhs == pytest.approx(0.5)

    def test_complex_vector_validation(self):
        with pytest.raises(ValidationError):
            complex_vector_gaussian_check([[1, 2], [0, 1]])
        with pytest.raises(ValidationError):
            complex_vector_gaussian_check([[1, 2], [2, 1]])

    @pytest.mark.parametrize("lam", [["2"], ["1", "2"]])
    def test_wick_bridge(self, lam):
        ok, mismatches = wick_bridge_check(lam, max_degree=4, order=8)

        assert ok, mismatches
