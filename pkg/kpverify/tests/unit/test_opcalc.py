"""
Unit tests for differential operators, the complex integral and the Weierstrass transform (core/opcalc).
"""

import pytest
from sympy.polys.domains import QQ

from kpverify.core.opcalc import (
    DiffOp,
    Letter,
    apply_diffop_exp,
    complex_integral_by_moments,
    complex_integral_op,
    lambda_derivation_check,
    moment_image,
    weierstrass,
    weierstrass_gaussian_form,
)
from kpverify.core.ring import Series, Var, VarTable
from kpverify.utils.errors import CertificateError, DomainError, StructuralError


@pytest.mark.unit
class TestOperatorExponential:
    """Test exp(op) as a terminating sum."""

    def test_heat_operator_on_square(self, st_table):
        t = Series.var(st_table, "t")
        f = Series.var(st_table, "s", 2)

        result = apply_diffop_exp(DiffOp.d("s", 2, coeff=t), f)

        assert result == f + t.scale(2)

    def test_mixed_second_order(self):
        table = VarTable.of(s=2, sm=2)
        f = Series.monomial(table, s=1, sm=1)

        result = apply_diffop_exp((DiffOp.d("s") @ DiffOp.d("sm")).scale(2), f).at_zero("sm")

        assert result == Series.const(table, 2)

    def test_lambda_derivation_word(self):
        table = VarTable.of(x=3, s=1)
        op = DiffOp([(1, (Letter("L", "x"), Letter("d", "s")))])
        f = Series.monomial(table, x=1, s=1)

        result = apply_diffop_exp(op, f)

        assert result == f - Series.var(table, "x", 3)

    def test_inverse_exponential(self, st_table):
        t = Series.var(st_table, "t")
        op = DiffOp.d("s", 2, coeff=t)
        f = Series.var(st_table, "s", 4) + Series.var(st_table, "s", coeff=QQ(2, 3))

        assert apply_diffop_exp(op.scale(-1), apply_diffop_exp(op, f)) == f

    def test_no_certificate(self):
        table = VarTable.of(x=6)
        f = Series.var(table, "x")

        with pytest.raises(CertificateError) as err:
            apply_diffop_exp(DiffOp.lam("x"), f)
        assert "unbounded direction" in str(err.value)

    def test_unknown_variable(self, st_table):
        with pytest.raises(StructuralError):
            apply_diffop_exp(DiffOp.d("y"), Series.var(st_table, "s"))


@pytest.mark.unit
class TestComplexIntegral:
    """Test the complex Gaussian integral operator."""

    def test_moment_example(self):
        table = VarTable.of(s=3, sm=3)

        assert complex_integral_op(Series.monomial(table, s=3, sm=2)) == Series.var(table, "s", coeff=24)
        assert complex_integral_op(Series.monomial(table, s=2, sm=3)).is_zero()
        assert complex_integral_op(Series.one(table)) == Series.one(table)

    def test_moment_table(self):
        table = VarTable.of(s=8, sm=8)
        for m in range(9):
            for n in range(9):
                f = Series.monomial(table, s=n, sm=m)
                assert complex_integral_op(f) == complex_integral_by_moments(f), (m, n)

    def test_diagonal_moments(self):
        assert moment_image(0, 0) == (QQ(1), 0)
        assert moment_image(3, 3) == (QQ(48), 0)
        assert moment_image(2, 1) == (QQ(0), 0)

    def test_laurent_flag(self):
        table = VarTable([Var("s", 2, -2, True), Var("sm", 2)])
        f = Series.monomial(table, s=-1, sm=1) + Series.monomial(table, s=1, sm=1)

        with pytest.raises(DomainError):
            complex_integral_op(f)
        assert complex_integral_op(f, allow_laurent=True) == Series.const(table, 2)


@pytest.mark.unit
class TestWeierstrass:
    """Test the Weierstrass transform and its inverse."""

    def test_forward_cube(self, st_table):
        s = Series.var(st_table, "s")
        expected = Series.var(st_table, "s", 3) + (Series.var(st_table, "t") * s).scale(6)

        assert weierstrass(Series.var(st_table, "s", 3)) == expected

    def test_round_trip(self, st_table):
        f = Series.var(st_table, "s", 4)

        assert weierstrass(weierstrass(f), "inverse") == f

    def test_gaussian_moment_form(self, st_table):
        f = Series.var(st_table, "s", 6)

        assert weierstrass(f) == weierstrass_gaussian_form(f)

    def test_bad_direction(self, st_table):
        with pytest.raises(StructuralError):
            weierstrass(Series.var(st_table, "s"), "sideways")


@pytest.mark.unit
class TestLambdaDerivation:
    """Test ∂_{s_-} tr(Λ²-s_-)^{k/2} against the Λ-derivation."""

    @pytest.mark.parametrize("k,M", [(2, 1), (0, 1), (1, 2), (-3, 2), (5, 3)])
    def test_symbolic(self, k, M):
        assert lambda_derivation_check(k, M)

    def test_numeric_eigenvalues(self):
        assert lambda_derivation_check(1, 2, lam=[QQ(2), QQ(3)])
