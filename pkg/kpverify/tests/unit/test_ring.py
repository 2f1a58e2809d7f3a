"""
Unit tests for exact scalars, truncated series and series matrices (core/ring).
"""

import pytest
from sympy.polys.domains import QQ

from kpverify.core.ring import (
    Series,
    SeriesMatrix,
    Var,
    VarTable,
    det_trlog,
    format_scalar,
    gaussian,
    kron,
    parse_rational,
    parse_scalar,
    series_arith,
    series_elem,
    series_exp,
    series_inv,
    series_log,
    series_sqrt,
    sqrt_exact,
)
from kpverify.utils.errors import DomainError, StructuralError, ValidationError


@pytest.mark.unit
class TestScalars:
    """Test rational and Gaussian-rational scalars."""

    def test_parse_and_format(self):
        assert parse_rational("6/8") == QQ(3, 4)
        assert parse_rational(" -2 ") == QQ(-2)
        assert format_scalar(QQ(3, 4)) == "3/4"
        assert format_scalar(QQ(5)) == "5"

    def test_gaussian_format(self):
        assert format_scalar(gaussian(1, -2)) == "1-2*i"
        assert parse_scalar("1/2+3/4*i") == gaussian(QQ(1, 2), QQ(3, 4))

    @pytest.mark.parametrize("text", ["1/0", "abc", "1.5"])
    def test_parse_rejects(self, text):
        with pytest.raises(ValidationError):
            parse_rational(text)

    def test_sqrt_exact(self):
        assert sqrt_exact(QQ(9, 4)) == QQ(3, 2)
        with pytest.raises(DomainError):
            sqrt_exact(QQ(2))
        with pytest.raises(DomainError):
            sqrt_exact(QQ(-4))


@pytest.mark.unit
class TestVarTable:
    """Test variable tables."""

    def test_duplicate_names_rejected(self):
        with pytest.raises(StructuralError):
            VarTable([Var("x", 2), Var("x", 3)])

    def test_laurent_needs_flag(self):
        with pytest.raises(StructuralError):
            VarTable([Var("x", 2, -1)])
        assert VarTable([Var("x", 2, -1, True)]).mins == (-1,)


@pytest.mark.unit
class TestSeriesArithmetic:
    """Test truncated arithmetic."""

    def test_product_exact(self, x_table):
        one = Series.one(x_table)
        x = Series.var(x_table, "x")

        assert (one + x) * (one - x) == one - Series.var(x_table, "x", 2)

    def test_product_truncates(self):
        table = VarTable.of(x=1)
        one, x = Series.one(table), Series.var(table, "x")

        assert (one + x) * (one + x) == one + x.scale(2)

    def test_rational_addition(self, x_table):
        a = Series.var(x_table, "x", coeff=QQ(1, 2))
        b = Series.var(x_table, "x", coeff=QQ(1, 3))

        assert series_arith(a, b, "add").coeff(x=1) == QQ(5, 6)
        assert series_arith(a, 6, "scalar-mul").coeff(x=1) == QQ(3)

    def test_incompatible_tables(self, x_table):
        with pytest.raises(StructuralError):
            Series.one(x_table) + Series.one(VarTable.of(y=2))

    def test_truncation_coherence(self):
        wide = VarTable.of(x=4, y=4)
        narrow = VarTable.of(x=2, y=3)
        a = Series(wide, {(1, 0): 2, (0, 1): QQ(1, 3), (1, 1): -1, (0, 0): 1})
        b = Series(wide, {(1, 2): 5, (2, 0): 1, (0, 0): 3})

        direct = a.restrict(x=2, y=3) * b.restrict(x=2, y=3)

        assert (a * b).restrict(x=2, y=3) == direct
        assert direct.table == narrow

    def test_substitute_and_slice(self):
        table = VarTable.of(x=2, y=2)
        f = Series(table, {(1, 1): 3, (2, 0): 1, (0, 0): 2})

        assert f.slice("y", 1) == Series.var(table, "x", coeff=3)
        assert f.substitute("x", QQ(2)) == Series(table, {(0, 1): 6, (0, 0): 6})

    def test_json_round_trip(self, x_table):
        f = Series(x_table, {(0,): QQ(1, 2), (2,): -3})

        assert Series.from_json(x_table, f.to_json()) == f


@pytest.mark.unit
class TestElementaryFunctions:
    """Test exp, log, inv and sqrt."""

    def test_exp_log_identity(self):
        table = VarTable.of(x=4)
        f = Series.one(table) + Series.var(table, "x")

        assert series_exp(series_log(f)) == f

    def test_sqrt_binomial(self):
        table = VarTable.of(sm=2)
        f = Series.const(table, 4) - Series.var(table, "sm")
        expected = Series(table, {(0,): 2, (1,): QQ(-1, 4), (2,): QQ(-1, 64)})

        assert series_sqrt(f) == expected
        assert series_sqrt(f) * series_sqrt(f) == f

    def test_geometric_inverse(self):
        table = VarTable.of(x=3)
        f = Series.one(table) - Series.var(table, "x")

        assert series_elem(f, "inv") == Series(table, {(k,): 1 for k in range(4)})
        assert series_inv(f) * f == Series.one(table)

    def test_random_round_trips(self):
        table = VarTable.of(x=3, y=3)
        r = Series(table, {(1, 0): QQ(2, 3), (0, 1): -1, (1, 2): QQ(5, 7), (2, 1): 4})
        one = Series.one(table)

        assert series_exp(series_log(one + r)) == one + r
        assert series_sqrt(one + r) ** 2 == one + r

    def test_log_normalizes_constant(self):
        table = VarTable.of(x=4)
        f = Series.one(table) + Series.var(table, "x")

        assert series_log(f.scale(3), drop_constant=True) == series_log(f)
        with pytest.raises(DomainError, match="not rational"):
            series_log(f.scale(3))
        with pytest.raises(DomainError, match="non-zero"):
            series_log(Series.var(table, "x"))

    def test_preconditions(self, x_table):
        x = Series.var(x_table, "x")
        with pytest.raises(DomainError):
            series_exp(Series.one(x_table) + x)
        with pytest.raises(DomainError):
            series_inv(x)
        with pytest.raises(DomainError):
            series_sqrt(Series.const(x_table, 2) + x)
        with pytest.raises(DomainError):
            series_elem(x, "sin")


@pytest.mark.unit
class TestMatrices:
    """Test determinants and Kronecker products."""

    def test_det_trlog_identity(self, x_table):
        one, zero = Series.one(x_table), Series.zero(x_table)

        assert det_trlog(SeriesMatrix.identity(3, one, zero)) == one

    def test_det_trlog_cofactor_oracle(self, x_table):
        one, x = Series.one(x_table), Series.var(x_table, "x")
        A = SeriesMatrix.of_series([[one + x.scale(2), x.scale(3)], [x.scale(5), one]])

        expected = Series(x_table, {(0,): 1, (1,): 2, (2,): -15})

        assert det_trlog(A) == expected
        assert A.cofactor_det() == expected

    def test_det_trlog_diagonal(self, x_table):
        A = SeriesMatrix.of_series([[Series.const(x_table, 2), Series.zero(x_table)],
                                    [Series.zero(x_table), Series.const(x_table, 3)]])

        assert det_trlog(A) == Series.const(x_table, 6)

    def test_det_trlog_matches_cofactor(self):
        table = VarTable.of(x=4, y=4)
        x, y = Series.var(table, "x"), Series.var(table, "y")
        c = lambda v: Series.const(table, v)  # noqa: E731
        A = SeriesMatrix.of_series([
            [c(2) + x, y.scale(3), x * y],
            [x.scale(QQ(1, 2)), c(-1) + y, x.scale(4)],
            [y * y, x + y, c(QQ(3, 2)) + x.scale(7)],
        ])

        assert det_trlog(A) == A.cofactor_det() == A.leibniz_det()

    def test_det_trlog_non_invertible(self, x_table):
        zero, x = Series.zero(x_table), Series.var(x_table, "x")

        with pytest.raises(DomainError):
            det_trlog(SeriesMatrix.of_series([[x, zero], [zero, x]]))

    def test_kron(self, x_table):
        one, zero = Series.one(x_table), Series.zero(x_table)
        two, three = Series.const(x_table, 2), Series.const(x_table, 3)
        A = SeriesMatrix.diag([one, one], zero)
        B = SeriesMatrix.diag([one, one, one], zero)

        assert kron(A, B) == SeriesMatrix.identity(6, one, zero)
        assert kron(SeriesMatrix.diag([two], zero), SeriesMatrix.diag([three, zero], zero)).trace() == Series.const(x_table, 6)

    def test_kron_block_formula(self, x_table):
        zero = Series.zero(x_table)
        lam2 = Series.const(x_table, 4)
        c = Series.var(x_table, "x")
        one_by_one = SeriesMatrix.diag([lam2], zero)
        idN = SeriesMatrix.identity(2, Series.one(x_table), zero)

        result = kron(one_by_one, idN) - kron(SeriesMatrix.diag([Series.one(x_table)], zero), SeriesMatrix.diag([c, c], zero))

        assert result == SeriesMatrix.diag([lam2 - c, lam2 - c], zero)
