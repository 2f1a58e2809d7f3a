"""
Unit tests for the Weyl algebra, Virasoro operators and constraint residuals (core/virasoro).
"""

import pytest
from sympy.polys.domains import QQ

from kpverify.core.symfun import QPolynomial
from kpverify.core.virasoro import (
    FIRST,
    WOperator,
    apply_virasoro,
    bracket_check,
    commutator_check,
    conjugation_checks,
    constraint_operator,
    constraint_residuals,
    even_time_residuals,
    heisenberg,
    heisenberg_commutator_check,
    s_operator,
    tau_relation_check,
    virasoro,
)
from kpverify.models import RangeConvention
from kpverify.utils.errors import StructuralError, ValidationError


@pytest.mark.unit
class TestWeylAlgebra:
    """Test normal-ordered composition and exponentials."""

    def test_canonical_commutator(self):
        d1 = WOperator.deriv_q(4, 1)
        q1 = WOperator.mult_q(4, 1)

        assert d1.commutator(q1) == WOperator.identity(4)
        assert (d1 @ q1) == q1 @ d1 + WOperator.identity(4)

    def test_exp_of_shift(self):
        f = QPolynomial.s(4, 2)

        shifted = WOperator.deriv_s(4).exp_apply(f)

        assert shifted == QPolynomial.s(4, 2) + QPolynomial.s(4, 1, coeff=2) + QPolynomial.const(4)

    def test_conjugate_shift(self):
        conj = WOperator.deriv_s(4).conjugate(WOperator.mult_s(4))

        assert conj == WOperator.mult_s(4) + WOperator.identity(4)

    def test_bound_mismatch(self):
        with pytest.raises(StructuralError):
            WOperator.mult_q(4, 1).apply(QPolynomial.const(3))

    def test_terms_above_bound_dropped(self):
        assert WOperator.mult_q(4, 5).is_zero()
        assert WOperator.mult_q(4, 2, power=3).is_zero()


@pytest.mark.unit
class TestVirasoroOperators:
    """Test the operators on low-weight polynomials."""

    def test_lowest_negative_operator_on_one(self):
        one = QPolynomial.const(4)

        assert apply_virasoro(-2, one) == QPolynomial.q(4, 1, 2, coeff=QQ(1, 2))
        assert apply_virasoro(-2, one, RangeConvention.AS_WRITTEN).is_zero()

    def test_zero_mode_counts_weight(self):
        f = QPolynomial.q(4, 1) + QPolynomial.q(4, 1, 2) + QPolynomial.q(4, 3)

        assert apply_virasoro(0, f) == QPolynomial.q(4, 1) + QPolynomial.q(4, 1, 2, coeff=2) + QPolynomial.q(4, 3, coeff=3)

    def test_negative_four_quadratic_part(self):
        expected = (
            QPolynomial.q(6, 1) * QPolynomial.q(6, 3) + QPolynomial.q(6, 2, 2, coeff=QQ(1, 2))
        )

        assert apply_virasoro(-4, QPolynomial.const(6)) == expected

    def test_invalid_indices(self):
        with pytest.raises(ValidationError):
            heisenberg(4, 0)
        with pytest.raises(ValidationError):
            virasoro(4, 1)
        with pytest.raises(ValidationError):
            virasoro(4, -2, "sideways")
        with pytest.raises(ValidationError):
            constraint_operator(4, -1)

    def test_s_operator(self):
        image = s_operator(4).apply(QPolynomial.s(4, 2))

        assert image == QPolynomial.q(4, 2) * QPolynomial.s(4, 1, coeff=2) + QPolynomial.q(4, 4, coeff=2)


@pytest.mark.unit
class TestOperatorIdentities:
    """Test commutation relations on monomials up to a weight."""

    @pytest.mark.parametrize("n,k", [(1, -2), (1, 0), (1, 2), (3, -2), (2, -4)])
    def test_time_commutator(self, n, k):
        assert commutator_check(n, k, 4)

    def test_time_commutator_excludes_zero_mode(self):
        with pytest.raises(ValidationError):
            commutator_check(2, 2, 4)

    @pytest.mark.parametrize("a,b", [(-2, 0), (0, 2), (2, -2), (-2, 2), (-2, -4)])
    def test_bracket(self, a, b):
        assert bracket_check(a, b, 4)

    def test_bracket_fails_with_as_written_range(self):
        assert not bracket_check(2, -2, 4, RangeConvention.AS_WRITTEN)

    def test_heisenberg_commutators(self):
        assert heisenberg_commutator_check(4, [(1, -1), (2, -2), (1, 2), (-1, -3), (3, -1)])

    def test_conjugations(self):
        checks = conjugation_checks(4)

        assert set(checks) == {"first", "n0-offset-quarter", "zero-S"}
        assert all(checks.values()), checks


@pytest.mark.unit
class TestConstraintResiduals:
    """Test residuals on hand-computable polynomials."""

    def test_first_constraint_on_one(self):
        (residual,) = constraint_residuals(QPolynomial.const(4), which=(FIRST,))

        assert residual.constraint == FIRST
        assert residual.complete_weight == 3
        assert residual.residual == QPolynomial.q(4, 1, 2, coeff=QQ(1, 2)) + QPolynomial.s(4)
        assert not residual.vanishes()

    def test_zero_constraint_on_one(self):
        (residual,) = constraint_residuals(QPolynomial.const(4), which=(0,))

        assert residual.constraint == "n=0"
        assert residual.complete_weight == 1
        assert residual.residual == QPolynomial.const(4, QQ(3, 4))

    def test_residual_json(self):
        (residual,) = constraint_residuals(QPolynomial.const(4), which=(0,))

        payload = residual.to_json()

        assert payload["convention"] == "corrected"
        assert payload["complete_weight"] == 1

    def test_even_times(self):
        odd_only = QPolynomial.const(4) + QPolynomial.q(4, 1, 2) + QPolynomial.q(4, 3)

        assert all(r.vanishes() for r in even_time_residuals(odd_only))
        assert not all(r.vanishes() for r in even_time_residuals(odd_only + QPolynomial.q(4, 2)))

    def test_tau_relation(self):
        tau_o = QPolynomial.const(4) + QPolynomial.s(4, 2) + QPolynomial.q(4, 1)
        tau_tilde = s_operator(4).exp_apply(tau_o)

        assert tau_relation_check(tau_tilde, tau_o, 4, 2) == (True, [])
        same, mismatches = tau_relation_check(tau_tilde, tau_o + QPolynomial.s(4), 4, 2)
        assert not same
        assert len(mismatches) == 1
