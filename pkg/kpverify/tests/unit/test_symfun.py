"""
Unit tests for Miwa times, power sums and q-basis extraction (core/symfun).
"""

import pytest
from sympy.polys.domains import QQ

from kpverify.core.ring import Series, VarTable
from kpverify.core.symfun import (
    QPolynomial,
    extract_q_polynomial,
    miwa_times,
    monomial_to_powersum,
    newton_round_trip,
    partitions_of,
    power_sum,
    symmetric_orbit_sum,
)
from kpverify.utils.errors import DomainError, ExtractionError, ValidationError


@pytest.mark.unit
class TestMiwaTimes:
    """Test s_i and q_k."""

    def test_values_at_two(self):
        assert miwa_times([2], "s", 0) == QQ(1, 4)
        assert miwa_times([2], "s", 1) == QQ(1, 8)
        assert miwa_times([2], "q", 3) == QQ(1, 8)

    def test_sum_over_eigenvalues(self):
        assert power_sum([QQ(1), QQ(2)], 2) == QQ(5, 4)

    def test_errors(self):
        with pytest.raises(DomainError):
            miwa_times([0], "q", 1)
        with pytest.raises(ValidationError):
            miwa_times([1], "q", 0)
        with pytest.raises(ValidationError):
            miwa_times([1], "r", 1)


@pytest.mark.unit
class TestPowerSums:
    """Test conversions to the power-sum basis."""

    def test_partitions(self):
        assert partitions_of(0) == [()]
        assert partitions_of(3) == [(3,), (2, 1), (1, 1, 1)]

    def test_power_sum_identity(self):
        table = VarTable.of(x1=2, x2=2)
        sym = Series.var(table, "x1", 2) + Series.var(table, "x2", 2)

        assert monomial_to_powersum(sym, ["x1", "x2"], 2) == QPolynomial.q(2, 2)

    def test_elementary_two(self):
        table = VarTable.of(x1=2, x2=2)
        e2 = Series.monomial(table, x1=1, x2=1)
        expected = QPolynomial.q(2, 1, 2, QQ(1, 2)) - QPolynomial.q(2, 2, coeff=QQ(1, 2))

        assert monomial_to_powersum(e2, ["x1", "x2"], 2) == expected

    def test_constant(self):
        table = VarTable.of(x1=2, x2=2)

        assert monomial_to_powersum(Series.const(table, 7), ["x1", "x2"], 2) == QPolynomial.const(2, 7)

    def test_orbit_sum_round_trip(self):
        table = VarTable.of(x1=3, x2=3, x3=3)
        names = ["x1", "x2", "x3"]
        m21 = symmetric_orbit_sum(table, names, [2, 1])
        # m_{21} = p_2 p_1 - p_3
        expected = QPolynomial.from_partitions(3, {((2, 1), 0): 1, ((3,), 0): -1})

        assert monomial_to_powersum(m21, names, 3) == expected

    def test_asymmetric_rejected(self):
        table = VarTable.of(x1=2, x2=2)

        with pytest.raises(DomainError):
            monomial_to_powersum(Series.var(table, "x1"), ["x1", "x2"], 2)

    def test_weight_above_variable_count(self):
        table = VarTable.of(x1=3)

        with pytest.raises(DomainError):
            monomial_to_powersum(Series.var(table, "x1", 2), ["x1"], 2)

    @pytest.mark.parametrize("D", [1, 2, 3, 4, 5])
    def test_newton_identities(self, D):
        assert newton_round_trip(D)


def _pipeline(value_of):
    table = VarTable.of(eps=2, s=2)

    def run(lam):
        return Series.one(table) + Series.var(table, "eps", 2, coeff=value_of(lam))

    return run


@pytest.mark.unit
class TestExtraction:
    """Test exact q-basis extraction."""

    def test_extract_q2(self):
        tau = extract_q_polynomial(_pipeline(lambda lam: power_sum(lam, 2)), 2, 0)

        assert tau == QPolynomial.const(2, 1) + QPolynomial.q(2, 2)

    def test_extract_p1_squared(self):
        tau = extract_q_polynomial(_pipeline(lambda lam: power_sum(lam, 1) ** 2), 2, 0)

        assert tau == QPolynomial.const(2, 1) + QPolynomial.q(2, 1, 2)

    def test_extract_with_s(self):
        table = VarTable.of(eps=2, s=2)

        def run(lam):
            q1 = power_sum(lam, 1)
            return Series(table, {(0, 0): 1, (1, 1): 3 * q1, (0, 2): QQ(1, 2)})

        tau = extract_q_polynomial(run, 2, 2)

        # weight of s is one, so eps^1 s^1 is the weight-2 monomial s*q1
        expected = QPolynomial.from_partitions(2, {((), 0): 1, ((1,), 1): 3, ((), 2): QQ(1, 2)})
        assert tau == expected

    def test_non_symmetric_pipeline_rejected(self):
        with pytest.raises(ExtractionError):
            extract_q_polynomial(_pipeline(lambda lam: QQ(1) / lam[0] ** 2), 2, 0, retries=1)

    def test_deterministic_for_seed(self):
        pipeline = _pipeline(lambda lam: power_sum(lam, 1) * power_sum(lam, 1) + power_sum(lam, 2))

        assert extract_q_polynomial(pipeline, 2, 0, seed=7) == extract_q_polynomial(pipeline, 2, 0, seed=11)
