"""
Unit tests for the matrix-model pipelines (core/pipelines).

All evaluations use M = 1 or tiny caps so they run in well under a second each.
"""

import pytest
from sympy.polys.domains import QQ

from kpverify.core.pipelines import (
    GENERAL_S,
    SUBSTITUTED,
    PipelineResult,
    bt_proportionality,
    check_stolambda,
    common_region,
    eval_BT_remark,
    eval_IMe_ext,
    eval_ZN,
    eval_ZN_ext,
    eval_Zo2,
    flow_equation_check,
    pde_check,
    region_compare,
    zo2_operator_image,
)
from kpverify.core.ring import Series, VarTable
from kpverify.models import CheckStatus
from kpverify.utils.errors import DomainError, InfeasibleCapsError, StructuralError, ValidationError


@pytest.mark.unit
class TestKontsevichPenner:
    """Test eval_ZN."""

    def test_pure_cubic(self):
        result = eval_ZN(1, 0, [1], 3)

        assert result.series.constant_term() == 1
        assert result.series.coeff(eps=1) == 0
        assert result.series.coeff(eps=2) == 0
        assert result.series.coeff(eps=3) == QQ(5, 24)

    def test_with_penner_term(self):
        assert eval_ZN(1, 1, [1], 3).series.coeff(eps=3) == QQ(41, 24)

    def test_depth_zero(self):
        result = eval_ZN(2, 1, ["1", "3/2"], 0)

        assert result.series == 1
        assert result.notes == ["no admissible correction at these caps"]

    def test_symbolic_eigenvalue(self):
        result = eval_ZN(1, 0, None, 3)

        assert result.series.coeff(eps=3, x1=3) == QQ(5, 24)

    def test_validation(self):
        with pytest.raises(ValidationError):
            eval_ZN(2, 1, [1, 1], 2)
        with pytest.raises(ValidationError):
            eval_ZN(1, -1, [1], 2)
        with pytest.raises(ValidationError):
            eval_ZN(1, 0, [0], 2)

    def test_budget(self):
        with pytest.raises(InfeasibleCapsError):
            eval_ZN(1, 0, [1], 3, budget=1)

    def test_model_result(self):
        model = eval_ZN(1, 0, [1], 3).to_model_result()
        dumped = model.model_dump(mode="json", by_alias=True)

        assert dumped["lambda"] == ["1"]
        assert {"exponents": {"eps": 3}, "value": "5/24"} in dumped["coefficients"]
        assert dumped["region"] == {"eps": 3}


@pytest.mark.unit
class TestOpenSide:
    """Test the extended integral, the open partition function and the i-rotated form."""

    def test_ime_reduces_to_zn(self):
        ime = eval_IMe_ext(1, [1], 3, 2)
        zn = eval_ZN(1, 1, [1], 3)

        for e in range(4):
            assert ime.series.coeff(eps=e, s=0) == zn.series.coeff(eps=e)

    def test_ime_reduces_to_zn_two_eigenvalues(self):
        lam = [1, "3/2"]
        ime = eval_IMe_ext(2, lam, 3, 1)
        zn = eval_ZN(2, 1, lam, 3)

        for e in range(4):
            assert ime.series.coeff(eps=e, s=0) == zn.series.coeff(eps=e)

    def test_ime_linear_s_term(self):
        assert eval_IMe_ext(1, [1], 3, 2).series.coeff(eps=1, s=1) == 1

    def test_ime_depth_zero(self):
        assert eval_IMe_ext(1, [2], 0, 2).series == 1

    def test_zo2_equals_operator_image(self):
        depth, s_cap = 4, 2
        zo2 = eval_Zo2(1, [1], depth, s_cap)
        image = zo2_operator_image(eval_IMe_ext(1, [1], depth, s_cap + depth // 2))
        region = common_region(zo2.region, image.region)

        same, mismatches = region_compare(zo2.series, image.series, region)

        assert same, mismatches
        assert region == {"eps": 4, "s": 2}

    def test_zo2_depth_zero(self):
        assert eval_Zo2(1, [1], 0, 2).series == 1

    def test_bt_is_real(self):
        result = eval_BT_remark(1, [1], 3, 2)

        assert result.series.is_real()
        assert result.series.constant_term() == 1

    def test_bt_proportional_to_zo2(self):
        outcome = bt_proportionality(eval_BT_remark(1, [1], 3, 2), eval_Zo2(1, [1], 3, 2))

        assert outcome.status == CheckStatus.PASS, outcome.detail
        assert outcome.region == {"eps": 3, "s": 2}

    def test_zo2_equals_operator_image_two_eigenvalues(self):
        lam = [1, "3/2"]
        zo2 = eval_Zo2(2, lam, 2, 1)
        image = zo2_operator_image(eval_IMe_ext(2, lam, 2, 2))

        same, mismatches = region_compare(zo2.series, image.series, common_region(zo2.region, image.region))

        assert same, mismatches

    def test_numeric_eigenvalues_required(self):
        with pytest.raises(ValidationError):
            eval_Zo2(1, None, 2, 2)


@pytest.mark.unit
class TestExtendedModel:
    """Test the Ginibre-extended model and the substitution identity."""

    def test_substituted_matches_known_value(self):
        assert eval_ZN_ext(1, 1, [1], 3, SUBSTITUTED).series.coeff(eps=3) == QQ(41, 24)

    def test_substituted_equals_zn_for_two(self):
        ext = eval_ZN_ext(1, 2, [1], 3, SUBSTITUTED)
        zn = eval_ZN(1, 2, [1], 3)

        for e in range(4):
            assert ext.series.coeff(eps=e) == zn.series.coeff(eps=e)

    def test_substituted_equals_zn_two_eigenvalues(self):
        lam = [1, "3/2"]
        ext = eval_ZN_ext(2, 1, lam, 3, SUBSTITUTED)
        zn = eval_ZN(2, 1, lam, 3)
        region = common_region(ext.region, zn.region)

        same, mismatches = region_compare(ext.series, zn.series, region)

        assert same, mismatches
        assert region == {"eps": 3}

    @pytest.mark.parametrize("n", [1, 2])
    def test_flow_equation_from_split_runs(self, n):
        ok, mismatches = flow_equation_check(1, 1, [1], 3, n)

        assert ok, mismatches

    def test_first_flow_equation(self):
        result = eval_ZN_ext(1, 1, [1], 3, GENERAL_S, [2, 1])

        ok, mismatches = pde_check(result, 1)

        assert ok, mismatches

    def test_pde_needs_caps(self):
        result = eval_ZN_ext(1, 1, [1], 2, GENERAL_S, [1, 1])

        with pytest.raises(StructuralError):
            pde_check(result, 1)

    def test_validation(self):
        with pytest.raises(ValidationError):
            eval_ZN_ext(1, 0, [1], 2)
        with pytest.raises(ValidationError):
            eval_ZN_ext(1, 1, [1], 2, "other")

    @pytest.mark.parametrize(
        "M,N,lam,order,mode",
        [
            (1, 1, [2], 4, "concrete"),
            (1, 2, [3], 3, "concrete"),
            (2, 1, [1, 2], 3, "concrete"),
            (1, 1, [2], 8, "formal"),
            (2, 3, ["1/2", 5], 6, "formal"),
        ],
    )
    def test_stolambda(self, M, N, lam, order, mode):
        assert check_stolambda(M, N, lam, order, mode)


@pytest.mark.unit
class TestPipelineResult:
    """Test result invariants and region helpers."""

    def test_constant_term_must_be_one(self):
        table = VarTable.of(eps=1)

        with pytest.raises(DomainError):
            PipelineResult("zn", 1, 0, (QQ(1),), {"eps": 1}, Series.const(table, 2), {"eps": 1})

    def test_common_region(self):
        assert common_region({"eps": 4, "s": 3}, {"eps": 3}) == {"eps": 3, "s": 3}

    def test_region_compare_reports_monomials(self):
        table = VarTable.of(eps=2)
        a = Series(table, {(0,): 1, (2,): 3})
        b = Series(table, {(0,): 1, (2,): 4})

        same, mismatches = region_compare(a, b, {"eps": 2})

        assert not same
        assert mismatches == ["eps^2: 3 vs 4"]
        assert region_compare(a, b, {"eps": 1}) == (True, [])
