"""Hermitian one-matrix pipelines: the Kontsevich–Penner model and the open-side forms.

Every pipeline evaluates a normalized Gaussian expectation under
exp(-½ tr X²Λ) after the shift H = X - Λ. The ε-grading attaches one ε to
each propagator and to each explicit Λ^{-1}, so a coefficient of ε^D comes
from finitely many vertices and insertions.
"""

from typing import Optional, Sequence

from sympy.polys.domains import QQ

from kpverify.models import Basis, CheckOutcome, CheckStatus, ModelName
from kpverify.utils.errors import ImaginaryResidueError, ValidationError
from kpverify.core.constants import DEFAULT_PAIRING_BUDGET, EPS, S, S_MINUS
from kpverify.core.ring import (
    I_UNIT,
    Series,
    Var,
    VarTable,
    binomial_series,
    format_scalar,
    series_exp,
    series_inv,
    trace_log,
)
from kpverify.core.opcalc import DiffOp, apply_diffop_exp, complex_integral_op
from kpverify.core.symfun import power_sum
from kpverify.core.wick import (
    HERMITIAN,
    EntryPoly,
    Grading,
    HermitianEnsemble,
    entry_matrix,
    scalar_matrix,
    symbolic_table,
)
from .common import (
    checked_eigenvalues,
    cubic_vertex,
    finish_result,
    inverse_diagonal,
    scalar_identity,
    wick_expectation,
)
from .result import PipelineResult, common_region, region_compare, region_digest


def _sminus_caps(depth: int, s_cap: int, sminus_cap: Optional[int]) -> tuple[int, int, dict]:
    """(s_- cap, inner s cap, certified region) for pipelines ending in the complex integral.

    s_-^m carries ε^{2m} and consumes m powers of s.
    """
    sminus_cap = depth // 2 if sminus_cap is None else sminus_cap
    if sminus_cap < 0 or s_cap < 0:
        raise ValidationError("s and s_- caps must be non-negative")
    used = min(sminus_cap, depth // 2)
    eps_region = depth if sminus_cap >= depth // 2 else 2 * sminus_cap + 1
    return sminus_cap, s_cap + used, {EPS: eps_region, S: s_cap}


def eval_ZN(
    M: int,
    N: int,
    lam: Optional[Sequence],
    depth: int,
    budget: int = DEFAULT_PAIRING_BUDGET,
) -> PipelineResult:
    """⟨exp(tr X³/6)·exp(N Σ_k tr((εΛ^{-1}X)^k)/k)⟩ to ε^depth.

    ``lam=None`` evaluates in symbolic mode over x_i = 1/λ_i, u_ij = 1/(x_i+x_j).
    """
    if N < 0:
        raise ValidationError(f"Penner power must be non-negative, got {N}")
    lam = checked_eigenvalues(M, lam)
    symbolic = lam is None
    if symbolic:
        table = symbolic_table(M, 2 * depth, depth, Var(EPS, depth))
    else:
        table = VarTable.of(**{EPS: depth})
    grading = Grading(EPS, depth)
    X = entry_matrix(table, grading, HERMITIAN, M)
    exponent = cubic_vertex(X)
    if N:
        inv = scalar_matrix(table, grading, inverse_diagonal(table, M, lam))
        exponent = exponent + trace_log(inv @ X, depth).scale(N)
    ensemble = HermitianEnsemble(M, lam, table=table if symbolic else None)
    series = wick_expectation(exponent.exp(), [ensemble], budget, ModelName.ZN)
    return finish_result(
        ModelName.ZN, M, N, lam, {EPS: depth}, series, {EPS: depth},
        basis=Basis.X_SYMBOLIC if symbolic else Basis.EPSILON_NUMERIC,
    )


def _ime_exponent(table: VarTable, grading: Grading, M: int, lam: tuple, depth: int) -> EntryPoly:
    """tr X³/6 + Σ_k tr((εΛ^{-1}(X + s))^k)/k."""
    X = entry_matrix(table, grading, HERMITIAN, M)
    shifted = X + scalar_identity(X.zero, Series.var(table, S), M)
    inv = scalar_matrix(table, grading, inverse_diagonal(table, M, lam))
    return cubic_vertex(X) + trace_log(inv @ shifted, depth)


def eval_IMe_ext(
    M: int,
    lam: Sequence,
    depth: int,
    s_cap: int,
    budget: int = DEFAULT_PAIRING_BUDGET,
) -> PipelineResult:
    """Normalized detΛ/det(-H - s) against the cubic measure."""
    lam = checked_eigenvalues(M, lam)
    if lam is None:
        raise ValidationError("eval_IMe_ext needs numeric eigenvalues")
    table = VarTable.of(**{EPS: depth, S: s_cap})
    grading = Grading(EPS, depth)
    integrand = _ime_exponent(table, grading, M, lam, depth).exp()
    series = wick_expectation(integrand, [HermitianEnsemble(M, lam)], budget, ModelName.IME)
    return finish_result(ModelName.IME, M, 1, lam, {EPS: depth, S: s_cap}, series, {EPS: depth, S: s_cap})


def _sqrt_factors(table: VarTable, M: int, lam: tuple) -> Series:
    """∏_i √(1 - ε²s_-/λ_i²)."""
    one = Series.one(table)
    out = one
    for v in inverse_diagonal(table, M, lam, power=2):
        out = out * binomial_series(one - v * Series.var(table, S_MINUS), QQ(1, 2))
    return out


def _output_table(depth: int, inner: int) -> VarTable:
    return VarTable.of(**{EPS: depth, S: inner})


def eval_Zo2(
    M: int,
    lam: Sequence,
    depth: int,
    s_cap: int,
    sminus_cap: Optional[int] = None,
    budget: int = DEFAULT_PAIRING_BUDGET,
) -> PipelineResult:
    """[exp(2∂_s∂_{s_-}) ⟨det√(Λ² - s_-)/det(-H - s)⟩]|_{s_-=0}.

    The complex integral acts on (s, s_-) only, so it is applied after the
    Wick expectation.
    """
    lam = checked_eigenvalues(M, lam)
    if lam is None:
        raise ValidationError("eval_Zo2 needs numeric eigenvalues")
    sminus_cap, inner, region = _sminus_caps(depth, s_cap, sminus_cap)
    table = VarTable.of(**{EPS: depth, S: inner, S_MINUS: sminus_cap})
    grading = Grading(EPS, depth)
    integrand = _ime_exponent(table, grading, M, lam, depth).exp().scale(_sqrt_factors(table, M, lam))
    F = wick_expectation(integrand, [HermitianEnsemble(M, lam)], budget, ModelName.ZO2)
    series = complex_integral_op(F).embed(_output_table(depth, inner))
    caps = {EPS: depth, S: inner, S_MINUS: sminus_cap}
    return finish_result(ModelName.ZO2, M, 1, lam, caps, series, region)


def zo2_operator_image(ime: PipelineResult) -> PipelineResult:
    """exp(-Σ_k 2^k q_{2k} ε^{2k} ∂_s^k/(2k)) applied to an eval_IMe_ext payload.

    The certified s range shrinks by the number of ∂_s the operator can apply.
    """
    f = ime.series
    depth = f.table.cap(EPS)
    op = DiffOp()
    for k in range(1, depth // 2 + 1):
        coeff = Series.var(f.table, EPS, 2 * k, coeff=-QQ(2**k, 2 * k) * power_sum(ime.lam, 2 * k))
        op = op + DiffOp.d(S, k, coeff=coeff)
    series = apply_diffop_exp(op, f)
    region = {EPS: ime.region[EPS], S: ime.region[S] - depth // 2}
    if region[S] < 0:
        raise ValidationError(f"s cap {ime.region[S]} too small for the operator image at depth {depth}")
    return finish_result("zo2-operator", ime.M, ime.N, ime.lam, dict(ime.caps), series, region)


def _bt_inverse(table: VarTable, M: int, lam: tuple) -> list[Series]:
    """r_i = εx_i/(1 + √(1 - ε²x_i²s_-)), the inverse of λ_i + √(λ_i² - s_-) in the ε-grading."""
    one = Series.one(table)
    sm = Series.var(table, S_MINUS)
    out = []
    for first, second in zip(inverse_diagonal(table, M, lam), inverse_diagonal(table, M, lam, power=2)):
        root = binomial_series(one - second * sm, QQ(1, 2))
        out.append(first * series_inv(one + root))
    return out


def eval_BT_remark(
    M: int,
    lam: Sequence,
    depth: int,
    s_cap: int,
    sminus_cap: Optional[int] = None,
    budget: int = DEFAULT_PAIRING_BUDGET,
) -> PipelineResult:
    """i-rotated open partition function with measure exp(i tr H³/6 - ½ tr H²Λ).

    Computed over Gaussian rationals; every H carries one factor i, so the
    result must come out real.
    """
    lam = checked_eigenvalues(M, lam)
    if lam is None:
        raise ValidationError("eval_BT_remark needs numeric eigenvalues")
    sminus_cap, inner, region = _sminus_caps(depth, s_cap, sminus_cap)
    table = VarTable.of(**{EPS: depth, S: inner, S_MINUS: sminus_cap})
    grading = Grading(EPS, depth)
    X = entry_matrix(table, grading, HERMITIAN, M)
    iX = X.scale(I_UNIT)
    s_id = scalar_identity(X.zero, Series.var(table, S), M)
    r = scalar_matrix(table, grading, _bt_inverse(table, M, lam))
    log_ratio = trace_log(r @ (iX + s_id), depth) - trace_log(r @ (iX - s_id), depth)
    integrand = (cubic_vertex(X).scale(I_UNIT) + log_ratio).exp()
    F = wick_expectation(integrand, [HermitianEnsemble(M, lam)], budget, ModelName.BT)
    F = F * series_exp(Series.var(table, S, 3, coeff=QQ(1, 6)))
    series = complex_integral_op(F).embed(_output_table(depth, inner))
    if not series.is_real():
        raise ImaginaryResidueError(
            f"{ModelName.BT}: imaginary residue {series.imag().pretty()}"
        )
    caps = {EPS: depth, S: inner, S_MINUS: sminus_cap}
    return finish_result(ModelName.BT, M, 1, lam, caps, series.real(), region)


def bt_proportionality(bt: PipelineResult, zo2: PipelineResult) -> CheckOutcome:
    """Fix the constant from the lowest order, then require every certified coefficient to match.

    When the lowest order is not itself a constant multiple the comparison is
    reported inconclusive rather than failed.
    """
    region = common_region(bt.region, zo2.region)
    c = bt.series.constant_term() / zo2.series.constant_term()
    lowest = dict(region, **{EPS: 0})
    scaled = zo2.series.scale(c)
    digests = {
        "lhs_digest": region_digest(bt.series, region),
        "rhs_digest": region_digest(scaled, region),
        "region": region,
    }
    same, mismatches = region_compare(bt.series, scaled, lowest)
    if not same:
        return CheckOutcome(
            status=CheckStatus.INCONCLUSIVE,
            detail=f"lowest-order ratio is not a constant: {mismatches[:3]}",
            **digests,
        )
    same, mismatches = region_compare(bt.series, scaled, region)
    return CheckOutcome.from_bool(
        same,
        detail=f"constant {format_scalar(c)}" if same else f"mismatch after constant {format_scalar(c)}: {mismatches[:3]}",
        **digests,
    )
