"""The extended Kontsevich–Penner model with a Ginibre matrix, and the s_i(Λ) substitution identity."""

from math import factorial
from typing import Optional, Sequence

from sympy.polys.domains import QQ

from kpverify.config import LOG
from kpverify.models import ModelName
from kpverify.utils.errors import StructuralError, ValidationError
from kpverify.core.constants import DEFAULT_PAIRING_BUDGET, EPS, T, s_time, w_var
from kpverify.core.ring import (
    Series,
    SeriesMatrix,
    VarTable,
    format_scalar,
    series_exp,
    series_inv,
    series_sqrt,
    trace_log,
)
from kpverify.core.symfun import miwa_times, power_sum
from kpverify.core.wick import (
    GINIBRE,
    GINIBRE_CONJ,
    HERMITIAN,
    GinibreEnsemble,
    Grading,
    HermitianEnsemble,
    entry_matrix,
    identity_matrix,
    scalar_matrix,
    trace_power_sum,
)
from .common import (
    NORMALIZED,
    checked_eigenvalues,
    cubic_vertex,
    finish_result,
    inverse_diagonal,
    wick_expectation,
)
from .result import PipelineResult

GENERAL_S = "general-s"
SUBSTITUTED = "substituted"


def _s_coefficients(table: VarTable, lam: tuple, depth: int, mode: str, s_caps: Sequence[int]) -> dict[int, Series]:
    """i -> coefficient of tr(Z̄^t)^{i+1}: 2^{-i-1}s_i/(i+1)!, with s_i formal or s_i(Λ)ε^{2i+2}."""
    out = {}
    if mode == GENERAL_S:
        for i in range(len(s_caps)):
            factor = QQ(1, 2 ** (i + 1) * factorial(i + 1))
            out[i] = Series.var(table, s_time(i), coeff=factor)
    else:
        i = 0
        while 2 * i + 2 <= depth:
            factor = QQ(1, 2 ** (i + 1) * factorial(i + 1)) * miwa_times(lam, "s", i)
            out[i] = Series.var(table, EPS, 2 * i + 2, coeff=factor)
            i += 1
    return out


def eval_ZN_ext(
    M: int,
    N: int,
    lam: Sequence,
    depth: int,
    mode: str = SUBSTITUTED,
    s_time_caps: Optional[Sequence[int]] = None,
    budget: int = DEFAULT_PAIRING_BUDGET,
) -> PipelineResult:
    """Double Wick expectation over a Hermitian M×M and a Ginibre N×N matrix.

    Integrand: exp(tr X³/6 + tr Z³/6)·detΛ^N/det((Λ - X)⊗id_N - id_M⊗Z)
    · √det(1 - Λ^{-2}⊗Z̄^t) · exp(Σ_i 2^{-i-1}s_i tr(Z̄^t)^{i+1}/(i+1)!).
    In substituted mode s_i = s_i(Λ) and the last two factors cancel.
    """
    if N < 1:
        raise ValidationError(f"Ginibre size must be at least 1, got {N}")
    if mode not in (GENERAL_S, SUBSTITUTED):
        raise ValidationError(f"Unknown mode {mode!r}; expected {GENERAL_S} or {SUBSTITUTED}")
    lam = checked_eigenvalues(M, lam)
    if lam is None:
        raise ValidationError("eval_ZN_ext needs numeric eigenvalues")
    s_caps = list(s_time_caps) if s_time_caps is not None else [2, 1]
    if mode == GENERAL_S:
        if not s_caps or any(c < 0 for c in s_caps):
            raise ValidationError("general-s mode needs non-negative caps for s_0..s_K")
        table = VarTable.of(**{EPS: depth}, **{s_time(i): c for i, c in enumerate(s_caps)})
        zb_cap = sum((i + 1) * c for i, c in enumerate(s_caps)) + depth // 2
        region = {EPS: depth, **{s_time(i): c for i, c in enumerate(s_caps)}}
    else:
        table = VarTable.of(**{EPS: depth})
        zb_cap = depth // 2
        region = {EPS: depth}
    grading = Grading(
        EPS,
        depth,
        weights={HERMITIAN: 1, GINIBRE: 0, GINIBRE_CONJ: 0},
        degree_caps={GINIBRE: zb_cap, GINIBRE_CONJ: zb_cap},
    )
    LOG.debug(f"{ModelName.ZNEXT} {mode}: Ginibre degree cap {zb_cap}")

    X = entry_matrix(table, grading, HERMITIAN, M)
    Z = entry_matrix(table, grading, GINIBRE, N)
    Zbt = entry_matrix(table, grading, GINIBRE_CONJ, N, transpose=True)
    id_M, id_N = identity_matrix(table, grading, M), identity_matrix(table, grading, N)
    inv = scalar_matrix(table, grading, inverse_diagonal(table, M, lam))
    inv2 = scalar_matrix(table, grading, inverse_diagonal(table, M, lam, power=2))

    W = inv.kron(id_N) @ (X.kron(id_N) + id_M.kron(Z))
    K = inv2.kron(Zbt)
    cubic = cubic_vertex(X) + cubic_vertex(Z)
    s_part = X.zero
    coefficients = _s_coefficients(table, lam, depth, mode, s_caps)
    if coefficients:
        traces = trace_power_sum(Zbt, [i + 1 for i in coefficients])
        for i, c in coefficients.items():
            s_part = s_part + traces[i + 1].scale(c)

    integrand = (
        (cubic + trace_log(W, depth)).exp()
        * trace_log(K, depth // 2).scale(QQ(-1, 2)).exp()
        * s_part.exp()
    )
    ensembles = [HermitianEnsemble(M, lam), GinibreEnsemble(N)]
    series = wick_expectation(integrand, ensembles, budget, ModelName.ZNEXT)
    caps = {EPS: depth, **{k: v for k, v in region.items() if k != EPS}}
    return finish_result(ModelName.ZNEXT, M, N, lam, caps, series, region, normalization=NORMALIZED + f"; {mode}")


def pde_check(
    result: PipelineResult, n: int, flow: Optional[PipelineResult] = None
) -> tuple[bool, list[str]]:
    """∂τ/∂s_n = (1/(n+1)!)∂^{n+1}τ/∂s_0^{n+1} at s = 0, compared per power of ε.

    ``flow`` supplies the s_n side from a separate run; by default both sides
    are read from ``result``.
    """
    if n < 1:
        raise ValidationError("the s_n equations start at n = 1")
    flow = result if flow is None else flow
    s0, sn = s_time(0), s_time(n)
    if s0 not in result.series.table or result.series.table.cap(s0) < n + 1:
        raise StructuralError(f"cap of s_0 too small for the s_{n} equation")
    if sn not in flow.series.table or flow.series.table.cap(sn) < 1:
        raise StructuralError(f"cap of s_{n} too small for the s_{n} equation")
    mismatches = []
    for e in range(min(result.region[EPS], flow.region[EPS]) + 1):
        lhs = flow.series.coeff(**{EPS: e, sn: 1})
        rhs = result.series.coeff(**{EPS: e, s0: n + 1})
        if lhs != rhs:
            mismatches.append(f"eps^{e}: {format_scalar(lhs)} vs {format_scalar(rhs)}")
    return not mismatches, mismatches


def flow_equation_check(
    M: int, N: int, lam: Sequence, depth: int, n: int, budget: int = DEFAULT_PAIRING_BUDGET
) -> tuple[bool, list[str]]:
    """The s_n equation from two general-s runs, one keeping only s_0 and one keeping only s_n.

    Each run needs Ginibre degree n + 1 + depth // 2 instead of 2n + 2 + depth // 2.
    """
    pure_s0 = eval_ZN_ext(M, N, lam, depth, GENERAL_S, [n + 1], budget)
    pure_sn = eval_ZN_ext(M, N, lam, depth, GENERAL_S, [0] * n + [1], budget)
    return pde_check(pure_s0, n, pure_sn)


def _stolambda_sides_concrete(M: int, N: int, lam: tuple, order: int) -> tuple[Series, Series]:
    """Both sides with Z̄^t a concrete N×N matrix of formal entries c_ab, graded by t."""
    names = [f"c{a}{b}" for a in range(1, N + 1) for b in range(1, N + 1)]
    table = VarTable.of(**{T: order}, **{n: order for n in names})
    t = Series.var(table, T)
    C = SeriesMatrix.of_series(
        [[Series.var(table, f"c{a}{b}") * t for b in range(1, N + 1)] for a in range(1, N + 1)]
    )
    exponent = Series.zero(table)
    power = None
    for i in range(order):
        power = C if power is None else power @ C
        coeff = QQ(1, 2 ** (i + 1) * factorial(i + 1)) * miwa_times(lam, "s", i)
        exponent = exponent + power.trace().scale(coeff)
    lhs = series_exp(exponent)

    one = Series.one(table)
    inv2 = SeriesMatrix.diag([one.scale(1 / v**2) for v in lam], Series.zero(table))
    matrix = SeriesMatrix.identity(M * N, one, Series.zero(table)) - inv2.kron(C)
    rhs = series_inv(series_sqrt(matrix.cofactor_det()))
    return lhs, rhs


def _stolambda_sides_formal(lam: tuple, order: int) -> tuple[Series, Series]:
    """Both sides with tr(Z̄^t)^k = w_k free, w_k graded by t^k."""
    table = VarTable.of(**{T: order}, **{w_var(k): order // k for k in range(1, order + 1)})
    lhs_exp = Series.zero(table)
    rhs_exp = Series.zero(table)
    for k in range(1, order + 1):
        w = Series.monomial(table, **{T: k, w_var(k): 1})
        i = k - 1
        lhs_exp = lhs_exp + w.scale(QQ(1, 2**k * factorial(k)) * miwa_times(lam, "s", i))
        rhs_exp = rhs_exp + w.scale(QQ(1, 2 * k) * power_sum(lam, 2 * k))
    return series_exp(lhs_exp), series_exp(rhs_exp)


def check_stolambda(
    M: int, N: int, lam: Sequence, order: int, mode: str = "formal"
) -> bool:
    """exp(Σ_i 2^{-i-1}s_i(Λ) tr(Z̄^t)^{i+1}/(i+1)!) = detΛ^N/√det(Λ²⊗id_N - id_M⊗Z̄^t) to ``order``."""
    lam = checked_eigenvalues(M, lam)
    if lam is None:
        raise ValidationError("check_stolambda needs numeric eigenvalues")
    if mode == "concrete":
        lhs, rhs = _stolambda_sides_concrete(M, N, lam, order)
    elif mode == "formal":
        lhs, rhs = _stolambda_sides_formal(lam, order)
    else:
        raise ValidationError(f"Unknown mode {mode!r}; expected concrete or formal")
    same = lhs == rhs
    if not same:
        LOG.warning(f"s_i(Λ) substitution identity fails at order {order}: {(lhs - rhs).pretty()}")
    return same
