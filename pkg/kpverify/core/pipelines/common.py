"""Shared building blocks of the Wick pipelines."""

from typing import Optional, Sequence

from sympy.polys.domains import QQ

from kpverify.config import TRACE_LOG
from kpverify.models import Basis
from kpverify.utils.errors import ValidationError
from kpverify.core.constants import EPS, x_var
from kpverify.core.ring import Series, SeriesMatrix, VarTable, parse_rational
from kpverify.core.wick import (
    Ensemble,
    EntryPoly,
    ensure_feasible,
    expectation,
    trace_power_sum,
)
from .result import PipelineResult

NORMALIZED = "normalized Gaussian expectation; c_{Λ,M} and detΛ powers divided out"


def checked_eigenvalues(M: int, lam: Optional[Sequence]) -> Optional[tuple]:
    if lam is None:
        return None
    values = tuple(parse_rational(v) if isinstance(v, str) else QQ.convert(v) for v in lam)
    if len(values) != M:
        raise ValidationError(f"{len(values)} eigenvalues given for M={M}")
    if any(v <= 0 for v in values):
        raise ValidationError("Eigenvalues must be positive")
    if len(set(values)) != M:
        raise ValidationError("Eigenvalues must be pairwise distinct")
    return values


def inverse_diagonal(table: VarTable, M: int, lam: Optional[tuple], power: int = 1) -> list[Series]:
    """(εΛ^{-1})^power as diagonal Series; symbolic λ uses x_i = 1/λ_i."""
    out = []
    for i in range(M):
        if lam is None:
            out.append(Series.monomial(table, **{EPS: power, x_var(i + 1): power}))
        else:
            out.append(Series.var(table, EPS, power, coeff=1 / lam[i] ** power))
    return out


def cubic_vertex(X: SeriesMatrix) -> EntryPoly:
    """tr X³/6."""
    return trace_power_sum(X, [3])[3].scale(QQ(1, 6))


def scalar_identity(entry_zero: EntryPoly, value: Series, n: int) -> SeriesMatrix:
    """value·id_n with EntryPoly entries."""
    const = EntryPoly.const(entry_zero.table, entry_zero.grading, value)
    return SeriesMatrix.diag([const] * n, entry_zero)


def wick_expectation(
    integrand: EntryPoly, ensembles: Sequence[Ensemble], budget: int, model: str
) -> Series:
    estimate = ensure_feasible(integrand, ensembles, budget)
    TRACE_LOG.debug(
        "pipelines",
        f"{len(integrand)} integrand monomials, about {estimate} pairings",
        model=model,
    )
    return expectation(integrand, ensembles)


def finish_result(
    model: str,
    M: int,
    N: int,
    lam: Optional[tuple],
    caps: dict,
    series: Series,
    region: dict,
    basis: Basis = Basis.EPSILON_NUMERIC,
    normalization: str = NORMALIZED,
) -> PipelineResult:
    result = PipelineResult(model, M, N, lam, caps, series, region, basis, normalization)
    if len(series) == 1:
        result.notes.append("no admissible correction at these caps")
    TRACE_LOG.info("pipelines", f"{len(series)} coefficients, region {region}", model=model)
    return result
