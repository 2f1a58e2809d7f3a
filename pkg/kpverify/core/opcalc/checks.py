"""Operator identities of the proof chain, checked coefficientwise."""

from itertools import product
from typing import Optional, Sequence

from sympy.polys.domains import QQ

from kpverify.config import LOG
from kpverify.utils.errors import ValidationError
from kpverify.core.constants import DS, S, S_MINUS, h_var, x_var
from kpverify.core.ring import (
    Series,
    SeriesMatrix,
    Var,
    VarTable,
    binomial_series,
    series_exp,
)
from .diffop import DERIVATIVE, LAMBDA_DERIVATION, DiffOp, Letter, apply_diffop_exp, apply_symbol


def lambda_derivation_operator(M: int) -> DiffOp:
    """A = tr Λ^{-1}∂/∂Λ · ∂/∂s."""
    return DiffOp(
        (1, (Letter(LAMBDA_DERIVATION, x_var(i)), Letter(DERIVATIVE, S))) for i in range(1, M + 1)
    )


def trace_power(M: int, k: int, sminus_cap: int, extra: Sequence[Var] = ()) -> Series:
    """tr(Λ² - s_- id)^{k/2} = Σ_i x_i^{-k}(1 - s_- x_i²)^{k/2} in Laurent x."""
    span = abs(k) + 2 * sminus_cap + 2
    xs = [
        Var(x_var(i), span, -k if k > 0 else 0, k > 0) for i in range(1, M + 1)
    ]
    table = VarTable(xs + [Var(S_MINUS, sminus_cap)] + list(extra))
    total = Series.zero(table)
    for x in xs:
        base = Series.one(table) - Series.monomial(table, 1, **{x.name: 2, S_MINUS: 1})
        total = total + binomial_series(base, QQ(k, 2)).shift(x.name, -k)
    return total


def _at_eigenvalues(f: Series, lam: Sequence, keep: str) -> dict[int, object]:
    """Substitute x_i = 1/λ_i (negative powers included); returns keep-exponent -> value."""
    xs = [f.table.index(x_var(i)) for i in range(1, len(lam) + 1)]
    k = f.table.index(keep)
    out: dict[int, object] = {}
    for e, c in f.terms.items():
        v = c
        for i, lam_i in zip(xs, lam):
            v = v * QQ.convert(lam_i) ** (-e[i])
        out[e[k]] = out.get(e[k], QQ(0)) + v
    return {p: v for p, v in out.items() if v}


def lambda_derivation_check(
    k: int, M: int, lam: Optional[Sequence] = None, sminus_cap: int = 4
) -> bool:
    """∂_{s_-} tr(Λ²-s_-)^{k/2} = -(1/2) tr Λ^{-1}∂_Λ · tr(Λ²-s_-)^{k/2} as series in s_-."""
    if sminus_cap < 1:
        raise ValidationError("lambda_derivation_check needs an s_- cap of at least 1")
    if lam is not None and len(lam) != M:
        raise ValidationError(f"Expected {M} eigenvalues, got {len(lam)}")
    F = trace_power(M, k, sminus_cap)
    lhs = F.derivative(S_MINUS).truncate(**{S_MINUS: sminus_cap - 1})
    rhs = (
        DiffOp.trace_lambda([x_var(i) for i in range(1, M + 1)])
        .apply(F)
        .scale(QQ(-1, 2))
        .truncate(**{S_MINUS: sminus_cap - 1})
    )
    if lam is None:
        return lhs == rhs
    return _at_eigenvalues(lhs, lam, S_MINUS) == _at_eigenvalues(rhs, lam, S_MINUS)


def _basis(M: int, max_degree: int):
    for exps in product(range(max_degree + 1), repeat=M + 1):
        if sum(exps) <= max_degree:
            yield exps


def conjugation_check(M: int, max_degree: int = 6, h_cap: int = 2) -> bool:
    """e^{A}·g·e^{-A} = g·e^{-tr H ∂_s} with g = exp(-½ tr HΛ²), on monomials in (x, s).

    Only the diagonal of H enters tr HΛ², so H is carried by formal
    h_1..h_M; g is truncated at total h-degree ``h_cap`` per entry.
    """
    hs = [Var(h_var(i), h_cap) for i in range(1, M + 1)]
    xs = [Var(x_var(i), 2 * max_degree, -2 * h_cap, True) for i in range(1, M + 1)]
    table = VarTable(hs + xs + [Var(S, max_degree)])
    g = Series.one(table)
    for h, x in zip(hs, xs):
        g = g * series_exp(Series.monomial(table, QQ(-1, 2), **{h.name: 1, x.name: -2}))
    A = lambda_derivation_operator(M)
    trace_h = Series.zero(table)
    for h in hs:
        trace_h = trace_h + Series.var(table, h.name)
    shift = DiffOp.d(S, coeff=-trace_h)
    for exps in _basis(M, max_degree):
        powers = {x.name: p for x, p in zip(xs, exps[:-1])}
        f = Series.monomial(table, 1, **powers, **{S: exps[-1]})
        lhs = apply_diffop_exp(A, g * apply_diffop_exp(-A, f))
        rhs = g * apply_diffop_exp(shift, f)
        if lhs != rhs:
            LOG.warning(f"conjugation mismatch at monomial {powers} s^{exps[-1]}")
            return False
    return True


def operator_moving_check(M: int, max_degree: int = 6) -> bool:
    """exp(-A) fixes det(-H - s id) and maps det Λ · G(s) to det√(Λ² - 2∂_s) G(s)."""
    xs = [Var(x_var(i), 2 * max_degree, -1, True) for i in range(1, M + 1)]
    hs = [Var(h_var(i, j), 1) for i in range(1, M + 1) for j in range(1, M + 1)]
    table = VarTable(xs + hs + [Var(S, max(M, max_degree)), Var(DS, max_degree)])
    A = lambda_derivation_operator(M)

    rows = [
        [
            Series.var(table, h_var(i, j), coeff=-1) - (Series.var(table, S) if i == j else 0)
            for j in range(1, M + 1)
        ]
        for i in range(1, M + 1)
    ]
    det = SeriesMatrix.of_series(rows).cofactor_det()
    if apply_diffop_exp(-A, det) != det:
        LOG.warning("exp(-A) acted non-trivially on det(-H - s id)")
        return False

    det_lambda = Series.one(table)
    symbol = Series.one(table)
    for x in xs:
        det_lambda = det_lambda.shift(x.name, -1)
        base = Series.one(table) - Series.monomial(table, 2, **{x.name: 2, DS: 1})
        symbol = symbol * binomial_series(base, QQ(1, 2))
    symbol = symbol * det_lambda
    for n in range(max_degree + 1):
        G = Series.var(table, S, n)
        lhs = apply_diffop_exp(-A, det_lambda * G)
        rhs = apply_symbol(symbol, DS, S, G)
        if lhs != rhs:
            LOG.warning(f"operator-moving mismatch at G = s^{n}")
            return False
    return True
