"""Exact scalars, truncated series, series matrices and determinants."""

from .scalar import (
    I_UNIT,
    coerce,
    format_scalar,
    gaussian,
    parse_rational,
    parse_scalar,
    rational,
    sqrt_exact,
    to_float,
)
from .series import Series, Var, VarTable, nilpotency_bound
from .elementary import (
    binomial_coefficients,
    binomial_series,
    compose_nilpotent,
    series_elem,
    series_exp,
    series_inv,
    series_log,
    series_sqrt,
)
from .matrix import SeriesMatrix, det_trlog, trace_log


def series_arith(a: Series, b, op: str) -> Series:
    """add | mul | scalar-mul dispatch used by reports and the command line."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "scalar-mul":
        return a.scale(b)
    from kpverify.utils.errors import ValidationError

    raise ValidationError(f"Unknown series operation {op!r}")


def kron(A: SeriesMatrix, B: SeriesMatrix) -> SeriesMatrix:
    return A.kron(B)


__all__ = [
    "I_UNIT",
    "Series",
    "SeriesMatrix",
    "Var",
    "VarTable",
    "binomial_coefficients",
    "binomial_series",
    "coerce",
    "compose_nilpotent",
    "det_trlog",
    "format_scalar",
    "gaussian",
    "kron",
    "nilpotency_bound",
    "parse_rational",
    "parse_scalar",
    "rational",
    "series_arith",
    "series_elem",
    "series_exp",
    "series_inv",
    "series_log",
    "series_sqrt",
    "sqrt_exact",
    "to_float",
    "trace_log",
]
