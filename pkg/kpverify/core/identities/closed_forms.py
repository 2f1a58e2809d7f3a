"""Weierstrass injectivity and the closed forms of the Schur-reduced complex matrix integral."""

from typing import Mapping

from sympy import Matrix, Rational
from sympy.polys.domains import QQ

from kpverify.config import LOG
from kpverify.utils.errors import ValidationError
from kpverify.utils.tools import seeded_rationals
from kpverify.core.constants import DEFAULT_SEED, S, T
from kpverify.core.ring import Series, SeriesMatrix, VarTable, binomial_series, parse_rational, series_inv
from kpverify.core.opcalc import weierstrass


def weierstrass_injectivity(D: int, seed: int = DEFAULT_SEED) -> bool:
    """exp(t∂_s²) is unitriangular on {1, s, …, s^D}, hence injective.

    Triangularity is read off symbolically in t; the determinant is also
    computed exactly at a seeded rational t.
    """
    table = VarTable.of(**{S: D, T: D})
    columns = []
    for n in range(D + 1):
        image = weierstrass(Series.var(table, S, n))
        column = []
        for j in range(D + 1):
            column.append(image.slice(S, j))
        columns.append(column)
    for n, column in enumerate(columns):
        if column[n] != 1:
            LOG.warning(f"diagonal entry {n} is {column[n].pretty()}")
            return False
        if any(not c.is_zero() for c in column[n + 1:]):
            LOG.warning(f"image of s^{n} has higher powers of s")
            return False
    t_value = next(seeded_rationals(seed))
    numeric = Matrix(
        D + 1,
        D + 1,
        lambda j, n: QQ.to_sympy(columns[n][j].substitute(T, t_value).scalar_value()),
    )
    return numeric.det() == 1


def _sym(v) -> Rational:
    return QQ.to_sympy(parse_rational(v))


def schur_power_closed_form(z1, z2, sbar, n: int) -> bool:
    """(S̄^t)^n for S̄^t = [[z̄_1, 0], [s̄, z̄_2]] has off-diagonal s̄(z̄_1^n - z̄_2^n)/(z̄_1 - z̄_2)."""
    z1, z2, sbar = _sym(z1), _sym(z2), _sym(sbar)
    if z1 == z2:
        raise ValidationError("The divided difference needs z̄_1 ≠ z̄_2")
    power = Matrix([[z1, 0], [sbar, z2]]) ** n
    closed = Matrix([[z1**n, 0], [sbar * (z1**n - z2**n) / (z1 - z2), z2**n]])
    return power == closed


def schur_power_symbolic(n: int) -> bool:
    """The same closed form with z̄_1, z̄_2, s̄ formal; the divided difference is Σ_j z̄_1^j z̄_2^{n-1-j}."""
    table = VarTable.of(z1=n, z2=n, sb=1)
    zero = Series.zero(table)
    z1, z2, sb = (Series.var(table, v) for v in ("z1", "z2", "sb"))
    base = SeriesMatrix([[z1, zero], [sb, z2]], zero)
    divided = sum((z1**j * z2 ** (n - 1 - j) for j in range(n)), zero)
    closed = SeriesMatrix([[z1**n, zero], [sb * divided, z2**n]], zero)
    return base.power(n, Series.one(table)) == closed


def schur_sqrt_closed_form(lam, order: int) -> bool:
    """R = [[a_1, 0], [-λ^{-1}s̄/(√(λ²-z̄_1)+√(λ²-z̄_2)), a_2]], a_i = √(1-z̄_i/λ²), squares to id - λ^{-2}S̄^t."""
    lam = parse_rational(lam)
    if lam <= 0:
        raise ValidationError("λ must be positive")
    table = VarTable.of(z1=order, z2=order, sb=1)
    zero, one = Series.zero(table), Series.one(table)
    z1, z2, sb = (Series.var(table, v) for v in ("z1", "z2", "sb"))
    inv2 = 1 / lam**2
    a1 = binomial_series(one - z1.scale(inv2), QQ(1, 2))
    a2 = binomial_series(one - z2.scale(inv2), QQ(1, 2))
    # √(λ² - z̄_i) = λ a_i
    off = -(sb.scale(1 / lam) * series_inv((a1 + a2).scale(lam)))
    R = SeriesMatrix([[a1, zero], [off, a2]], zero)
    target = SeriesMatrix([[one - z1.scale(inv2), zero], [-sb.scale(inv2), one - z2.scale(inv2)]], zero)
    return R @ R == target


def schur_closed_forms(values: Mapping[str, object]) -> dict[str, bool]:
    """All closed forms at ``values`` = {z1, z2, sbar, n, lam, order}."""
    n = int(values.get("n", 2))
    return {
        "power": schur_power_closed_form(values["z1"], values["z2"], values["sbar"], n),
        "power-symbolic": schur_power_symbolic(n),
        "sqrt": schur_sqrt_closed_form(values.get("lam", 1), int(values.get("order", 4))),
    }
