"""Symbolic-λ bookkeeping.

Hermitian pair values in symbolic mode are monomials in x_i = 1/λ_i and
u_ij = 1/(x_i + x_j). Results therefore live over the denominator family
{x_i + x_j}; this module evaluates them at numeric λ and clears the family
by exact division, without general polynomial gcd.
"""

from typing import Optional, Sequence

from sympy.polys.domains import QQ

from kpverify.core.constants import u_var, x_var
from kpverify.core.ring import Series, Var, VarTable


def symbolic_table(M: int, x_cap: int, u_cap: int, *extra: Var) -> VarTable:
    xs = [Var(x_var(i), x_cap) for i in range(1, M + 1)]
    us = [Var(u_var(i, j), u_cap) for i in range(1, M + 1) for j in range(i + 1, M + 1)]
    return VarTable(list(extra) + xs + us)


def at_eigenvalues(f: Series, lam: Sequence) -> Series:
    """Substitute x_i = 1/λ_i and u_ij = λ_iλ_j/(λ_i + λ_j)."""
    lam = [QQ.convert(v) for v in lam]
    M = len(lam)
    for i in range(1, M + 1):
        for j in range(i + 1, M + 1):
            name = u_var(i, j)
            if name in f.table:
                a, b = lam[i - 1], lam[j - 1]
                f = f.substitute(name, a * b / (a + b))
    for i in range(1, M + 1):
        name = x_var(i)
        if name in f.table:
            f = f.substitute(name, 1 / lam[i - 1])
    return f


def divide_linear(num: Series, a: str, b: str) -> Optional[Series]:
    """num / (a + b) when the division is exact, else None (synthetic division in a)."""
    if num.is_zero():
        return num
    top = num.max_degree(a)
    if not top:
        return None
    coeffs = [num.slice(a, k) for k in range(top + 1)]
    xb = Series.var(num.table, b)
    quotient: list[Series] = [None] * top
    rem = coeffs[top]
    for k in range(top, 0, -1):
        quotient[k - 1] = rem
        rem = coeffs[k - 1] - xb * rem
    if not rem.is_zero():
        return None
    out = Series.zero(num.table, num.domain)
    for k, q in enumerate(quotient):
        out = out + q.shift(a, k)
    return out


def common_denominator(f: Series, M: int) -> tuple[Series, dict[tuple[int, int], int]]:
    """Write f = N(x) / ∏(x_i + x_j)^{d_ij} with each d_ij as small as exact division allows.

    The table of ``f`` must leave enough x-room for the numerator.
    """
    pairs = [(i, j) for i in range(1, M + 1) for j in range(i + 1, M + 1)]
    pairs = [p for p in pairs if u_var(*p) in f.table]
    d = {p: f.max_degree(u_var(*p)) or 0 for p in pairs}
    idx = {p: f.table.index(u_var(*p)) for p in pairs}
    table = f.table
    binom = {p: Series.var(table, x_var(p[0])) + Series.var(table, x_var(p[1])) for p in pairs}
    num = Series.zero(table, f.domain)
    for e, c in f.terms.items():
        stripped = list(e)
        for p in pairs:
            stripped[idx[p]] = 0
        term = Series(table, {tuple(stripped): c}, f.domain)
        for p in pairs:
            missing = d[p] - e[idx[p]]
            if missing:
                term = term * binom[p] ** missing
        num = num + term
    for p in pairs:
        while d[p] > 0:
            q = divide_linear(num, x_var(p[0]), x_var(p[1]))
            if q is None:
                break
            num, d[p] = q, d[p] - 1
    return num, {p: k for p, k in d.items() if k}
