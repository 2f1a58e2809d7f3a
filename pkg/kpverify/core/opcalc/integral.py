"""The complex Gaussian integral operator and the Weierstrass transform.

Both are operator exponentials of second-order derivations on polynomials:

    (1/2π)∫_C F(z, z̄) e^{s z̄/2} e^{-z z̄/2} [dz]  =  [exp(2∂_s∂_{s_-}) F(s, s_-)]|_{s_-=0}
    W_t[f](s)                                   =  exp(t∂_s²) f(s)
"""

from scipy.special import comb, factorial, factorial2
from sympy.polys.domains import QQ

from kpverify.utils.errors import DomainError, StructuralError
from kpverify.core.constants import S, S_MINUS, T
from kpverify.core.ring import Series, Var, VarTable
from .diffop import DiffOp, apply_diffop_exp


def moment_image(m: int, n: int):
    """Image of s_-^m s^n: 0 if m > n, else (2^m n!/(n-m)!, n-m)."""
    if m > n:
        return QQ(0), 0
    return QQ(2**m * int(factorial(n, exact=True)) // int(factorial(n - m, exact=True))), n - m


def complex_integral_op(
    F: Series, s: str = S, sminus: str = S_MINUS, allow_laurent: bool = False
) -> Series:
    """[exp(2∂_s∂_{s_-})·F]|_{s_-=0} on a series in (s, s_-) and spectator variables.

    With ``allow_laurent`` every monomial with a negative power of s maps to 0;
    the angular integral of z^{-n} z̄^m vanishes for n > 0.
    """
    table = F.table
    i_m = table.index(sminus)
    i_s = table.index(s)
    if table.mins[i_m] < 0:
        raise DomainError(f"{sminus} support is unbounded below; complex integral rejected")
    if any(e[i_s] < 0 for e in F.terms):
        if not allow_laurent:
            raise DomainError(
                f"Negative powers of {s} in the complex integral; enable allow_laurent_s to accept"
            )
        kept = {e: c for e, c in F.terms.items() if e[i_s] >= 0}
        F = Series(table, kept, F.domain)
    op = (DiffOp.d(s) @ DiffOp.d(sminus)).scale(2)
    if table.mins[i_s] < 0:
        polynomial = VarTable(Var(v.name, v.cap) if v.name == s else v for v in table.vars)
        return apply_diffop_exp(op, F.embed(polynomial)).at_zero(sminus).embed(table)
    return apply_diffop_exp(op, F).at_zero(sminus)


def complex_integral_by_moments(F: Series, s: str = S, sminus: str = S_MINUS) -> Series:
    """Monomial-by-monomial evaluation through the moment table; used as an oracle."""
    table = F.table
    i_m, i_s = table.index(sminus), table.index(s)
    out: dict = {}
    for e, c in F.terms.items():
        value, power = moment_image(e[i_m], e[i_s])
        if not value:
            continue
        ne = list(e)
        ne[i_m], ne[i_s] = 0, power
        ne = tuple(ne)
        out[ne] = out.get(ne, 0) + c * value
    return Series(table, out, F.domain)


def weierstrass(f: Series, direction: str = "forward", t: str = T, s: str = S) -> Series:
    """exp(±t∂_s²)·f; ``t`` must be a variable of f's table."""
    if direction not in ("forward", "inverse"):
        raise StructuralError(f"Unknown Weierstrass direction {direction!r}")
    if t not in f.table:
        raise StructuralError(f"Weierstrass parameter {t!r} missing from {f.table!r}")
    if f.table.mins[f.table.index(s)] < 0:
        raise DomainError("Weierstrass transform needs a polynomial in s")
    sign = 1 if direction == "forward" else -1
    coeff = Series.var(f.table, t, coeff=sign)
    return apply_diffop_exp(DiffOp.d(s, 2, coeff=coeff), f)


def weierstrass_gaussian_form(f: Series, t: str = T, s: str = S) -> Series:
    """(1/√(2π))∫ e^{-x²/2} f(√(2t)x + s) dx expanded with the Gaussian moments (2j-1)!!."""
    table = f.table
    i_s, i_t = table.index(s), table.index(t)
    out: dict = {}
    for e, c in f.terms.items():
        n = e[i_s]
        for j in range(n // 2 + 1):
            moment = int(factorial2(2 * j - 1, exact=True)) if j else 1
            weight = int(comb(n, 2 * j, exact=True)) * moment * 2**j
            ne = list(e)
            ne[i_s] = n - 2 * j
            ne[i_t] = e[i_t] + j
            if ne[i_t] > table.caps[i_t]:
                continue
            ne = tuple(ne)
            out[ne] = out.get(ne, 0) + c * weight
    return Series(table, out, f.domain)
