"""exp, log, inverse, square root and binomial powers of truncated series.

Every function reduces to composing a power series with a nilpotent r
(no constant term; negative exponents only when some variable divides every
term), summing r^k until the power vanishes or the nilpotency bound is reached.
"""

from typing import Callable

from sympy.polys.domains import QQ

from kpverify.utils.errors import DomainError
from .scalar import coerce, format_scalar, sqrt_exact
from .series import Series, nilpotency_bound


def _require_nilpotent(r: Series, what: str):
    for e in r.terms:
        if not any(e):
            raise DomainError(f"{what}: argument has a constant part")
    try:
        nilpotency_bound(r.table, r.terms.keys())
    except DomainError as e:
        raise DomainError(f"{what}: {e}") from None


def compose_nilpotent(r: Series, coefficient: Callable[[int], object]) -> Series:
    """Σ_k coefficient(k)·r^k for nilpotent r, exact up to the caps of r."""
    _require_nilpotent(r, "power series")
    K = r.domain
    result = Series.const(r.table, coefficient(0), K)
    if r.is_zero():
        return result
    bound = nilpotency_bound(r.table, r.terms.keys())
    power = Series.one(r.table, K)
    for k in range(1, bound + 1):
        power = power * r
        if power.is_zero():
            break
        c = coefficient(k)
        if c:
            result = result + power.scale(c)
    return result


def _split_constant(a: Series, what: str):
    c = a.constant_term()
    if not c:
        raise DomainError(f"{what}: constant term must be non-zero")
    rest = a.without_constant()
    r = rest.scale(coerce(1, a.domain) / c)
    _require_nilpotent(r, what)
    return c, r


def series_exp(a: Series) -> Series:
    if a.constant_term():
        raise DomainError(
            f"exp: constant term {format_scalar(a.constant_term())} is not zero"
        )
    factorial = [QQ(1)]

    def coeff(k):
        while len(factorial) <= k:
            factorial.append(factorial[-1] / len(factorial))
        return factorial[k]

    return compose_nilpotent(a, coeff)


def series_log(a: Series, drop_constant: bool = False) -> Series:
    """log(a) for a series with a non-zero constant term c.

    log(a) = log(c) + log(a/c); log(c) is rational only for c = 1, so any
    other c raises unless ``drop_constant`` asks for log(a/c) instead.
    """
    c, r = _split_constant(a, "log")
    if c != coerce(1, a.domain) and not drop_constant:
        raise DomainError(
            f"log: constant term {format_scalar(c)} must be exactly 1 (log c is not rational)"
        )
    return compose_nilpotent(r, lambda k: QQ(0) if k == 0 else QQ((-1) ** (k + 1), k))


def series_inv(a: Series) -> Series:
    c, r = _split_constant(a, "inv")
    inv_c = coerce(1, a.domain) / c
    return compose_nilpotent(r, lambda k: QQ((-1) ** k)).scale(inv_c)


def binomial_coefficients(alpha) -> Callable[[int], object]:
    """k -> binom(alpha, k), computed incrementally, for rational alpha."""
    alpha = QQ.convert(alpha)
    cache = [QQ(1)]

    def coeff(k):
        while len(cache) <= k:
            j = len(cache)
            cache.append(cache[-1] * (alpha - j + 1) / j)
        return cache[k]

    return coeff


def binomial_series(a: Series, alpha) -> Series:
    """(1 + r)^alpha for a series with constant term exactly 1."""
    c = a.constant_term()
    if c != coerce(1, a.domain):
        raise DomainError(f"binomial_series: constant term {format_scalar(c)} must be 1")
    return compose_nilpotent(a.without_constant(), binomial_coefficients(alpha))


def series_sqrt(a: Series) -> Series:
    c, r = _split_constant(a, "sqrt")
    root = sqrt_exact(c, a.domain)
    return compose_nilpotent(r, binomial_coefficients(QQ(1, 2))).scale(root)


ELEMENTARY = {
    "exp": series_exp,
    "log": series_log,
    "inv": series_inv,
    "sqrt": series_sqrt,
}


def series_elem(a: Series, f: str) -> Series:
    if f not in ELEMENTARY:
        raise DomainError(f"Unknown elementary function {f!r}; expected one of {sorted(ELEMENTARY)}")
    return ELEMENTARY[f](a)
