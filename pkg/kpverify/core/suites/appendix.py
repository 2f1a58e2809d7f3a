"""Complex Gaussian moments and the Weierstrass transform."""

from kpverify.config import Config
from kpverify.core.constants import S, S_MINUS, T
from kpverify.core.identities import weierstrass_injectivity
from kpverify.core.opcalc import (
    complex_integral_by_moments,
    complex_integral_op,
    moment_image,
    weierstrass,
    weierstrass_gaussian_form,
)
from kpverify.core.ring import Series, Var, VarTable
from .base import Check, all_hold

MOMENT_CAP = 8
INVERSE_CAP = 12
GAUSSIAN_FORM_CAP = 8


def complex_moments() -> dict[str, bool]:
    table = VarTable.of(**{S: MOMENT_CAP, S_MINUS: MOMENT_CAP})
    out = {}
    for m in range(MOMENT_CAP + 1):
        for n in range(MOMENT_CAP + 1):
            f = Series.monomial(table, **{S: n, S_MINUS: m})
            out[f"sm^{m} s^{n}"] = complex_integral_op(f) == complex_integral_by_moments(f)
    return out


def laurent_moments() -> dict[str, bool]:
    """Negative powers of s integrate to zero; the polynomial part is untouched."""
    table = VarTable([Var(S, MOMENT_CAP, -MOMENT_CAP, True), Var(S_MINUS, MOMENT_CAP)])
    out = {}
    for m in range(MOMENT_CAP + 1):
        for n in range(1, MOMENT_CAP + 1):
            f = Series.monomial(table, **{S: -n, S_MINUS: m})
            out[f"sm^{m} s^-{n}"] = complex_integral_op(f, allow_laurent=True).is_zero()
    mixed = Series.monomial(table, **{S: 2, S_MINUS: 1}) + Series.monomial(table, **{S: -1, S_MINUS: 1})
    out["mixed"] = complex_integral_op(mixed, allow_laurent=True) == Series.monomial(table, 4, **{S: 1})
    return out


def diagonal_moments() -> dict[str, bool]:
    """(1/2π)∫|z|^{2n} e^{-|z|²/2} = 2^n n!."""
    out = {}
    factorial = 1
    for n in range(MOMENT_CAP + 1):
        factorial *= max(n, 1)
        value, power = moment_image(n, n)
        out[f"n={n}"] = power == 0 and value == 2**n * factorial
    return out


def weierstrass_round_trip() -> dict[str, bool]:
    table = VarTable.of(**{S: INVERSE_CAP, T: INVERSE_CAP})
    out = {}
    for n in range(INVERSE_CAP + 1):
        f = Series.var(table, S, n)
        out[f"s^{n}"] = weierstrass(weierstrass(f), "inverse") == f
    return out


def weierstrass_forms() -> dict[str, bool]:
    table = VarTable.of(**{S: GAUSSIAN_FORM_CAP, T: GAUSSIAN_FORM_CAP})
    out = {}
    for n in range(GAUSSIAN_FORM_CAP + 1):
        f = Series.var(table, S, n)
        out[f"s^{n}"] = weierstrass(f) == weierstrass_gaussian_form(f)
    return out


def build(config: Config) -> list[Check]:
    checks = [
        Check("complex-integral-moments", r"Let $u$ be a formal parameter",
              lambda: all_hold(complex_moments())),
        Check("complex-integral-diagonal", r"If $m=n$, the above integral is equal to $(2\pi) 2^nn!$",
              lambda: all_hold(diagonal_moments())),
        Check("weierstrass-round-trip", r"We can define the inverse Weierstrass transform",
              lambda: all_hold(weierstrass_round_trip())),
        Check("weierstrass-gaussian-form", r"also known as the {\bf Weierstrass transform}",
              lambda: all_hold(weierstrass_forms())),
        Check("weierstrass-injectivity", r"then the series $F(y)$ is $0$",
              lambda: all_hold({f"degree<={INVERSE_CAP}": weierstrass_injectivity(INVERSE_CAP, config.seed)})),
    ]
    if config.allow_laurent_s:
        checks.append(Check("complex-integral-laurent", r"Now, for $m>n$, we have",
                            lambda: all_hold(laurent_moments())))
    return checks
