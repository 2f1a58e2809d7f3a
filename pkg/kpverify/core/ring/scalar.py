"""Exact scalars.

Scalars are elements of sympy's ``QQ`` (rationals) or ``QQ_I`` (Gaussian
rationals). Arithmetic is native to those domains; this module only adds
coercion between the two, exact square roots and the canonical
``"p/q"`` / ``"p/q+r/t*i"`` string form.
"""

import re
from typing import Union

from sympy import integer_nthroot
from sympy.polys.domains import QQ, QQ_I
from sympy.polys.domains.gaussiandomains import GaussianElement

from kpverify.utils.errors import DomainError, ValidationError

Domain = type(QQ)
Scalar = Union[int, "QQ.dtype", GaussianElement]

_RATIONAL = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")
_GAUSSIAN = re.compile(r"^\s*(.+?)\s*([+-])\s*(\d+(?:/\d+)?)\s*\*\s*i\s*$")


def is_complex(c) -> bool:
    return isinstance(c, GaussianElement)


def domain_of(c):
    return QQ_I if is_complex(c) else QQ


def unify(*domains):
    """QQ_I absorbs QQ."""
    return QQ_I if any(d == QQ_I for d in domains) else QQ


def coerce(c, K=QQ):
    """Convert an int, rational or Gaussian rational into domain ``K``."""
    if K == QQ_I:
        if is_complex(c):
            return c
        return QQ_I.dtype(QQ.convert(c), QQ.zero)
    if is_complex(c):
        if c.y != 0:
            raise DomainError(f"Complex value {format_scalar(c)} in a rational computation")
        return c.x
    return QQ.convert(c)


def rational(p: int, q: int = 1):
    if q == 0:
        raise DomainError("Zero denominator")
    return QQ(p, q)


def gaussian(re_part, im_part=0):
    return QQ_I.dtype(QQ.convert(re_part), QQ.convert(im_part))


def real_part(c):
    return c.x if is_complex(c) else QQ.convert(c)


def imag_part(c):
    return c.y if is_complex(c) else QQ.zero


def is_zero(c) -> bool:
    return not c


def sqrt_exact(c, K=QQ):
    """Exact square root of a non-negative rational square, else DomainError."""
    c = coerce(c, QQ) if not is_complex(c) or c.y == 0 else None
    if c is None:
        raise DomainError("Square root of a non-real constant term is not supported")
    if c < 0:
        raise DomainError(f"Square root of negative constant {format_scalar(c)}")
    num, den = QQ.numer(c), QQ.denom(c)
    rn, exact_n = integer_nthroot(int(num), 2)
    rd, exact_d = integer_nthroot(int(den), 2)
    if not (exact_n and exact_d):
        raise DomainError(f"Constant term {format_scalar(c)} has no exact rational square root")
    return coerce(QQ(rn, rd), K)


def _format_rational(c) -> str:
    num, den = int(QQ.numer(c)), int(QQ.denom(c))
    return str(num) if den == 1 else f"{num}/{den}"


def format_scalar(c) -> str:
    """Canonical string: "p/q" for rationals, "p/q+r/t*i" for Gaussian rationals."""
    if is_complex(c):
        re_s = _format_rational(c.x)
        if c.y == 0:
            return re_s
        im = c.y
        sign = "-" if im < 0 else "+"
        return f"{re_s}{sign}{_format_rational(abs(im))}*i"
    return _format_rational(QQ.convert(c))


def parse_rational(text) -> "QQ.dtype":
    if not isinstance(text, str):
        return QQ.convert(text)
    m = _RATIONAL.match(text)
    if not m:
        raise ValidationError(f"Not a rational: {text!r}")
    den = int(m.group(2)) if m.group(2) else 1
    if den == 0:
        raise ValidationError(f"Zero denominator in {text!r}")
    return QQ(int(m.group(1)), den)


def parse_scalar(text: str):
    """Inverse of format_scalar."""
    m = _GAUSSIAN.match(text)
    if m:
        im = parse_rational(m.group(3))
        if m.group(2) == "-":
            im = -im
        return gaussian(parse_rational(m.group(1)), im)
    return parse_rational(text)


def to_float(c) -> float:
    c = real_part(c)
    return int(QQ.numer(c)) / int(QQ.denom(c))


I_UNIT = QQ_I.dtype(QQ.zero, QQ.one)
