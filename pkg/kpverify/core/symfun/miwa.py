from math import factorial
from typing import Sequence

from sympy.polys.domains import QQ

from kpverify.utils.errors import DomainError, ValidationError


def _checked(lam: Sequence) -> list:
    values = [QQ.convert(v) for v in lam]
    if not values:
        raise ValidationError("Empty eigenvalue tuple")
    if any(not v for v in values):
        raise DomainError("Zero eigenvalue has no Miwa times")
    return values


def power_sum(lam: Sequence, k: int):
    """q_k = tr Λ^{-k} (k may be any non-zero integer)."""
    return sum((v ** (-k) for v in _checked(lam)), QQ(0))


def power_sums(lam: Sequence, D: int) -> list:
    return [power_sum(lam, k) for k in range(1, D + 1)]


def miwa_times(lam: Sequence, which: str, index: int):
    """s_i = 2^i i! tr Λ^{-2i-2}, q_k = tr Λ^{-k}."""
    if which == "s":
        if index < 0:
            raise ValidationError(f"s_i needs i >= 0, got {index}")
        return QQ(2**index * factorial(index)) * power_sum(lam, 2 * index + 2)
    if which == "q":
        if index < 1:
            raise ValidationError(f"q_k needs k >= 1, got {index}")
        return power_sum(lam, index)
    raise ValidationError(f"Unknown Miwa family {which!r}; expected 's' or 'q'")
