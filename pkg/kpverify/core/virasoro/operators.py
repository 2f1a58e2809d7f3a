"""Heisenberg and Virasoro operators, the S operator and the constraint operators of τ^o."""

from sympy.polys.domains import QQ

from kpverify.models import RangeConvention
from kpverify.utils.errors import ValidationError
from kpverify.core.symfun import QPolynomial
from .weyl import WOperator

FIRST = "first"


def heisenberg(D: int, n: int) -> WOperator:
    """α̂_n: multiplication by q_{-n} for n < 0, n∂/∂q_n for n > 0."""
    if n == 0:
        raise ValidationError("α̂_0 is not defined")
    if n < 0:
        return WOperator.mult_q(D, -n)
    return WOperator.deriv_q(D, n, coeff=n)


def apply_heisenberg(n: int, f: QPolynomial) -> QPolynomial:
    return heisenberg(f.D, n).apply(f)


def _quadratic_range(m: int, convention: str) -> range:
    if convention == RangeConvention.CORRECTED:
        return range(1, 2 * m + 2)
    if convention == RangeConvention.AS_WRITTEN:
        return range(1, 2 * m - 2)
    raise ValidationError(f"Unknown range convention {convention!r}")


def virasoro(D: int, index: int, convention: str = RangeConvention.CORRECTED) -> WOperator:
    """L̂_index for even index; negative indices are L̂_{-2m-2}, non-negative ones L̂_{2m}.

    L̂_{-2m-2} = Σ_{i>0} q_{i+2m+2}α̂_i + ½Σ_i q_i q_{2m+2-i}, the quadratic range set by ``convention``;
    L̂_{2m} = Σ_{j>0} q_j α̂_{j+2m} + ½Σ_{0<j<2m} α̂_j α̂_{2m-j}.
    """
    if index % 2:
        raise ValidationError(f"Only even Virasoro indices are implemented, got {index}")
    op = WOperator.zero(D)
    if index < 0:
        m = (-index - 2) // 2
        for i in range(1, D - 2 * m - 1):
            op = op + WOperator.mult_q(D, i + 2 * m + 2) @ heisenberg(D, i)
        for i in _quadratic_range(m, convention):
            op = op + (WOperator.mult_q(D, i) @ WOperator.mult_q(D, 2 * m + 2 - i)).scale(QQ(1, 2))
        return op
    m = index // 2
    for j in range(1, D - 2 * m + 1):
        op = op + WOperator.mult_q(D, j) @ heisenberg(D, j + 2 * m)
    for j in range(1, 2 * m):
        op = op + (heisenberg(D, j) @ heisenberg(D, 2 * m - j)).scale(QQ(1, 2))
    return op


def apply_virasoro(index: int, f: QPolynomial, convention: str = RangeConvention.CORRECTED) -> QPolynomial:
    return virasoro(f.D, index, convention).apply(f)


def s_operator(D: int) -> WOperator:
    """S = Σ_k 2^k (q_{2k}/2k) ∂_s^k."""
    op = WOperator.zero(D)
    for k in range(1, D // 2 + 1):
        op = op + WOperator.mult_q(D, 2 * k) @ WOperator.deriv_s(D, k, coeff=QQ(2**k, 2 * k))
    return op


def constraint_operator(D: int, which, convention: str = RangeConvention.CORRECTED) -> WOperator:
    """``"first"``: L̂_{-2} - ∂_{q_1} + s.

    n >= 0: 2^{-n-1}L̂_{2n} - 2^{-n-1}α̂_{2n+3} + ∂_s^{n+1}s - ((n+1)/4)∂_s^n.
    """
    if which == FIRST:
        return virasoro(D, -2, convention) - WOperator.deriv_q(D, 1) + WOperator.mult_s(D)
    n = int(which)
    if n < 0:
        raise ValidationError(f"Constraint index must be non-negative, got {n}")
    half = QQ(1, 2 ** (n + 1))
    op = (virasoro(D, 2 * n, convention) - heisenberg(D, 2 * n + 3)).scale(half)
    op = op + WOperator.deriv_s(D, n + 1) @ WOperator.mult_s(D)
    lower = WOperator.deriv_s(D, n) if n else WOperator.identity(D)
    return op - lower.scale(QQ(n + 1, 4))


def conjugate_by_S(op: WOperator, S: WOperator = None) -> WOperator:
    """e^S·op·e^{-S}; S defaults to :func:`s_operator` at the bound of ``op``."""
    S = s_operator(op.D) if S is None else S
    return S.conjugate(op)


def first_conjugated_form(D: int, convention: str = RangeConvention.CORRECTED) -> WOperator:
    """L̂_{-2} - ∂_{q_1} + s + q_2."""
    return constraint_operator(D, FIRST, convention) + WOperator.mult_q(D, 2)


def printed_n0_conjugated_form(D: int, convention: str = RangeConvention.CORRECTED) -> WOperator:
    """½L̂_0 - ½α̂_3 + ∂_s s - ½, the n = 0 conjugated constraint as usually displayed."""
    op = (virasoro(D, 0, convention) - heisenberg(D, 3)).scale(QQ(1, 2))
    op = op + WOperator.deriv_s(D) @ WOperator.mult_s(D)
    return op - WOperator.identity(D, QQ(1, 2))
