"""Constraint residuals of an extracted τ and the operator identities behind them."""

from dataclasses import dataclass
from typing import Iterable, Sequence

from sympy.polys.domains import QQ

from kpverify.config import LOG
from kpverify.models import RangeConvention
from kpverify.utils.errors import ValidationError
from kpverify.core.ring import format_scalar
from kpverify.core.symfun import QPolynomial, key_of, key_weight, partitions_of
from .operators import (
    FIRST,
    conjugate_by_S,
    constraint_operator,
    first_conjugated_form,
    heisenberg,
    printed_n0_conjugated_form,
    s_operator,
    virasoro,
)
from .weyl import WOperator


@dataclass
class ConstraintResidual:
    constraint: str
    convention: str
    complete_weight: int
    residual: QPolynomial

    def vanishes(self) -> bool:
        return self.residual.is_zero()

    def to_json(self) -> dict:
        return {
            "constraint": self.constraint,
            "convention": self.convention,
            "complete_weight": self.complete_weight,
            "residual_terms": self.residual.to_json(),
        }


def _residual(name: str, convention: str, op: WOperator, tau: QPolynomial) -> ConstraintResidual:
    complete = tau.D - max(0, op.max_lowering())
    residual = op.apply(tau).restrict(complete) if complete >= 0 else QPolynomial.zero(tau.D)
    return ConstraintResidual(name, str(convention), complete, residual)


def constraint_residuals(
    tau: QPolynomial,
    which: Iterable = (FIRST, 0, 1),
    convention: str = RangeConvention.CORRECTED,
) -> list[ConstraintResidual]:
    """Residuals of the listed constraints on their complete weight ranges."""
    out = []
    for w in which:
        name = FIRST if w == FIRST else f"n={int(w)}"
        out.append(_residual(name, convention, constraint_operator(tau.D, w, convention), tau))
    return out


def even_time_residuals(tau: QPolynomial) -> list[ConstraintResidual]:
    """∂τ/∂q_{2k} for every even time inside the weight bound."""
    return [
        _residual(f"d/dq{2 * k}", "-", WOperator.deriv_q(tau.D, 2 * k), tau)
        for k in range(1, tau.D // 2 + 1)
    ]


def basis_monomials(D: int, weight: int) -> list[QPolynomial]:
    """Every (q, s) monomial of weight <= ``weight`` inside the bound D."""
    out = []
    for w in range(weight + 1):
        for a in range(w + 1):
            for mu in partitions_of(w - a):
                out.append(QPolynomial(D, {key_of(D, mu, a): 1}))
    return out


def operators_agree(lhs: WOperator, rhs: WOperator, weight: int) -> bool:
    """Equal action on every monomial of weight <= ``weight``, compared up to that weight."""
    for f in basis_monomials(lhs.D, weight):
        if lhs.apply(f).restrict(weight) != rhs.apply(f).restrict(weight):
            LOG.debug(f"operators differ on {f.pretty()}")
            return False
    return True


def _margin(*indices: int) -> int:
    return 2 * max((abs(i) for i in indices), default=0) + 4


def commutator_check(n: int, k: int, D: int, convention: str = RangeConvention.CORRECTED) -> bool:
    """[q_n, L̂_k] = -n α̂_{k-n} on monomials of weight <= D."""
    if k - n == 0:
        raise ValidationError("α̂_0 would be needed; the pair is excluded")
    bound = D + _margin(n, k)
    lhs = WOperator.mult_q(bound, n).commutator(virasoro(bound, k, convention))
    rhs = heisenberg(bound, k - n).scale(-n)
    return operators_agree(lhs, rhs, D)


def bracket_check(a: int, b: int, D: int, convention: str = RangeConvention.CORRECTED) -> bool:
    """[L̂_a, L̂_b] = (a - b)L̂_{a+b} + δ_{a+b,0}(a³ - a)/12 on monomials of weight <= D."""
    bound = D + _margin(a, b, a + b)
    lhs = virasoro(bound, a, convention).commutator(virasoro(bound, b, convention))
    rhs = virasoro(bound, a + b, convention).scale(a - b)
    if a + b == 0:
        rhs = rhs + WOperator.identity(bound, QQ(a**3 - a, 12))
    return operators_agree(lhs, rhs, D)


def conjugation_checks(D: int, convention: str = RangeConvention.CORRECTED) -> dict[str, bool]:
    """The e^S conjugations of the first and n = 0 constraints.

    The n = 0 conjugate differs from its displayed form by exactly ¼·id.
    """
    bound = D + _margin(3)
    first = conjugate_by_S(constraint_operator(bound, FIRST, convention))
    n0 = conjugate_by_S(constraint_operator(bound, 0, convention))
    offset = n0 - printed_n0_conjugated_form(bound, convention)
    zero_S = conjugate_by_S(constraint_operator(bound, FIRST, convention), WOperator.zero(bound))
    return {
        "first": operators_agree(first, first_conjugated_form(bound, convention), D),
        "n0-offset-quarter": operators_agree(offset, WOperator.identity(bound, QQ(1, 4)), D),
        "zero-S": operators_agree(zero_S, constraint_operator(bound, FIRST, convention), D),
    }


def heisenberg_commutator_check(D: int, pairs: Sequence[tuple[int, int]]) -> bool:
    """[α̂_m, α̂_n] = m δ_{m,-n} on monomials of weight <= D."""
    for m, n in pairs:
        bound = D + _margin(m, n)
        lhs = heisenberg(bound, m).commutator(heisenberg(bound, n))
        rhs = WOperator.identity(bound, m if m == -n else 0)
        if not operators_agree(lhs, rhs, D):
            return False
    return True


def tau_relation_check(
    tau_tilde: QPolynomial, tau_o: QPolynomial, weight: int, s_cap: int
) -> tuple[bool, list[str]]:
    """τ^o = e^{-S}τ̃ on weights <= ``weight`` and s powers <= ``s_cap``."""
    if tau_tilde.D != tau_o.D:
        raise ValidationError("τ̃ and τ^o must share a weight bound")
    image = s_operator(tau_tilde.D).scale(-1).exp_apply(tau_tilde)
    mismatches = []
    for key in sorted(set(image.terms) | set(tau_o.terms)):
        if key_weight(key) > weight or key[0] > s_cap:
            continue
        a, b = image.terms.get(key, QQ(0)), tau_o.terms.get(key, QQ(0))
        if a != b:
            mismatches.append(f"{QPolynomial(image.D, {key: 1}).pretty()}: {format_scalar(a)} vs {format_scalar(b)}")
    return not mismatches, mismatches
