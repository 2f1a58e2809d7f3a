from .weyl import WOperator
from .operators import (
    FIRST,
    apply_heisenberg,
    apply_virasoro,
    conjugate_by_S,
    constraint_operator,
    first_conjugated_form,
    heisenberg,
    printed_n0_conjugated_form,
    s_operator,
    virasoro,
)
from .constraints import (
    ConstraintResidual,
    basis_monomials,
    bracket_check,
    commutator_check,
    conjugation_checks,
    constraint_residuals,
    even_time_residuals,
    heisenberg_commutator_check,
    operators_agree,
    tau_relation_check,
)

__all__ = [
    "WOperator",
    "FIRST",
    "apply_heisenberg",
    "apply_virasoro",
    "conjugate_by_S",
    "constraint_operator",
    "first_conjugated_form",
    "heisenberg",
    "printed_n0_conjugated_form",
    "s_operator",
    "virasoro",
    "ConstraintResidual",
    "basis_monomials",
    "bracket_check",
    "commutator_check",
    "conjugation_checks",
    "constraint_residuals",
    "even_time_residuals",
    "heisenberg_commutator_check",
    "operators_agree",
    "tau_relation_check",
]
