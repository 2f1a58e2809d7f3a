from .symbols import (
    GINIBRE,
    GINIBRE_CONJ,
    HERMITIAN,
    EntryPoly,
    EntrySymbol,
    Grading,
    entry_matrix,
    identity_matrix,
    scalar_matrix,
    trace_power_sum,
)
from .ensemble import Ensemble, GinibreEnsemble, HermitianEnsemble
from .expectation import (
    brute_force_contraction,
    count_pairings,
    ensure_feasible,
    estimate_pairings,
    expectation,
    iter_pairings,
    mean_value_check,
    monomial_poly,
)
from .symbolic import at_eigenvalues, common_denominator, divide_linear, symbolic_table

__all__ = [
    "GINIBRE",
    "GINIBRE_CONJ",
    "HERMITIAN",
    "EntryPoly",
    "EntrySymbol",
    "Grading",
    "entry_matrix",
    "identity_matrix",
    "scalar_matrix",
    "trace_power_sum",
    "Ensemble",
    "GinibreEnsemble",
    "HermitianEnsemble",
    "brute_force_contraction",
    "count_pairings",
    "ensure_feasible",
    "estimate_pairings",
    "expectation",
    "iter_pairings",
    "mean_value_check",
    "monomial_poly",
    "at_eigenvalues",
    "common_denominator",
    "divide_linear",
    "symbolic_table",
]
