from .rules import NumericIntegral, hermite_grid, integrate_box, integrate_gaussian, legendre_box
from .checks import (
    INVARIANTS,
    ONE,
    TR_H2,
    TR_H4,
    TR_H_SQUARED,
    Comparison,
    complex_vector_gaussian_check,
    eigenvalue_integral,
    hciz_check,
    hermitian_from_coordinates,
    hermitian_integral,
    normalization_check,
    normalization_constant,
    vandermonde,
    wick_bridge_check,
)

__all__ = [
    "NumericIntegral",
    "hermite_grid",
    "integrate_box",
    "integrate_gaussian",
    "legendre_box",
    "INVARIANTS",
    "ONE",
    "TR_H2",
    "TR_H4",
    "TR_H_SQUARED",
    "Comparison",
    "complex_vector_gaussian_check",
    "eigenvalue_integral",
    "hciz_check",
    "hermitian_from_coordinates",
    "hermitian_integral",
    "normalization_check",
    "normalization_constant",
    "vandermonde",
    "wick_bridge_check",
]
