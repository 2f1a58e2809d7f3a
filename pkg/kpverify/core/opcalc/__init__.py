from .diffop import (
    DiffOp,
    Letter,
    apply_diffop_exp,
    apply_symbol,
    apply_word,
    operator_from_symbol,
)
from .integral import (
    complex_integral_by_moments,
    complex_integral_op,
    moment_image,
    weierstrass,
    weierstrass_gaussian_form,
)
from .checks import (
    conjugation_check,
    lambda_derivation_check,
    lambda_derivation_operator,
    operator_moving_check,
    trace_power,
)

__all__ = [
    "DiffOp",
    "Letter",
    "apply_diffop_exp",
    "apply_symbol",
    "apply_word",
    "operator_from_symbol",
    "complex_integral_by_moments",
    "complex_integral_op",
    "moment_image",
    "weierstrass",
    "weierstrass_gaussian_form",
    "conjugation_check",
    "lambda_derivation_check",
    "lambda_derivation_operator",
    "operator_moving_check",
    "trace_power",
]
