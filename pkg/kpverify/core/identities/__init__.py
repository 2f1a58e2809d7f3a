from .lemma import (
    bordered_trace_identities,
    e_var,
    lemma1_det_expansion,
    lemma1_product_identity,
    sample_points,
)
from .closed_forms import (
    schur_closed_forms,
    schur_power_closed_form,
    schur_power_symbolic,
    schur_sqrt_closed_form,
    weierstrass_injectivity,
)

__all__ = [
    "bordered_trace_identities",
    "e_var",
    "lemma1_det_expansion",
    "lemma1_product_identity",
    "sample_points",
    "schur_closed_forms",
    "schur_power_closed_form",
    "schur_power_symbolic",
    "schur_sqrt_closed_form",
    "weierstrass_injectivity",
]
