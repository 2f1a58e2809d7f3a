from .result import PipelineResult, common_region, region_compare, region_digest, region_terms
from .hermitian import (
    bt_proportionality,
    eval_BT_remark,
    eval_IMe_ext,
    eval_Zo2,
    eval_ZN,
    zo2_operator_image,
)
from .extended import GENERAL_S, SUBSTITUTED, check_stolambda, eval_ZN_ext, flow_equation_check, pde_check

__all__ = [
    "PipelineResult",
    "common_region",
    "region_compare",
    "region_digest",
    "region_terms",
    "bt_proportionality",
    "eval_BT_remark",
    "eval_IMe_ext",
    "eval_Zo2",
    "eval_ZN",
    "zo2_operator_image",
    "GENERAL_S",
    "SUBSTITUTED",
    "check_stolambda",
    "eval_ZN_ext",
    "flow_equation_check",
    "pde_check",
]
