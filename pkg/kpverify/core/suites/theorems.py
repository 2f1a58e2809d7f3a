"""Cross-model equalities: the extended Kontsevich-Penner model and the open partition function."""

from functools import reduce

from sympy.polys.domains import QQ

from kpverify.config import Config
from kpverify.models import CheckOutcome
from kpverify.core.constants import EPS
from kpverify.core.pipelines import (
    SUBSTITUTED,
    bt_proportionality,
    check_stolambda,
    common_region,
    eval_BT_remark,
    eval_IMe_ext,
    eval_ZN,
    eval_ZN_ext,
    eval_Zo2,
    flow_equation_check,
    region_compare,
    region_digest,
    zo2_operator_image,
)
from kpverify.core.ring import format_scalar
from kpverify.core.wick import mean_value_check
from kpverify.utils.tools import digest
from .base import Check, all_hold, compared, passed

KNOWN_ZN = {0: QQ(5, 24), 1: QQ(41, 24)}
PDE_ORDERS = (1, 2, 3)
THEOREM1_CASES = ((1, 1), (2, 1), (1, 2))
THEOREM2_SIZES = (1, 2)
# depth used for the M = 2 cases when the configured depth is larger
MATRIX_PAIR_DEPTH = 4


def case_lambda(config: Config, M: int) -> tuple:
    """The first M configured eigenvalues, padded with λ + 1/2, λ + 1, ... when fewer are configured."""
    lam = config.lambda_tuple()[:M]
    pad = tuple(lam[-1] + QQ(k, 2) for k in range(1, M - len(lam) + 1))
    return lam + pad


def case_depth(config: Config, M: int) -> int:
    return config.depth if M == 1 else min(config.depth, MATRIX_PAIR_DEPTH)


def _compare_cases(pairs: dict) -> CheckOutcome:
    """Compare each (lhs, rhs) pair on its own common region; mismatches carry the case label."""
    mismatches, lhs, rhs, regions = [], [], [], []
    for label, (a, b) in pairs.items():
        region = common_region(a.region, b.region)
        _, found = region_compare(a.series, b.series, region)
        mismatches += [f"{label} {m}" for m in found]
        lhs.append(region_digest(a.series, region))
        rhs.append(region_digest(b.series, region))
        regions.append(region)
    return compared(
        (not mismatches, mismatches),
        reduce(common_region, regions),
        digest(lhs),
        digest(rhs),
    )


def zo2_against_operator_image(config: Config):
    sizes = sorted(set(THEOREM2_SIZES) | {config.matrix_dim})
    pairs = {}
    for M in sizes:
        lam, D = case_lambda(config, M), case_depth(config, M)
        zo2 = eval_Zo2(M, lam, D, config.s_cap, config.sminus_cap, config.pairing_budget)
        ime = eval_IMe_ext(M, lam, D, config.s_cap + D // 2, config.pairing_budget)
        pairs[f"M={M}"] = (zo2, zo2_operator_image(ime))
    return _compare_cases(pairs)


def bt_against_zo2(config: Config):
    lam = config.lambda_tuple()[:1]
    D = config.depth
    bt = eval_BT_remark(1, lam, D, config.s_cap, config.sminus_cap, config.pairing_budget)
    zo2 = eval_Zo2(1, lam, D, config.s_cap, config.sminus_cap, config.pairing_budget)
    return bt_proportionality(bt, zo2)


def zn_against_extended(config: Config):
    configured = (config.matrix_dim, max(config.penner_power, 1))
    pairs = {}
    for M, N in sorted(set(THEOREM1_CASES) | {configured}):
        lam, D = case_lambda(config, M), case_depth(config, M)
        zn = eval_ZN(M, N, lam, D, config.pairing_budget)
        ext = eval_ZN_ext(M, N, lam, D, SUBSTITUTED, budget=config.pairing_budget)
        pairs[f"M={M} N={N}"] = (zn, ext)
    return _compare_cases(pairs)


def known_zn_coefficients(config: Config):
    """ε³ coefficients of Z_N at M = 1, λ = 1."""
    found = {N: eval_ZN(1, N, (1,), 3, config.pairing_budget).series.coeff(**{EPS: 3}) for N in KNOWN_ZN}
    detail = ", ".join(f"N={N}: {format_scalar(v)}" for N, v in found.items())
    return passed(found == KNOWN_ZN, detail)


def pde_system(config: Config):
    lam = config.lambda_tuple()[:1]
    mismatches = []
    for n in PDE_ORDERS:
        _, found = flow_equation_check(1, 1, lam, config.depth, n, config.pairing_budget)
        mismatches += [f"s_{n}: {m}" for m in found]
    return compared((not mismatches, mismatches))


def stolambda(config: Config):
    lam = config.lambda_tuple()
    first = lam[:1]
    return all_hold({
        "formal order 8": check_stolambda(len(lam), 1, lam, 8, "formal"),
        "concrete M=1 N=1": check_stolambda(1, 1, first, 4, "concrete"),
        "concrete M=1 N=2": check_stolambda(1, 2, first, 4, "concrete"),
    })


def build_theorem2(config: Config) -> list[Check]:
    return [
        Check("zo2-operator-image", r"\det\sqrt{\Lambda^2-2\partial_s}",
              lambda: zo2_against_operator_image(config)),
        Check("bt-proportional", r"the authors added the imaginary number",
              lambda: bt_against_zo2(config)),
    ]


def build_theorem1(config: Config) -> list[Check]:
    return [
        Check("zn-equals-extended", r"For the Kontsevich-Penner model $Z_N$ and the model $\ZZ_N^{o,ext}$ with $N\geq 1$, we have",
              lambda: zn_against_extended(config)),
        Check("zn-known-coefficients", r"closely related to the following Kontsevich-Penner model",
              lambda: known_zn_coefficients(config)),
        Check("ginibre-mean-value", r"there is an obvious cancellation",
              lambda: all_hold({"Z-only degree<=6": mean_value_check(max(config.penner_power, 1), 6)})),
        Check("stolambda", r"which gives us the equality",
              lambda: stolambda(config)),
        Check("s-time-pde", r"is uniquely determined by the equations",
              lambda: pde_system(config)),
    ]
