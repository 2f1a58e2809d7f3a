"""The eigenvalue reduction and the operator steps of the open-model proof chain."""

from kpverify.config import Config
from kpverify.core.identities import (
    bordered_trace_identities,
    lemma1_det_expansion,
    lemma1_product_identity,
    sample_points,
)
from kpverify.core.opcalc import conjugation_check, lambda_derivation_check, operator_moving_check
from .base import Check, all_hold

POINTS_PER_CASE = 20


def det_expansion() -> dict[str, bool]:
    return {f"M={M}": lemma1_det_expansion(M) for M in (1, 2, 3)}


def product_identity(seed: int) -> dict[str, bool]:
    out = {}
    for M in (1, 2, 3):
        points = sample_points(M + 1, POINTS_PER_CASE, seed + M)
        for k in range(1, M + 2):
            out[f"M={M} k={k}"] = all(lemma1_product_identity(M, k, p) for p in points)
    return out


def bordered() -> dict[str, bool]:
    out = {}
    for M in (1, 2):
        for name, ok in bordered_trace_identities(M).items():
            out[f"M={M} {name}"] = ok
    return out


def lambda_derivation() -> dict[str, bool]:
    return {
        f"M={M} k={k}": lambda_derivation_check(k, M, sminus_cap=6)
        for M in (1, 2, 3)
        for k in range(-7, 8)
    }


def build(config: Config) -> list[Check]:
    return [
        Check("det-expansion", r"the summation of $M+1$ terms",
              lambda: all_hold(det_expansion())),
        Check("product-identity", r"the product part in the integral",
              lambda: all_hold(product_identity(config.seed))),
        Check("bordered-traces", r"using the following expressions",
              lambda: all_hold(bordered())),
        Check("lambda-derivation", r"Now, observe that",
              lambda: all_hold(lambda_derivation())),
        Check("conjugation", r"First, using the conjugation",
              lambda: all_hold({f"M={M}": conjugation_check(M) for M in (1, 2)})),
        Check("operator-moving", r"move the differential operator",
              lambda: all_hold({f"M={M}": operator_moving_check(M) for M in (1, 2)})),
    ]
