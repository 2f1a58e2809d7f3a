"""Closed forms of the Schur-reduced complex matrix integral."""

from kpverify.config import Config
from kpverify.core.identities import schur_closed_forms
from .base import Check, all_hold

SERIES_ORDER = 4
SAMPLE = {"z1": "1/2", "z2": "1/3", "sbar": "2"}


def build(config: Config) -> list[Check]:
    lam = config.lambda_tuple()[0]

    def closed_forms():
        out = {}
        for n in range(1, 6):
            for name, ok in schur_closed_forms(dict(SAMPLE, n=n, lam=lam, order=SERIES_ORDER)).items():
                out[f"{name} n={n}"] = ok
        return out

    return [
        Check("schur-closed-forms", r"By a straightforward computation, we have",
              lambda: all_hold(closed_forms())),
    ]
