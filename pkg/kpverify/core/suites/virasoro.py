"""Virasoro constraints on the τ extracted from the open-model pipelines."""

import threading
from typing import Callable, Optional

from kpverify.config import Config, TRACE_LOG
from kpverify.models import CheckOutcome, RangeConvention, SuiteName
from kpverify.core.pipelines import eval_IMe_ext, eval_Zo2
from kpverify.core.symfun import QPolynomial, extract_q_polynomial
from kpverify.core.virasoro import (
    FIRST,
    bracket_check,
    commutator_check,
    conjugation_checks,
    constraint_residuals,
    even_time_residuals,
    heisenberg_commutator_check,
    tau_relation_check,
)
from .base import Check, all_hold, compared, passed

COMMUTATOR_PAIRS = ((1, -2), (1, 2), (2, -2), (1, 0), (3, 2), (1, 4))
BRACKET_INDICES = (-2, 0, 2, 4)
HEISENBERG_PAIRS = ((1, -1), (2, -2), (3, -3), (1, 2), (-1, -3))
CONJUGATION_WEIGHT = 5
CONSTRAINTS = (FIRST, 0, 1)


class _Once:
    """Thread-safe lazily computed value shared by several checks."""

    def __init__(self, fn: Callable[[], object]):
        self._fn = fn
        self._lock = threading.Lock()
        self._done = False
        self._value: Optional[object] = None

    def get(self):
        with self._lock:
            if not self._done:
                self._value = self._fn()
                self._done = True
            return self._value


def _extract(config: Config, model: str) -> QPolynomial:
    D = config.virasoro_weight
    budget = config.pairing_budget
    if model == "ime":
        def pipeline(lam):
            return eval_IMe_ext(D, lam, D, D, budget).series
    else:
        def pipeline(lam):
            return eval_Zo2(D, lam, D, D, None, budget).series
    TRACE_LOG.info(SuiteName.VIRASORO, f"extracting τ from {model} at weight {D}", model=model)
    return extract_q_polynomial(
        pipeline,
        D,
        D,
        seed=config.seed,
        retries=config.extraction_retries,
        held_out=config.held_out_tuples,
    )


def _residual_outcome(residuals) -> CheckOutcome:
    failing = [r for r in residuals if not r.vanishes()]
    detail = "; ".join(
        f"{r.constraint} (weight<={r.complete_weight}): {r.residual.pretty()}" for r in failing
    ) or f"{len(residuals)} residuals vanish"
    return passed(not failing, detail)


def _convention_record(tau: QPolynomial, configured: str):
    annihilating = [
        str(c) for c in RangeConvention
        if all(r.vanishes() for r in constraint_residuals(tau, CONSTRAINTS, c))
    ]
    detail = f"annihilating: {', '.join(annihilating) or 'none'}; configured: {configured}"
    return passed(str(configured) in annihilating, detail)


def build(config: Config) -> list[Check]:
    D = config.virasoro_weight
    convention = config.range_convention
    tau_tilde = _Once(lambda: _extract(config, "ime"))
    tau_o = _Once(lambda: _extract(config, "zo2"))
    brackets = [(a, b) for a in BRACKET_INDICES for b in BRACKET_INDICES if a < b]
    return [
        Check("heisenberg-commutators", r"We consider the Heisenberg operators $\widehat{\alpha}_n$",
              lambda: all_hold({"pairs": heisenberg_commutator_check(D, HEISENBERG_PAIRS)})),
        Check("q-virasoro-commutators", r"Using the commutator relation $[q_n,\widehat{L}_k]=-n\widehat{\alpha}_{k-n}$",
              lambda: all_hold({f"[q{n}, L{k}]": commutator_check(n, k, D, convention) for n, k in COMMUTATOR_PAIRS})),
        Check("virasoro-brackets", r"We can write the operators $\widehat{L}_{-2m-2}$ and $\widehat{L}_{2m}$",
              lambda: all_hold({f"[L{a}, L{b}]": bracket_check(a, b, D, convention) for a, b in brackets})),
        Check("s-conjugation", r"we can compute the Virasoro constraints for $\widetilde{\tau}$",
              lambda: all_hold(conjugation_checks(CONJUGATION_WEIGHT, convention))),
        Check("tau-relation", r"Let us consider the following tau-function",
              lambda: compared(tau_relation_check(tau_tilde.get(), tau_o.get(), D, D))),
        Check("constraints", r"the Virasoro constraints for $\tau^o$",
              lambda: _residual_outcome(constraint_residuals(tau_o.get(), CONSTRAINTS, convention))),
        Check("even-time-independence", r"the tau-function is independent on even times",
              lambda: _residual_outcome(even_time_residuals(tau_o.get()))),
        Check("range-convention", r"\frac{1}{2}\sum_{0<i<2m-2}q_iq_{2m+2-i}",
              lambda: _convention_record(tau_o.get(), convention)),
    ]
