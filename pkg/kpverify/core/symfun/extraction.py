"""Exact extraction of a q-basis polynomial from numeric-eigenvalue evaluations.

A pipeline evaluated with λ → λ/ε returns τ(ε^k q_k, s); the coefficient of
ε^w s^a is the weight-w part in the q's. For every (w, a) the unknown
coefficients over the partitions of w are solved exactly from distinct
seeded λ-tuples and confirmed at held-out tuples.
"""

import logging
from typing import Callable, Iterable, Optional

from sympy import Matrix
from sympy.polys.domains import QQ
from tenacity import (
    before_sleep_log,
    retry,
    retry_if_exception_type,
    stop_after_attempt,
)

from kpverify.config import LOG, TRACE_LOG
from kpverify.utils.errors import ExtractionError, SingularSystemError
from kpverify.utils.tools import distinct_tuple, seeded_rationals
from kpverify.core.constants import DEFAULT_SEED, EPS, S
from kpverify.core.ring import Series
from .miwa import power_sums
from .powersum import partitions_of
from .qpoly import QPolynomial, key_of

Pipeline = Callable[[tuple], Series]


def _q_monomial(q: list, partition) -> object:
    v = QQ(1)
    for part in partition:
        v = v * q[part - 1]
    return v


def _solve_block(rows: list[list], rhs: list) -> list:
    A = Matrix([[QQ.to_sympy(v) for v in row] for row in rows])
    b = Matrix([QQ.to_sympy(v) for v in rhs])
    try:
        sol, params = A.gauss_jordan_solve(b)
    except ValueError:
        raise ExtractionError("Inconsistent extraction system: the pipeline is not a q-polynomial") from None
    if params.shape[0]:
        raise SingularSystemError(f"Extraction system has {params.shape[0]} free parameters")
    return [QQ.from_sympy(v) for v in sol]


def extract_q_polynomial(
    pipeline: Pipeline,
    D: int,
    s_cap: Optional[int] = None,
    *,
    M: Optional[int] = None,
    seed: int = DEFAULT_SEED,
    retries: int = 3,
    held_out: int = 2,
    eps: str = EPS,
    s: str = S,
    map_fn: Callable[[Callable, Iterable], Iterable] = map,
) -> QPolynomial:
    """Solve for τ(q, s) of weight <= D from pipeline evaluations at M = D eigenvalues."""
    M = M or D
    s_cap = D if s_cap is None else s_cap
    stream = seeded_rationals(seed)
    blocks = [(w, a) for w in range(D + 1) for a in range(min(s_cap, D - w) + 1)]
    need = max(len(partitions_of(w)) for w in range(D + 1))

    @retry(
        stop=stop_after_attempt(retries),
        retry=retry_if_exception_type(SingularSystemError),
        before_sleep=before_sleep_log(LOG, logging.WARNING),
        reraise=True,
    )
    def attempt() -> QPolynomial:
        tuples = [distinct_tuple(stream, M) for _ in range(need + held_out)]
        TRACE_LOG.debug("extraction", f"evaluating at {len(tuples)} eigenvalue tuples, weight {D}")
        values = list(map_fn(pipeline, tuples))
        qs = [power_sums(lam, D) for lam in tuples]
        solve_q, check_q = qs[:need], qs[need:]
        solve_v, check_v = values[:need], values[need:]
        result = {}
        for w, a in blocks:
            basis = partitions_of(w)
            rows = [[_q_monomial(q, mu) for mu in basis] for q in solve_q]
            rhs = [v.coeff(**{eps: w, s: a}) for v in solve_v]
            coeffs = _solve_block(rows, rhs)
            for q, v in zip(check_q, check_v):
                predicted = sum((c * _q_monomial(q, mu) for c, mu in zip(coeffs, basis)), QQ(0))
                if predicted != v.coeff(**{eps: w, s: a}):
                    raise ExtractionError(
                        f"Held-out tuple disagrees at eps^{w} s^{a}; the pipeline is not a weight-{D} q-polynomial"
                    )
            for c, mu in zip(coeffs, basis):
                if c:
                    result[key_of(D, mu, a)] = c
        return QPolynomial(D, result)

    return attempt()
