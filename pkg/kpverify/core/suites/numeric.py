"""Floating-point quadrature of the convergent Gaussian integrals."""

from sympy.polys.domains import QQ

from kpverify.config import Config
from kpverify.core.quadrature import (
    INVARIANTS,
    complex_vector_gaussian_check,
    hciz_check,
    normalization_check,
    wick_bridge_check,
)
from .base import Check, all_hold, compared, passed

QUADRATURE_LAMBDA = (QQ(1), QQ(2))
VECTOR_MATRICES = {
    "A=(2)": [[2]],
    "A=diag(1,3)": [[1, 0], [0, 3]],
    "A=id": [[1, 0], [0, 1]],
    "A=perturbed": [[2, QQ(1, 4)], [QQ(1, 4), 3]],
}


def _numeric(comparisons: dict):
    ok = all(c.ok for c in comparisons.values())
    detail = "; ".join(f"{k}: {c.detail()}" for k, c in comparisons.items())
    return passed(ok, detail)


def build(config: Config) -> list[Check]:
    order, tol = config.quadrature_order, config.tol
    lam = QUADRATURE_LAMBDA
    return [
        Check("normalization", r"c_{\Lambda,M}=(2\pi)^{-\frac{M^2}{2}}\prod_{i=1}^M\sqrt{\lambda_i}",
              lambda: _numeric({
                  "M=1": normalization_check(lam[:1], order, tol),
                  "M=2": normalization_check(lam, order, tol),
                  "M=2 scaled": normalization_check(tuple(4 * v for v in lam), order, tol),
              })),
        Check("hciz", r"By the Harish-Chandra-Itzykson-Zuber (HCIZ) formula",
              lambda: _numeric({
                  f"M={M} {f}": hciz_check(lam[:M], f, order, tol) for M in (1, 2) for f in INVARIANTS
              })),
        Check("complex-vector-gaussian", r"and the complex Gaussian integral",
              lambda: _numeric({k: complex_vector_gaussian_check(A, order, tol) for k, A in VECTOR_MATRICES.items()})),
        Check("wick-bridge", r"Performing the change $H\rightarrow H-\Lambda$ on the integral",
              lambda: compared(wick_bridge_check(lam, 4, order, tol))),
    ]
