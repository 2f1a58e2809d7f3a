"""Tensor-product Gauss rules with a three-level refinement error estimate.

This is the only place in the package that computes in floating point.
"""

from math import exp, sqrt
from typing import Callable, Sequence

import numpy as np
from pydantic import BaseModel, Field
from scipy.special import roots_hermite, roots_legendre

from kpverify.config import LOG
from kpverify.utils.errors import QuadratureError

# e^{-TAIL} bounds the Gaussian weight outside the eigenvalue box
TAIL = 36.0

Integrand = Callable[[np.ndarray], np.ndarray]


class NumericIntegral(BaseModel):
    dimension: int = Field(..., description="Number of real integration variables")
    integrand: str = Field(..., description="What was integrated")
    rule: str = Field(..., description="Quadrature rule and finest resolution")
    value: float = Field(..., description="Finest-level value")
    error: float = Field(..., description="Refinement delta plus tail bound")

    def relative_error(self) -> float:
        return self.error / max(abs(self.value), 1e-300)

    def pretty(self) -> str:
        return f"{self.value:.12g} ± {self.error:.2g}"


def hermite_grid(precisions: Sequence[float], order: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights with Σ w g(y) ≈ ∫ g(y) ∏_k e^{-½ a_k y_k²} dy."""
    x, w = roots_hermite(order)
    axes, weights = [], []
    for a in precisions:
        scale = sqrt(2.0 / a)
        axes.append(x * scale)
        weights.append(w * scale)
    return _tensor(axes, weights)


def legendre_box(dim: int, half_width: float, panels: int, order: int) -> tuple[np.ndarray, np.ndarray]:
    """Composite Gauss-Legendre rule on [-L, L]^dim with ``panels`` equal panels per axis."""
    x, w = roots_legendre(order)
    edges = np.linspace(-half_width, half_width, panels + 1)
    half = (edges[1:] - edges[:-1]) / 2
    mid = (edges[1:] + edges[:-1]) / 2
    axis = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weight = (half[:, None] * w[None, :]).ravel()
    return _tensor([axis] * dim, [weight] * dim)


def _tensor(axes, weights) -> tuple[np.ndarray, np.ndarray]:
    grids = np.meshgrid(*axes, indexing="ij")
    wgrids = np.meshgrid(*weights, indexing="ij")
    points = np.stack([g.ravel() for g in grids], axis=1)
    w = np.ones(points.shape[0])
    for g in wgrids:
        w = w * g.ravel()
    return points, w


def _converged(values: list[complex], what: str, tol: float) -> float:
    d1 = abs(values[1] - values[0])
    d2 = abs(values[2] - values[1])
    scale = max(abs(values[2]), 1.0)
    if d2 > tol * scale and d2 >= d1:
        raise QuadratureError(
            f"{what}: refinement delta not decreasing ({d1:.3g} then {d2:.3g})"
        )
    return d2


def integrate_gaussian(
    f: Integrand, precisions: Sequence[float], order: int, what: str, tol: float = 1e-6
) -> NumericIntegral:
    """∫ f(y) ∏ e^{-½ a_k y_k²} dy by Gauss-Hermite at orders n/2, 3n/4 and n."""
    orders = [max(2, order // 2), max(3, 3 * order // 4), max(4, order)]
    values = []
    for n in orders:
        points, w = hermite_grid(precisions, n)
        values.append(np.sum(w * f(points)))
    error = _converged(values, what, tol)
    LOG.debug(f"{what}: Gauss-Hermite orders {orders} -> {[complex(v) for v in values]}")
    return NumericIntegral(
        dimension=len(precisions),
        integrand=what,
        rule=f"gauss-hermite n={orders[-1]}",
        value=float(np.real(values[-1])),
        error=float(error),
    )


def integrate_box(
    f: Integrand,
    dim: int,
    min_precision: float,
    order: int,
    what: str,
    tol: float = 1e-6,
    growth_degree: int = 4,
    panels: int = 4,
) -> NumericIntegral:
    """∫ f over R^dim for f bounded by a polynomial times e^{-½ a |y|²}, a ≥ ``min_precision``.

    The box half width puts e^{-TAIL} at its edge; the reported error adds a
    tail bound for polynomial growth up to ``growth_degree``.
    """
    L = sqrt(2.0 * TAIL / min_precision)
    levels = [panels, 2 * panels, 4 * panels]
    values = []
    for p in levels:
        points, w = legendre_box(dim, L, p, order)
        values.append(np.sum(w * f(points)))
    error = _converged(values, what, tol)
    tail = exp(-TAIL) * (1.0 + L**growth_degree) * (2.0 * L) ** dim
    return NumericIntegral(
        dimension=dim,
        integrand=what,
        rule=f"gauss-legendre box L={L:.3g} panels={levels[-1]} n={order}",
        value=float(np.real(values[-1])),
        error=float(error + tail),
    )
