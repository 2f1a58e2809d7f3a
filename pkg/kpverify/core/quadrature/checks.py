"""Numeric cross-checks of the convergent Gaussian integrals the exact engine relies on.

The entry-side measure [dH] is the product of the diagonal differentials and
of the real and imaginary parts of the upper off-diagonal entries.
"""

from itertools import combinations_with_replacement
from math import factorial, pi, prod, sqrt
from typing import Callable, Sequence

import numpy as np
from pydantic import BaseModel, Field

from kpverify.config import LOG
from kpverify.utils.errors import ValidationError
from kpverify.core.ring import parse_rational, to_float
from kpverify.core.wick import HERMITIAN, EntrySymbol, HermitianEnsemble
from .rules import NumericIntegral, hermite_grid, integrate_box, integrate_gaussian

ONE = "one"
TR_H2 = "tr_h2"
TR_H_SQUARED = "tr_h_sq"
TR_H4 = "tr_h4"


def _matrix_invariant(name: str) -> Callable[[np.ndarray], np.ndarray]:
    def tr(H):
        return np.trace(H, axis1=1, axis2=2)

    table = {
        ONE: lambda H: np.ones(H.shape[0]),
        TR_H2: lambda H: tr(H @ H),
        TR_H_SQUARED: lambda H: tr(H) ** 2,
        TR_H4: lambda H: tr(H @ H @ H @ H),
    }
    return table[name]


def _eigen_invariant(name: str) -> Callable[[np.ndarray], np.ndarray]:
    table = {
        ONE: lambda m: np.ones(m.shape[0]),
        TR_H2: lambda m: np.sum(m**2, axis=1),
        TR_H_SQUARED: lambda m: np.sum(m, axis=1) ** 2,
        TR_H4: lambda m: np.sum(m**4, axis=1),
    }
    return table[name]


INVARIANTS = (ONE, TR_H2, TR_H_SQUARED, TR_H4)


class Comparison(BaseModel):
    ok: bool = Field(..., description="Agreement within tolerance")
    lhs: NumericIntegral
    rhs: float = Field(..., description="Closed form or second quadrature value")
    rhs_error: float = Field(default=0.0, description="Error estimate of the right-hand side")
    relative_error: float

    def detail(self) -> str:
        return (
            f"lhs={self.lhs.pretty()} rhs={self.rhs:.12g} ± {self.rhs_error:.2g} "
            f"rel={self.relative_error:.3g}"
        )


def _compare(lhs: NumericIntegral, rhs: float, tol: float, rhs_error: float = 0.0) -> Comparison:
    rel = abs(lhs.value - rhs) / max(abs(rhs), 1e-300)
    return Comparison(ok=rel <= tol, lhs=lhs, rhs=rhs, rhs_error=rhs_error, relative_error=rel)


def _as_float(v) -> float:
    return v if isinstance(v, float) else to_float(parse_rational(v))


def _eigenvalues(lam: Sequence) -> tuple[float, ...]:
    values = tuple(_as_float(v) for v in lam)
    if len(values) not in (1, 2):
        raise ValidationError("Quadrature checks support M ∈ {1, 2}")
    if any(v <= 0 for v in values):
        raise ValidationError("Eigenvalues must be positive")
    if len(set(values)) != len(values):
        raise ValidationError("Eigenvalues must be pairwise distinct")
    return values


def _entry_precisions(lam: Sequence[float]) -> list[float]:
    """Precisions of the coordinates (h_11, …, h_MM, Re h_12, Im h_12, …) under e^{-½tr H²Λ}."""
    M = len(lam)
    out = list(lam)
    for i in range(M):
        for j in range(i + 1, M):
            out += [lam[i] + lam[j]] * 2
    return out


def hermitian_from_coordinates(points: np.ndarray, M: int) -> np.ndarray:
    """Stack of Hermitian matrices from entry coordinates in :func:`_entry_precisions` order."""
    H = np.zeros((points.shape[0], M, M), dtype=complex)
    for i in range(M):
        H[:, i, i] = points[:, i]
    col = M
    for i in range(M):
        for j in range(i + 1, M):
            z = points[:, col] + 1j * points[:, col + 1]
            H[:, i, j] = z
            H[:, j, i] = np.conj(z)
            col += 2
    return H


def hermitian_integral(lam: Sequence, f: str = ONE, order: int = 24, tol: float = 1e-6) -> NumericIntegral:
    """∫ f(H) e^{-½ tr H²Λ} [dH] over entry coordinates."""
    values = _eigenvalues(lam)
    M = len(values)
    invariant = _matrix_invariant(f)

    def integrand(points):
        return invariant(hermitian_from_coordinates(points, M))

    return integrate_gaussian(integrand, _entry_precisions(values), order, f"entries:{f}", tol)


def normalization_constant(lam: Sequence) -> float:
    """c_{Λ,M} = (2π)^{-M²/2} ∏√λ_i ∏_{i<j}(λ_i+λ_j)."""
    values = _eigenvalues(lam)
    M = len(values)
    pairs = [values[i] + values[j] for i in range(M) for j in range(i + 1, M)]
    return (2 * pi) ** (-(M**2) / 2) * prod(sqrt(v) for v in values) * prod(pairs)


def normalization_check(lam: Sequence, order: int = 24, tol: float = 1e-6) -> Comparison:
    """c_{Λ,M}·∫e^{-½tr H²Λ}[dH] = 1."""
    c = normalization_constant(lam)
    integral = hermitian_integral(lam, ONE, order, tol)
    scaled = integral.model_copy(
        update={"value": c * integral.value, "error": c * integral.error, "integrand": "c*entries:one"}
    )
    return _compare(scaled, 1.0, tol)


def vandermonde(lam: Sequence[float]) -> float:
    """∏_{i<j}(λ_i - λ_j)."""
    M = len(lam)
    return prod(lam[i] - lam[j] for i in range(M) for j in range(i + 1, M))


def eigenvalue_integral(lam: Sequence, f: str = ONE, order: int = 24, tol: float = 1e-6) -> NumericIntegral:
    """Eigenvalue side of the HCIZ reduction, prefactor included.

    For M = 2 the factor det(e^{-½m_i²λ_j})/(m_1+m_2) has a removable
    singularity on m_1 + m_2 = 0, where it equals g(m)·½(λ_2-λ_1)(m_1-m_2).
    """
    values = _eigenvalues(lam)
    M = len(values)
    invariant = _eigen_invariant(f)
    prefactor = (2 * pi) ** ((M * M - M) / 2) / (factorial(M) * vandermonde(values))

    if M == 1:
        (l1,) = values

        def integrand(m):
            return invariant(m) * np.exp(-0.5 * l1 * m[:, 0] ** 2)

    else:
        l1, l2 = values

        def integrand(m):
            m1, m2 = m[:, 0], m[:, 1]
            g12 = np.exp(-0.5 * (l1 * m1**2 + l2 * m2**2))
            g21 = np.exp(-0.5 * (l1 * m2**2 + l2 * m1**2))
            p = m1 + m2
            regular = np.abs(p) > 1e-10
            ratio = np.where(
                regular,
                (g12 - g21) / np.where(regular, p, 1.0),
                g12 * 0.5 * (l2 - l1) * (m1 - m2),
            )
            return invariant(m) * ratio * (m2 - m1)

    raw = integrate_box(integrand, M, min(values), order, f"eigenvalues:{f}", tol)
    return raw.model_copy(update={"value": prefactor * raw.value, "error": abs(prefactor) * raw.error})


def hciz_check(lam: Sequence, f: str = ONE, order: int = 24, tol: float = 1e-6) -> Comparison:
    """Entry-coordinate quadrature against the HCIZ eigenvalue quadrature."""
    if f not in INVARIANTS:
        raise ValidationError(f"Unknown invariant {f!r}; expected one of {INVARIANTS}")
    lhs = hermitian_integral(lam, f, order, tol)
    rhs = eigenvalue_integral(lam, f, order, tol)
    result = _compare(lhs, rhs.value, tol, rhs.error)
    LOG.debug(f"hciz {f} at λ={lam}: {result.detail()}")
    return result


def complex_vector_gaussian_check(A: Sequence[Sequence], order: int = 24, tol: float = 1e-6) -> Comparison:
    """(2π)^{-M}∫exp(-½ C̄^t A C)∏[dC_i] = 1/det A for real symmetric positive-definite A."""
    A = np.array([[_as_float(v) for v in row] for row in A])
    M = A.shape[0]
    if A.shape != (M, M) or M not in (1, 2):
        raise ValidationError("complex_vector_gaussian_check supports square A with M ∈ {1, 2}")
    if not np.allclose(A, A.T):
        raise ValidationError("A must be symmetric")
    try:
        np.linalg.cholesky(A)
    except np.linalg.LinAlgError:
        raise ValidationError("A must be positive definite") from None
    diag = np.diag(A)
    off = A - np.diag(diag)

    def integrand(points):
        x, y = points[:, :M], points[:, M:]
        q = np.einsum("ni,ij,nj->n", x, off, x) + np.einsum("ni,ij,nj->n", y, off, y)
        return np.exp(-0.5 * q)

    raw = integrate_gaussian(integrand, list(diag) * 2, order, "complex-vector", tol)
    scale = (2 * pi) ** (-M)
    lhs = raw.model_copy(update={"value": scale * raw.value, "error": scale * raw.error})
    return _compare(lhs, 1.0 / float(np.linalg.det(A)), tol)


def wick_bridge_check(
    lam: Sequence, max_degree: int = 4, order: int = 24, tol: float = 1e-6
) -> tuple[bool, list[str]]:
    """Exact Wick expectations of H-entry monomials against normalized quadrature."""
    values = _eigenvalues(lam)
    M = len(values)
    points, w = hermite_grid(_entry_precisions(values), order)
    H = hermitian_from_coordinates(points, M)
    Z = np.sum(w)
    ensemble = HermitianEnsemble(M, [parse_rational(v) for v in lam], eps=None)
    symbols = [EntrySymbol(HERMITIAN, i, j) for i in range(1, M + 1) for j in range(1, M + 1)]
    mismatches = []
    for degree in range(2, max_degree + 1, 2):
        for mono in combinations_with_replacement(symbols, degree):
            product = np.ones(points.shape[0], dtype=complex)
            for s in mono:
                product = product * H[:, s.i - 1, s.j - 1]
            numeric = np.sum(w * product) / Z
            exact = to_float(ensemble.contract(tuple(sorted(mono))))
            if abs(numeric - exact) > tol * max(1.0, abs(exact)):
                mismatches.append(f"{'*'.join(map(str, mono))}: wick={exact:.12g} quadrature={numeric:.12g}")
    return not mismatches, mismatches

