"""Finite identities behind the eigenvalue reduction.

Exponential factors e^{-½m_i²λ_j} enter only multilinearly, so they are
replaced by independent formal symbols E_ij.
"""

from typing import Mapping, Optional, Sequence

from sympy.polys.domains import QQ

from kpverify.config import LOG
from kpverify.utils.errors import ValidationError
from kpverify.utils.tools import distinct_tuple, seeded_rationals
from kpverify.core.constants import DEFAULT_SEED
from kpverify.core.ring import Series, SeriesMatrix, VarTable


def e_var(i: int, j: int) -> str:
    return f"E{i}{j}"


def _exponential_matrix(M: int) -> tuple[VarTable, SeriesMatrix]:
    """(M+1)×(M+1) matrix [E_ij | 1] with λ_{M+1} = 0 making the last column all ones."""
    names = [e_var(i, j) for i in range(1, M + 2) for j in range(1, M + 1)]
    table = VarTable.of(**{n: 1 for n in names})
    one = Series.one(table)
    rows = [
        [Series.var(table, e_var(i, j)) for j in range(1, M + 1)] + [one]
        for i in range(1, M + 2)
    ]
    return table, SeriesMatrix.of_series(rows)


def lemma1_det_expansion(M: int, point: Optional[Mapping[str, object]] = None) -> bool:
    """det[E | 1] = Σ_k (-1)^{M+1-k} det(E with row k deleted).

    With ``point`` both sides are evaluated at E_ij = point[E_ij].
    """
    if M < 1:
        raise ValidationError("M must be at least 1")
    table, A = _exponential_matrix(M)
    lhs = A.cofactor_det()
    rhs = Series.zero(table)
    for k in range(1, M + 2):
        minor = [row[:M] for i, row in enumerate(A.rows, start=1) if i != k]
        term = SeriesMatrix(minor, A.zero).leibniz_det()
        rhs = rhs + (term if (M + 1 - k) % 2 == 0 else -term)
    if point is not None:
        lhs, rhs = lhs.evaluate(point), rhs.evaluate(point)
    same = lhs == rhs
    if not same:
        LOG.warning(f"det expansion fails at M={M}: {(lhs - rhs).pretty()}")
    return same


def _pair_ratio(a, b):
    return (b - a) / (b + a)


def lemma1_product_identity(M: int, k: int, point: Sequence) -> bool:
    """∏_{i<j}(m_j-m_i)/(m_j+m_i) = (-1)^{k-1} ∏_{i<j; i,j≠k}(…) · ∏_{j≠k}(m_j-m_k)/(m_j+m_k)."""
    m = [QQ.convert(v) for v in point]
    n = M + 1
    if len(m) != n:
        raise ValidationError(f"Expected {n} values, got {len(m)}")
    if not 1 <= k <= n:
        raise ValidationError(f"k must lie in 1..{n}")
    if any(m[i] + m[j] == 0 for i in range(n) for j in range(i + 1, n)):
        raise ValidationError("Point has a vanishing denominator m_i + m_j")
    lhs = QQ(1)
    for i in range(n):
        for j in range(i + 1, n):
            lhs *= _pair_ratio(m[i], m[j])
    rest = [v for idx, v in enumerate(m, start=1) if idx != k]
    rhs = QQ((-1) ** (k - 1))
    for i in range(len(rest)):
        for j in range(i + 1, len(rest)):
            rhs *= _pair_ratio(rest[i], rest[j])
    for v in rest:
        rhs *= _pair_ratio(m[k - 1], v)
    return lhs == rhs


def sample_points(n: int, count: int, seed: int = DEFAULT_SEED) -> list[tuple]:
    """``count`` points of n signed rationals, pairwise distinct, non-zero and non-opposite."""
    stream = seeded_rationals(seed, positive=False)

    def collides(chosen, v):
        return any(v + c == 0 for c in chosen)

    return [distinct_tuple(stream, n, forbid=collides) for _ in range(count)]


def bordered_trace_identities(M: int) -> dict[str, bool]:
    """Traces of the bordered matrix H' = [[H, C], [C̄^t, y]] with Λ' = diag(Λ, 0).

    The entries of H, C, C̄ are independent symbols, which covers the Hermitian case.
    """
    if M < 1:
        raise ValidationError("M must be at least 1")
    h = [[f"h{i}{j}" for j in range(1, M + 1)] for i in range(1, M + 1)]
    c = [f"c{i}" for i in range(1, M + 1)]
    cb = [f"cb{i}" for i in range(1, M + 1)]
    lam = [f"l{i}" for i in range(1, M + 1)]
    names = [n for row in h for n in row] + c + cb + lam + ["y"]
    table = VarTable.of(**{n: 3 for n in names})

    def var(name: str) -> Series:
        return Series.var(table, name)

    zero = Series.zero(table)

    H = SeriesMatrix([[var(n) for n in row] for row in h], zero)
    L = SeriesMatrix.diag([var(n) for n in lam], zero)
    bordered = SeriesMatrix(
        [[var(h[i][j]) for j in range(M)] + [var(c[i])] for i in range(M)]
        + [[var(n) for n in cb] + [var("y")]],
        zero,
    )
    L_bordered = SeriesMatrix.diag([var(n) for n in lam] + [zero], zero)
    y = var("y")
    cbc = sum((var(cb[i]) * var(c[i]) for i in range(M)), zero)
    cb_h_c = sum((var(cb[i]) * H[i, j] * var(c[j]) for i in range(M) for j in range(M)), zero)
    cb_l_c = sum((var(cb[i]) * var(lam[i]) * var(c[i]) for i in range(M)), zero)

    cube = bordered.power(3, Series.one(table)).trace()
    square_l = (bordered @ bordered @ L_bordered).trace()
    results = {
        "cubic": cube == H.power(3, Series.one(table)).trace() + cb_h_c.scale(3) + y**3 + (y * cbc).scale(3),
        "quadratic": square_l == (H @ H @ L).trace() + cb_l_c,
        "linear": bordered.trace() == H.trace() + y,
    }
    for name, ok in results.items():
        if not ok:
            LOG.warning(f"bordered {name} trace identity fails at M={M}")
    return results
