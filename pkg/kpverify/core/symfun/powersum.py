"""Power sums, elementary symmetric functions and Newton's identities."""

from itertools import permutations
from typing import Sequence

from sympy import Matrix
from sympy.polys.domains import QQ
from sympy.utilities.iterables import partitions

from kpverify.utils.errors import DomainError
from kpverify.core.ring import Series
from .qpoly import QPolynomial, key_of


def partitions_of(w: int) -> list[tuple[int, ...]]:
    """Partitions of w as non-increasing tuples, in a fixed order."""
    if w == 0:
        return [()]
    out = []
    for p in partitions(w):
        parts = []
        for part, mult in sorted(p.items(), reverse=True):
            parts.extend([part] * mult)
        out.append(tuple(parts))
    return sorted(out, reverse=True)


def powersum_series(table, names: Sequence[str], partition: Sequence[int]) -> Series:
    """p_μ(x) = ∏ p_{μ_j}(x) on ``table``."""
    result = Series.one(table)
    for part in partition:
        p = Series.zero(table)
        for n in names:
            p = p + Series.var(table, n, part)
        result = result * p
    return result


def _is_symmetric(sym: Series, names: Sequence[str]) -> bool:
    idx = [sym.table.index(n) for n in names]
    for a, b in zip(idx, idx[1:]):
        swapped = {}
        for e, c in sym.terms.items():
            ne = list(e)
            ne[a], ne[b] = e[b], e[a]
            swapped[tuple(ne)] = c
        if swapped != sym.terms:
            return False
    return True


def _solve(columns: list[Series], target: Series):
    """Exact coefficients a with Σ a_j columns_j = target, or None if not unique."""
    rows = sorted({e for col in columns for e in col.terms} | set(target.terms))
    if not rows:
        return [QQ(0)] * len(columns)
    A = Matrix([[QQ.to_sympy(col.coeff(r)) for col in columns] for r in rows])
    b = Matrix([QQ.to_sympy(target.coeff(r)) for r in rows])
    try:
        sol, params = A.gauss_jordan_solve(b)
    except ValueError:
        raise DomainError("Input is not a polynomial in the power sums at this weight") from None
    if params.shape[0]:
        return None
    return [QQ.from_sympy(v) for v in sol]


def monomial_to_powersum(sym: Series, names: Sequence[str], D: int) -> QPolynomial:
    """The polynomial in p_1..p_D (returned as q's) reproducing a symmetric series up to weight D."""
    M = len(names)
    if D > M:
        raise DomainError(f"Power sums p_1..p_{D} are dependent in {M} variables")
    if any(sym.table.cap(n) < D for n in names):
        raise DomainError(f"Variable caps must reach the weight {D}")
    if not _is_symmetric(sym, names):
        raise DomainError("Input is not symmetric under permutations of " + ", ".join(names))
    idx = [sym.table.index(n) for n in names]
    others = [i for i in range(len(sym.table)) if i not in idx]
    if any(e[i] for e in sym.terms for i in others):
        raise DomainError("Input depends on variables other than " + ", ".join(names))
    result = {}
    for w in range(D + 1):
        part = {e: c for e, c in sym.terms.items() if sum(e[i] for i in idx) == w}
        target = Series(sym.table, part, sym.domain)
        if target.is_zero():
            continue
        basis = partitions_of(w)
        columns = [powersum_series(sym.table, names, mu) for mu in basis]
        columns = [c.truncate(**{n: w for n in names}) for c in columns]
        coeffs = _solve(columns, target)
        if coeffs is None:
            raise DomainError(f"Power-sum expansion at weight {w} is not unique")
        for mu, c in zip(basis, coeffs):
            if c:
                result[key_of(D, mu)] = c
    return QPolynomial(D, result)


def elementary_in_powersums(D: int) -> list[QPolynomial]:
    """[e_1, ..., e_D] in terms of p's (q slots) by k e_k = Σ_i (-1)^{i-1} e_{k-i} p_i."""
    e = [QPolynomial.const(D, 1)]
    for k in range(1, D + 1):
        acc = QPolynomial.zero(D)
        for i in range(1, k + 1):
            term = e[k - i] * QPolynomial.q(D, i)
            acc = acc + (term if i % 2 else -term)
        e.append(acc.scale(QQ(1, k)))
    return e[1:]


def powersum_in_elementary(D: int) -> list[QPolynomial]:
    """[p_1, ..., p_D] in terms of e's (q slots) by p_k = Σ_{i<k} (-1)^{i-1} e_i p_{k-i} + (-1)^{k-1} k e_k."""
    p: list[QPolynomial] = []
    for k in range(1, D + 1):
        acc = QPolynomial.q(D, k, coeff=(-1) ** (k - 1) * k)
        for i in range(1, k):
            term = QPolynomial.q(D, i) * p[k - i - 1]
            acc = acc + (term if i % 2 else -term)
        p.append(acc)
    return p


def newton_round_trip(D: int) -> bool:
    """Both conversions compose to the identity on q_1..q_D."""
    e_in_p = elementary_in_powersums(D)
    p_in_e = powersum_in_elementary(D)
    for k in range(1, D + 1):
        if p_in_e[k - 1].compose(e_in_p) != QPolynomial.q(D, k):
            return False
        if e_in_p[k - 1].compose(p_in_e) != QPolynomial.q(D, k):
            return False
    return True


def symmetric_orbit_sum(table, names: Sequence[str], exponents: Sequence[int]) -> Series:
    """Monomial symmetric function m_α(x) on ``table``."""
    seen = set()
    total = Series.zero(table)
    padded = list(exponents) + [0] * (len(names) - len(exponents))
    for perm in permutations(padded):
        if perm in seen:
            continue
        seen.add(perm)
        total = total + Series.monomial(table, 1, **dict(zip(names, perm)))
    return total
