"""Square matrices over a ring of truncated series.

Entries only need ``+ - *``, unary minus, ``is_zero()`` and scalar
multiplication, so the same class carries Series entries (determinants,
Kronecker products) and Wick integrand entries (EntryPoly).
"""

from itertools import permutations
from typing import Generic, Sequence, TypeVar

from sympy.polys.domains import QQ

from kpverify.utils.errors import DomainError, StructuralError
from .scalar import coerce
from .series import Series, nilpotency_bound
from .elementary import series_exp

E = TypeVar("E")


class SeriesMatrix(Generic[E]):
    __slots__ = ("rows", "n", "zero")

    def __init__(self, rows: Sequence[Sequence[E]], zero: E):
        n = len(rows)
        if n < 1:
            raise StructuralError("Matrix dimension must be at least 1")
        if any(len(r) != n for r in rows):
            raise StructuralError("Matrix must be square")
        self.rows = [list(r) for r in rows]
        self.n = n
        self.zero = zero

    # constructors
    @classmethod
    def identity(cls, n: int, one: E, zero: E) -> "SeriesMatrix[E]":
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)], zero)

    @classmethod
    def diag(cls, entries: Sequence[E], zero: E) -> "SeriesMatrix[E]":
        n = len(entries)
        return cls([[entries[i] if i == j else zero for j in range(n)] for i in range(n)], zero)

    @classmethod
    def of_series(cls, rows: Sequence[Sequence[Series]]) -> "SeriesMatrix[Series]":
        table = rows[0][0].table
        for r in rows:
            for x in r:
                if x.table != table:
                    raise StructuralError("All entries must share one VarTable")
        return cls(rows, Series.zero(table))

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def entries(self):
        for r in self.rows:
            yield from r

    def is_zero(self) -> bool:
        return all(x.is_zero() for x in self.entries())

    def __eq__(self, other):
        if not isinstance(other, SeriesMatrix) or other.n != self.n:
            return False
        return all((a - b).is_zero() for a, b in zip(self.entries(), other.entries()))

    def _same(self, other: "SeriesMatrix"):
        if other.n != self.n:
            raise StructuralError(f"Dimension mismatch: {self.n} vs {other.n}")

    # arithmetic
    def __add__(self, other: "SeriesMatrix[E]") -> "SeriesMatrix[E]":
        self._same(other)
        return SeriesMatrix(
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)], self.zero
        )

    def __sub__(self, other: "SeriesMatrix[E]") -> "SeriesMatrix[E]":
        self._same(other)
        return SeriesMatrix(
            [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)], self.zero
        )

    def __neg__(self) -> "SeriesMatrix[E]":
        return SeriesMatrix([[-a for a in r] for r in self.rows], self.zero)

    def scale(self, c) -> "SeriesMatrix[E]":
        """Multiply every entry by a scalar or by a ring element."""
        return SeriesMatrix([[a * c for a in r] for r in self.rows], self.zero)

    def __matmul__(self, other: "SeriesMatrix[E]") -> "SeriesMatrix[E]":
        self._same(other)
        n = self.n
        cols = [[other.rows[k][j] for k in range(n)] for j in range(n)]
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = self.zero
                for a, b in zip(self.rows[i], cols[j]):
                    if a.is_zero() or b.is_zero():
                        continue
                    acc = acc + a * b
                row.append(acc)
            out.append(row)
        return SeriesMatrix(out, self.zero)

    def power(self, k: int, one: E) -> "SeriesMatrix[E]":
        result = SeriesMatrix.identity(self.n, one, self.zero)
        for _ in range(k):
            result = result @ self
        return result

    def transpose(self) -> "SeriesMatrix[E]":
        return SeriesMatrix([list(col) for col in zip(*self.rows)], self.zero)

    def trace(self) -> E:
        acc = self.zero
        for i in range(self.n):
            acc = acc + self.rows[i][i]
        return acc

    def kron(self, other: "SeriesMatrix[E]") -> "SeriesMatrix[E]":
        """(A⊗B)[(i,a),(j,b)] = A[i,j]·B[a,b], rows ordered i-major."""
        n, m = self.n, other.n
        out = [[self.zero] * (n * m) for _ in range(n * m)]
        for i in range(n):
            for j in range(n):
                a = self.rows[i][j]
                if a.is_zero():
                    continue
                for p in range(m):
                    for q in range(m):
                        b = other.rows[p][q]
                        if not b.is_zero():
                            out[i * m + p][j * m + q] = a * b
        return SeriesMatrix(out, self.zero)

    # determinants
    def cofactor_det(self) -> E:
        """Laplace expansion along the first row; exact, intended for n ≤ 4."""
        return _laplace(self.rows, self.zero)

    def leibniz_det(self) -> E:
        """Permutation-sum determinant; used as an independent oracle."""
        n = self.n
        acc = self.zero
        for perm in permutations(range(n)):
            sign = _perm_sign(perm)
            term = None
            for i, j in enumerate(perm):
                x = self.rows[i][j]
                term = x if term is None else term * x
            acc = acc + term if sign > 0 else acc - term
        return acc


def _perm_sign(perm) -> int:
    sign, seen = 1, [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def _laplace(rows, zero):
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    acc = zero
    for j in range(n):
        a = rows[0][j]
        if a.is_zero():
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = a * _laplace(minor, zero)
        acc = acc + term if j % 2 == 0 else acc - term
    return acc


def trace_log(K: SeriesMatrix, max_power: int):
    """Σ_{k=1}^{max_power} tr(K^k)/k, i.e. −log det(1 − K), stopping early when K^k vanishes."""
    acc = K.zero
    power = None
    for k in range(1, max_power + 1):
        power = K if power is None else power @ K
        if power.is_zero():
            break
        acc = acc + power.trace() * QQ(1, k)
    return acc


def det_trlog(A: SeriesMatrix) -> Series:
    """det A = ∏ D_ii · exp(tr log(1 + R)) with A = D(1 + R), D the diagonal constant part."""
    n = A.n
    table = A.zero.table
    diag = []
    for i in range(n):
        for j in range(n):
            c = A.rows[i][j].constant_term()
            if i != j and c:
                raise DomainError("det_trlog: leading part is not diagonal")
            if i == j:
                if not c:
                    raise DomainError(f"det_trlog: leading diagonal entry {i} is not invertible")
                diag.append(c)
    rows = []
    for i in range(n):
        inv = coerce(1, A.rows[i][i].domain) / diag[i]
        row = []
        for j in range(n):
            x = A.rows[i][j].scale(inv)
            if i == j:
                x = x.without_constant()
            row.append(x)
        rows.append(row)
    R = SeriesMatrix(rows, A.zero)
    exponents = [e for x in R.entries() for e in x.terms]
    for e in exponents:
        if any(p < 0 for p in e):
            raise DomainError("det_trlog: correction part has negative exponents")
    prefactor = diag[0]
    for d in diag[1:]:
        prefactor = prefactor * d
    if not exponents:
        return Series.const(table, prefactor)
    bound = nilpotency_bound(table, exponents)
    # log det(1 + R) = −Σ tr((−R)^k)/k
    log_det = -trace_log(-R, bound)
    return series_exp(log_det).scale(prefactor)
