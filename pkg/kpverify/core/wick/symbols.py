"""Polynomials in abstract matrix entries with Series coefficients.

Monomials are sorted tuples of :class:`EntrySymbol`. Truncation follows a
:class:`Grading`: every entry carries a weight in half powers of ε, and a
coefficient term ε^e survives on a monomial of entry weight k iff
``2e + k <= 2·depth``. Kinds without ε weight may be bounded by a degree cap.
"""

from dataclasses import dataclass, field
from math import factorial
from typing import Iterable, Mapping, NamedTuple, Optional, Sequence

from sympy.polys.domains import QQ

from kpverify.utils.errors import DomainError, StructuralError
from kpverify.core.constants import EPS
from kpverify.core.ring import Series, SeriesMatrix, VarTable, series_exp

HERMITIAN = "H"
GINIBRE = "Z"
GINIBRE_CONJ = "Zb"


class EntrySymbol(NamedTuple):
    kind: str
    i: int
    j: int

    def __str__(self):
        return f"{self.kind}[{self.i},{self.j}]"


Monomial = tuple[EntrySymbol, ...]


@dataclass(frozen=True)
class Grading:
    eps: Optional[str] = EPS
    depth: int = 0
    weights: Mapping[str, int] = field(default_factory=lambda: {HERMITIAN: 1})
    degree_caps: Mapping[str, int] = field(default_factory=dict)

    def weight(self, mono: Monomial) -> int:
        w = self.weights
        return sum(w.get(s.kind, 0) for s in mono)

    def admits(self, mono: Monomial) -> bool:
        if not self.degree_caps:
            return True
        counts: dict[str, int] = {}
        for s in mono:
            counts[s.kind] = counts.get(s.kind, 0) + 1
        return all(counts.get(k, 0) <= cap for k, cap in self.degree_caps.items())


class EntryPoly:
    """Sparse sum of entry monomials with Series coefficients on one VarTable."""

    __slots__ = ("table", "grading", "terms")

    def __init__(
        self,
        table: VarTable,
        grading: Grading,
        terms: Optional[Mapping[Monomial, Series]] = None,
    ):
        self.table = table
        self.grading = grading
        self.terms: dict[Monomial, Series] = {}
        for mono, c in (terms or {}).items():
            mono = tuple(sorted(mono))
            c = self._truncate(mono, c)
            if c is None:
                continue
            prev = self.terms.get(mono)
            c = c if prev is None else prev + c
            if c.is_zero():
                self.terms.pop(mono, None)
            else:
                self.terms[mono] = c

    @classmethod
    def _raw(cls, table, grading, terms) -> "EntryPoly":
        obj = cls.__new__(cls)
        obj.table, obj.grading, obj.terms = table, grading, terms
        return obj

    # constructors
    @classmethod
    def zero(cls, table: VarTable, grading: Grading) -> "EntryPoly":
        return cls._raw(table, grading, {})

    @classmethod
    def const(cls, table: VarTable, grading: Grading, c=1) -> "EntryPoly":
        value = c if isinstance(c, Series) else Series.const(table, c)
        return cls(table, grading, {(): value})

    @classmethod
    def symbol(
        cls, table: VarTable, grading: Grading, sym: EntrySymbol, coeff=1
    ) -> "EntryPoly":
        value = coeff if isinstance(coeff, Series) else Series.const(table, coeff)
        return cls(table, grading, {(sym,): value})

    # truncation
    def _truncate(self, mono: Monomial, c: Series) -> Optional[Series]:
        if c.table != self.table:
            raise StructuralError("EntryPoly coefficient lives on a different VarTable")
        if c.is_zero():
            return None
        g = self.grading
        if not g.admits(mono):
            return None
        if g.eps is None:
            return c
        budget = 2 * g.depth - g.weight(mono)
        if budget < 0:
            return None
        i = self.table.index(g.eps)
        if all(2 * e[i] <= budget for e in c.terms):
            return c
        kept = {e: v for e, v in c.terms.items() if 2 * e[i] <= budget}
        return Series._raw(self.table, kept, c.domain) if kept else None

    # structure
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def constant_term(self) -> Series:
        return self.terms.get((), Series.zero(self.table))

    def degree(self) -> int:
        return max((len(m) for m in self.terms), default=0)

    def _same(self, other: "EntryPoly"):
        if other.table != self.table or other.grading != self.grading:
            raise StructuralError("EntryPoly operands differ in VarTable or grading")

    # arithmetic
    def __add__(self, other) -> "EntryPoly":
        if not isinstance(other, EntryPoly):
            other = EntryPoly.const(self.table, self.grading, other)
        self._same(other)
        out = dict(self.terms)
        for mono, c in other.terms.items():
            prev = out.get(mono)
            v = c if prev is None else prev + c
            if v.is_zero():
                out.pop(mono, None)
            else:
                out[mono] = v
        return EntryPoly._raw(self.table, self.grading, out)

    __radd__ = __add__

    def __neg__(self) -> "EntryPoly":
        return EntryPoly._raw(self.table, self.grading, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "EntryPoly":
        if not isinstance(other, EntryPoly):
            other = EntryPoly.const(self.table, self.grading, other)
        return self + (-other)

    def scale(self, c) -> "EntryPoly":
        """Multiply by a scalar or by a Series (re-truncated)."""
        out = {}
        for mono, v in self.terms.items():
            w = v * c if isinstance(c, Series) else v.scale(c)
            w = self._truncate(mono, w)
            if w is not None:
                out[mono] = w
        return EntryPoly._raw(self.table, self.grading, out)

    def __mul__(self, other) -> "EntryPoly":
        if not isinstance(other, EntryPoly):
            return self.scale(other)
        self._same(other)
        out: dict[Monomial, Series] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = tuple(sorted(m1 + m2))
                if not self.grading.admits(mono):
                    continue
                c = self._truncate(mono, c1 * c2)
                if c is None:
                    continue
                prev = out.get(mono)
                out[mono] = c if prev is None else prev + c
        return EntryPoly._raw(
            self.table, self.grading, {m: c for m, c in out.items() if not c.is_zero()}
        )

    def __rmul__(self, other) -> "EntryPoly":
        return self.scale(other)

    def map_coefficients(self, fn) -> "EntryPoly":
        """Apply a Series -> Series map to every coefficient."""
        out = {}
        for mono, c in self.terms.items():
            v = self._truncate(mono, fn(c))
            if v is not None:
                out[mono] = v
        return EntryPoly._raw(self.table, self.grading, out)

    def exp(self) -> "EntryPoly":
        """exp of the entry part times series_exp of the entry-free part.

        The entry-free part must have no scalar constant term.
        """
        c = self.constant_term()
        g = self.grading
        entries = self
        if not c.is_zero():
            entries = EntryPoly._raw(self.table, g, {m: v for m, v in self.terms.items() if m})
        limit = 2 * g.depth + sum(g.degree_caps.values()) + sum(self.table.caps) + 1
        result = EntryPoly.const(self.table, g, 1)
        power = result
        for k in range(1, limit + 1):
            power = power * entries
            if power.is_zero():
                break
            result = result + power.scale(QQ(1, factorial(k)))
        else:
            if not (power * entries).is_zero():
                raise DomainError("EntryPoly exp: argument is not nilpotent under the grading")
        if c.is_zero():
            return result
        try:
            return result.scale(series_exp(c))
        except DomainError as e:
            raise DomainError(f"EntryPoly exp: entry-free part: {e}") from None

    def __repr__(self):
        parts = []
        for mono, c in sorted(self.terms.items()):
            parts.append(f"({c.pretty()})*" + "*".join(str(s) for s in mono) if mono else f"({c.pretty()})")
        return "EntryPoly(" + (" + ".join(parts) or "0") + ")"


def entry_matrix(
    table: VarTable, grading: Grading, kind: str, n: int, transpose: bool = False
) -> SeriesMatrix:
    """The n×n matrix of formal entries of one kind (optionally transposed)."""
    zero = EntryPoly.zero(table, grading)
    rows = []
    for i in range(1, n + 1):
        row = []
        for j in range(1, n + 1):
            a, b = (j, i) if transpose else (i, j)
            row.append(EntryPoly.symbol(table, grading, EntrySymbol(kind, a, b)))
        rows.append(row)
    return SeriesMatrix(rows, zero)


def scalar_matrix(
    table: VarTable, grading: Grading, diagonal: Sequence[Series]
) -> SeriesMatrix:
    """Diagonal matrix of Series lifted to constant EntryPolys."""
    zero = EntryPoly.zero(table, grading)
    return SeriesMatrix.diag([EntryPoly.const(table, grading, d) for d in diagonal], zero)


def identity_matrix(table: VarTable, grading: Grading, n: int) -> SeriesMatrix:
    zero = EntryPoly.zero(table, grading)
    return SeriesMatrix.identity(n, EntryPoly.const(table, grading, 1), zero)


def trace_power_sum(matrix: SeriesMatrix, powers: Iterable[int]) -> dict[int, object]:
    """tr(A^k) for the requested k."""
    wanted = sorted(set(powers))
    out = {}
    power = None
    for k in range(1, wanted[-1] + 1):
        power = matrix if power is None else power @ matrix
        if k in wanted:
            out[k] = power.trace()
    return out
