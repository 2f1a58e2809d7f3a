"""Gaussian ensembles: pair values (propagators without ε) and contractions."""

from typing import Optional, Sequence

from sympy.polys.domains import QQ

from kpverify.utils.errors import DomainError, StructuralError
from kpverify.core.constants import EPS, u_var, x_var
from kpverify.core.ring import Series, VarTable
from .symbols import GINIBRE, GINIBRE_CONJ, HERMITIAN, EntrySymbol, Monomial


class Ensemble:
    """Base class: memoized Wick contraction of monomials in this ensemble's kinds."""

    kinds: frozenset = frozenset()

    def __init__(self, dim: int, eps: Optional[str] = None):
        if dim < 1:
            raise StructuralError(f"Ensemble dimension must be at least 1, got {dim}")
        self.dim = dim
        self.eps = eps
        self._memo: dict[Monomial, object] = {}

    # value arithmetic is QQ in numeric mode and Series in symbolic mode
    def one(self):
        return QQ(1)

    def zero(self):
        return QQ(0)

    def pair(self, a: EntrySymbol, b: EntrySymbol):
        raise NotImplementedError

    def _check(self, sym: EntrySymbol):
        if sym.kind not in self.kinds:
            raise StructuralError(f"{sym} does not belong to {type(self).__name__}")
        if not (1 <= sym.i <= self.dim and 1 <= sym.j <= self.dim):
            raise StructuralError(f"{sym} out of range for dimension {self.dim}")

    def propagator(self, a: EntrySymbol, b: EntrySymbol, table: VarTable) -> Series:
        """⟨a b⟩ as a Series, with one ε when the ensemble is graded."""
        if a.kind not in self.kinds or b.kind not in self.kinds:
            return Series.zero(table)
        self._check(a)
        self._check(b)
        v = self.pair(a, b)
        value = v if isinstance(v, Series) else Series.const(table, v)
        return value.shift(self.eps, 1) if self.eps else value

    def contract(self, mono: Monomial):
        """Σ over perfect pairings of the product of pair values; ``mono`` sorted."""
        if len(mono) % 2:
            return self.zero()
        if not mono:
            return self.one()
        hit = self._memo.get(mono)
        if hit is not None:
            return hit
        first, rest = mono[0], mono[1:]
        total = self.zero()
        seen = set()
        for idx, partner in enumerate(rest):
            if partner in seen:
                continue
            seen.add(partner)
            v = self.pair(first, partner)
            if not v:
                continue
            sub = self.contract(rest[:idx] + rest[idx + 1:])
            if not sub:
                continue
            total = total + (v * sub) * rest.count(partner)
        self._memo[mono] = total
        return total


class HermitianEnsemble(Ensemble):
    """exp(-½ tr H²Λ): ⟨H_ij H_kl⟩ = 2 δ_il δ_jk / (λ_i + λ_j).

    Numeric mode takes distinct positive rational λ. Symbolic mode (``lam``
    None) writes the pair values in x_i = 1/λ_i and u_ij = 1/(x_i + x_j), both
    variables of ``table``.
    """

    kinds = frozenset({HERMITIAN})

    def __init__(
        self,
        M: int,
        lam: Optional[Sequence] = None,
        eps: Optional[str] = EPS,
        table: Optional[VarTable] = None,
    ):
        super().__init__(M, eps)
        if lam is not None:
            lam = tuple(QQ.convert(v) for v in lam)
            if len(lam) != M:
                raise StructuralError(f"Expected {M} eigenvalues, got {len(lam)}")
            if any(v <= 0 for v in lam):
                raise DomainError("Eigenvalues must be positive")
            if len(set(lam)) != M:
                raise DomainError("Eigenvalues must be pairwise distinct")
        elif table is None:
            raise StructuralError("Symbolic Hermitian ensemble needs a VarTable with x and u variables")
        self.lam = lam
        self.table = table

    @property
    def symbolic(self) -> bool:
        return self.lam is None

    def one(self):
        return Series.one(self.table) if self.symbolic else QQ(1)

    def zero(self):
        return Series.zero(self.table) if self.symbolic else QQ(0)

    def pair(self, a: EntrySymbol, b: EntrySymbol):
        if a.i != b.j or a.j != b.i:
            return self.zero()
        i, j = a.i, a.j
        if not self.symbolic:
            return QQ(2) / (self.lam[i - 1] + self.lam[j - 1])
        if i == j:
            return Series.var(self.table, x_var(i))
        return Series.monomial(self.table, 2, **{x_var(i): 1, x_var(j): 1, u_var(i, j): 1})


class GinibreEnsemble(Ensemble):
    """exp(-½ tr Z Z̄^t) on N×N complex matrices: ⟨Z_ab Z̄_cd⟩ = 2 δ_ac δ_bd."""

    kinds = frozenset({GINIBRE, GINIBRE_CONJ})

    def __init__(self, N: int, eps: Optional[str] = None):
        super().__init__(N, eps)

    def pair(self, a: EntrySymbol, b: EntrySymbol):
        if a.kind == b.kind:
            return QQ(0)
        if a.i == b.i and a.j == b.j:
            return QQ(2)
        return QQ(0)

    def contract(self, mono: Monomial):
        n_z = sum(1 for s in mono if s.kind == GINIBRE)
        if 2 * n_z != len(mono):
            return QQ(0)
        return super().contract(mono)
