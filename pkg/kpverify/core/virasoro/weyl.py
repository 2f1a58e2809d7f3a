"""Normal-ordered Weyl algebra on the (q, s) polynomial ring.

A term ``(m, d)`` stands for q^m s^{m_0} ∂_q^d ∂_s^{d_0}: multiplications on
the left, derivatives on the right, with the same slot layout as
:class:`QPolynomial` keys. Products are normal-ordered by the Leibniz rule,
so compositions and conjugations are exact symbolic identities.

Terms whose multiplication weight exceeds the bound D, or whose derivative
weight does, act as zero on polynomials of weight <= D and are dropped.
Callers comparing compositions keep a margin above the weight they inspect,
since a dropped right factor can be lowered back by a left derivative.
"""

from itertools import product
from math import comb, perm
from typing import Mapping, Optional

from sympy.polys.domains import QQ

from kpverify.utils.errors import DomainError, StructuralError
from kpverify.core.constants import S, q_var
from kpverify.core.ring import format_scalar
from kpverify.core.symfun import QPolynomial, key_weight

Key = tuple[int, ...]
Term = tuple[Key, Key]


class WOperator:
    __slots__ = ("D", "terms")

    def __init__(self, D: int, terms: Optional[Mapping[Term, object]] = None):
        self.D = D
        out: dict[Term, object] = {}
        for (m, d), c in (terms or {}).items():
            if len(m) != D + 1 or len(d) != D + 1:
                raise StructuralError(f"Operator term {(m, d)} does not match weight bound {D}")
            if not c or key_weight(m) > D or key_weight(d) > D:
                continue
            key = (tuple(m), tuple(d))
            v = out.get(key, 0) + QQ.convert(c)
            if v:
                out[key] = v
            else:
                out.pop(key, None)
        self.terms = out

    # constructors
    @classmethod
    def zero(cls, D: int) -> "WOperator":
        return cls(D)

    @classmethod
    def identity(cls, D: int, c=1) -> "WOperator":
        z = (0,) * (D + 1)
        return cls(D, {(z, z): c})

    @classmethod
    def _single(cls, D: int, slot: int, power: int, derivative: bool, coeff) -> "WOperator":
        z = [0] * (D + 1)
        if slot > D:
            return cls.zero(D)
        e = list(z)
        e[slot] = power
        term = (tuple(z), tuple(e)) if derivative else (tuple(e), tuple(z))
        return cls(D, {term: coeff})

    @classmethod
    def mult_q(cls, D: int, k: int, power: int = 1, coeff=1) -> "WOperator":
        return cls._single(D, k, power, False, coeff)

    @classmethod
    def deriv_q(cls, D: int, k: int, times: int = 1, coeff=1) -> "WOperator":
        return cls._single(D, k, times, True, coeff)

    @classmethod
    def mult_s(cls, D: int, power: int = 1, coeff=1) -> "WOperator":
        return cls._single(D, 0, power, False, coeff)

    @classmethod
    def deriv_s(cls, D: int, times: int = 1, coeff=1) -> "WOperator":
        return cls._single(D, 0, times, True, coeff)

    @classmethod
    def multiplication(cls, f: QPolynomial) -> "WOperator":
        z = (0,) * (f.D + 1)
        return cls(f.D, {(key, z): c for key, c in f.terms.items()})

    # structure
    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, WOperator):
            return self.D == other.D and (self - other).is_zero()
        return NotImplemented

    def __hash__(self):
        return hash((self.D, frozenset((t, format_scalar(c)) for t, c in self.terms.items())))

    def _same(self, other: "WOperator"):
        if other.D != self.D:
            raise StructuralError(f"Operator weight bounds differ: {self.D} vs {other.D}")

    def max_lowering(self) -> int:
        """Largest weight drop of a single term (negative when every term raises)."""
        return max((key_weight(d) - key_weight(m) for m, d in self.terms), default=0)

    # arithmetic
    def __add__(self, other: "WOperator") -> "WOperator":
        self._same(other)
        merged = dict(self.terms)
        for t, c in other.terms.items():
            merged[t] = merged.get(t, 0) + c
        return WOperator(self.D, merged)

    def __neg__(self) -> "WOperator":
        return WOperator(self.D, {t: -c for t, c in self.terms.items()})

    def __sub__(self, other: "WOperator") -> "WOperator":
        return self + (-other)

    def scale(self, c) -> "WOperator":
        c = QQ.convert(c)
        return WOperator(self.D, {t: v * c for t, v in self.terms.items()})

    def __matmul__(self, other: "WOperator") -> "WOperator":
        """Composition ``self ∘ other``, normal-ordered."""
        self._same(other)
        out: dict[Term, object] = {}
        slots = range(self.D + 1)
        for (m1, d1), c1 in self.terms.items():
            for (m2, d2), c2 in other.terms.items():
                ranges = [range(min(d1[k], m2[k]) + 1) for k in slots]
                for j in product(*ranges):
                    weight = 1
                    for k in slots:
                        if j[k]:
                            weight *= comb(d1[k], j[k]) * perm(m2[k], j[k])
                    m = tuple(m1[k] + m2[k] - j[k] for k in slots)
                    d = tuple(d1[k] - j[k] + d2[k] for k in slots)
                    out[(m, d)] = out.get((m, d), 0) + c1 * c2 * weight
        return WOperator(self.D, out)

    def commutator(self, other: "WOperator") -> "WOperator":
        return self @ other - other @ self

    # action
    def apply(self, f: QPolynomial) -> QPolynomial:
        if f.D != self.D:
            raise StructuralError(f"Operator bound {self.D} does not match polynomial bound {f.D}")
        result = QPolynomial.zero(self.D)
        for (m, d), c in self.terms.items():
            g = f
            for k, times in enumerate(d):
                if times and not g.is_zero():
                    g = g.diff_s(times) if k == 0 else g.diff_q(k, times)
            if g.is_zero():
                continue
            for k, power in enumerate(m):
                if power:
                    g = g.times_s(power) if k == 0 else g.times_q(k, power)
            result = result + g.scale(c)
        return result

    def _bound(self) -> int:
        return 2 * self.D + 2

    def exp_apply(self, f: QPolynomial) -> QPolynomial:
        """exp(self)·f for an operator that is nilpotent on the weight-truncated ring."""
        result, term = f, f
        for n in range(1, self._bound() + 1):
            term = self.apply(term).scale(QQ(1, n))
            if term.is_zero():
                return result
            result = result + term
        raise DomainError("Operator exponential did not terminate on the truncated ring")

    def conjugate(self, op: "WOperator") -> "WOperator":
        """e^self · op · e^{-self} = Σ ad_self^n(op)/n!."""
        self._same(op)
        result, term = op, op
        for n in range(1, self._bound() + 1):
            term = self.commutator(term).scale(QQ(1, n))
            if term.is_zero():
                return result
            result = result + term
        raise DomainError("Adjoint series did not terminate on the truncated ring")

    def with_bound(self, D: int) -> "WOperator":
        out = {}
        for (m, d), c in self.terms.items():
            if any(m[D + 1:]) or any(d[D + 1:]):
                continue
            pad = (0,) * max(0, D + 1 - len(m))
            out[(m[: D + 1] + pad, d[: D + 1] + pad)] = c
        return WOperator(D, out)

    def pretty(self) -> str:
        if not self.terms:
            return "0"
        names = [S] + [q_var(k) for k in range(1, self.D + 1)]
        parts = []
        for (m, d), c in sorted(self.terms.items()):
            word = [f"{names[k]}^{p}" if p > 1 else names[k] for k, p in enumerate(m) if p]
            word += [f"d/d{names[k]}^{p}" if p > 1 else f"d/d{names[k]}" for k, p in enumerate(d) if p]
            parts.append(f"({format_scalar(c)})" + ("*" + "*".join(word) if word else ""))
        return " + ".join(parts)

    def __repr__(self):
        return f"WOperator(D={self.D}: {self.pretty()})"
