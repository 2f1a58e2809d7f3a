"""Polynomials in the times q_1..q_D and the boundary variable s.

weight(q_k) = k and weight(s) = 1; everything above the weight bound D is
dropped, so products and operator actions stay inside the ring.
"""

from typing import Iterable, Mapping, Optional, Sequence

from sympy.polys.domains import QQ

from kpverify.utils.errors import StructuralError
from kpverify.core.constants import S, q_var
from kpverify.core.ring import format_scalar, parse_scalar

Key = tuple[int, ...]  # (s exponent, e_1, ..., e_D)


def key_weight(key: Key) -> int:
    return key[0] + sum(k * e for k, e in enumerate(key[1:], start=1))


def partition_of(key: Key) -> tuple[int, ...]:
    parts = []
    for k in range(len(key) - 1, 0, -1):
        parts.extend([k] * key[k])
    return tuple(parts)


def key_of(D: int, partition: Sequence[int] = (), s_power: int = 0) -> Key:
    e = [0] * (D + 1)
    e[0] = s_power
    for part in partition:
        if not 1 <= part <= D:
            raise StructuralError(f"Part {part} outside 1..{D}")
        e[part] += 1
    return tuple(e)


class QPolynomial:
    __slots__ = ("D", "terms")

    def __init__(self, D: int, terms: Optional[Mapping[Key, object]] = None):
        self.D = D
        out = {}
        for key, c in (terms or {}).items():
            if len(key) != D + 1:
                raise StructuralError(f"Key {key} does not match weight bound {D}")
            if c and key_weight(key) <= D:
                out[tuple(key)] = QQ.convert(c)
        self.terms: dict[Key, object] = out

    @classmethod
    def _raw(cls, D, terms) -> "QPolynomial":
        obj = cls.__new__(cls)
        obj.D, obj.terms = D, terms
        return obj

    # constructors
    @classmethod
    def zero(cls, D: int) -> "QPolynomial":
        return cls._raw(D, {})

    @classmethod
    def const(cls, D: int, c=1) -> "QPolynomial":
        return cls(D, {key_of(D): c})

    @classmethod
    def q(cls, D: int, k: int, power: int = 1, coeff=1) -> "QPolynomial":
        if k > D:
            return cls.zero(D)
        return cls(D, {key_of(D, [k] * power): coeff})

    @classmethod
    def s(cls, D: int, power: int = 1, coeff=1) -> "QPolynomial":
        return cls(D, {key_of(D, (), power): coeff})

    @classmethod
    def from_partitions(cls, D: int, rows: Mapping[tuple, object]) -> "QPolynomial":
        """{(partition, s_power): coefficient}."""
        return cls(D, {key_of(D, p, a): c for (p, a), c in rows.items()})

    # structure
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, QPolynomial):
            return self.D == other.D and (self - other).is_zero()
        return NotImplemented

    def __hash__(self):
        return hash((self.D, frozenset((k, format_scalar(c)) for k, c in self.terms.items())))

    def _same(self, other: "QPolynomial"):
        if other.D != self.D:
            raise StructuralError(f"Weight bounds differ: {self.D} vs {other.D}")

    def coeff(self, partition: Sequence[int] = (), s_power: int = 0):
        return self.terms.get(key_of(self.D, partition, s_power), QQ(0))

    def max_weight(self) -> int:
        return max((key_weight(k) for k in self.terms), default=0)

    def restrict(self, weight: int) -> "QPolynomial":
        return QPolynomial._raw(self.D, {k: c for k, c in self.terms.items() if key_weight(k) <= weight})

    def homogeneous(self, weight: int) -> "QPolynomial":
        return QPolynomial._raw(self.D, {k: c for k, c in self.terms.items() if key_weight(k) == weight})

    def with_bound(self, D: int) -> "QPolynomial":
        """Re-home under another weight bound."""
        out = {}
        for k, c in self.terms.items():
            if any(k[i] for i in range(D + 1, len(k))):
                continue
            nk = tuple(k[: D + 1]) + (0,) * max(0, D + 1 - len(k))
            out[nk] = c
        return QPolynomial(D, out)

    # arithmetic
    def __add__(self, other) -> "QPolynomial":
        if not isinstance(other, QPolynomial):
            other = QPolynomial.const(self.D, other)
        self._same(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return QPolynomial._raw(self.D, out)

    __radd__ = __add__

    def __neg__(self) -> "QPolynomial":
        return QPolynomial._raw(self.D, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other) -> "QPolynomial":
        if not isinstance(other, QPolynomial):
            other = QPolynomial.const(self.D, other)
        return self + (-other)

    def scale(self, c) -> "QPolynomial":
        c = QQ.convert(c)
        if not c:
            return QPolynomial.zero(self.D)
        return QPolynomial._raw(self.D, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other) -> "QPolynomial":
        if not isinstance(other, QPolynomial):
            return self.scale(other)
        self._same(other)
        D = self.D
        out: dict = {}
        for k1, c1 in self.terms.items():
            w1 = key_weight(k1)
            for k2, c2 in other.terms.items():
                if w1 + key_weight(k2) > D:
                    continue
                k = tuple(a + b for a, b in zip(k1, k2))
                out[k] = out.get(k, 0) + c1 * c2
        return QPolynomial._raw(D, {k: c for k, c in out.items() if c})

    __rmul__ = __mul__

    # calculus
    def _slot(self, k: int) -> int:
        if k < 1:
            raise StructuralError(f"q index must be positive, got {k}")
        return k

    def diff_q(self, k: int, times: int = 1) -> "QPolynomial":
        """∂^times/∂q_k^times."""
        if k > self.D:
            return QPolynomial.zero(self.D)
        return self._diff(self._slot(k), times)

    def diff_s(self, times: int = 1) -> "QPolynomial":
        return self._diff(0, times)

    def _diff(self, slot: int, times: int) -> "QPolynomial":
        out = {}
        for key, c in self.terms.items():
            p = key[slot]
            if p < times:
                continue
            factor = 1
            for j in range(times):
                factor *= p - j
            nk = key[:slot] + (p - times,) + key[slot + 1:]
            out[nk] = c * factor
        return QPolynomial._raw(self.D, out)

    def times_q(self, k: int, power: int = 1) -> "QPolynomial":
        if power == 0:
            return self
        if k > self.D:
            return QPolynomial.zero(self.D)
        return self._times(self._slot(k), k * power, power)

    def times_s(self, power: int = 1) -> "QPolynomial":
        return self._times(0, power, power)

    def _times(self, slot: int, weight: int, power: int) -> "QPolynomial":
        out = {}
        for key, c in self.terms.items():
            if key_weight(key) + weight > self.D:
                continue
            out[key[:slot] + (key[slot] + power,) + key[slot + 1:]] = c
        return QPolynomial._raw(self.D, out)

    # evaluation
    def evaluate(self, q_values: Sequence, s_value=None):
        """Value at q_k = q_values[k-1]; returns {s_power: value} unless s is given."""
        by_s: dict[int, object] = {}
        for key, c in self.terms.items():
            v = c
            for k, e in enumerate(key[1:], start=1):
                if e:
                    v = v * QQ.convert(q_values[k - 1]) ** e
            by_s[key[0]] = by_s.get(key[0], QQ(0)) + v
        if s_value is None:
            return {a: v for a, v in by_s.items() if v}
        s_value = QQ.convert(s_value)
        return sum((v * s_value**a for a, v in by_s.items()), QQ(0))

    def compose(self, values: Sequence["QPolynomial"]) -> "QPolynomial":
        """Substitute the q_k slots by QPolynomials (s is left alone)."""
        D = values[0].D if values else self.D
        out = QPolynomial.zero(D)
        for key, c in self.terms.items():
            term = QPolynomial.s(D, key[0], c)
            for k, e in enumerate(key[1:], start=1):
                for _ in range(e):
                    term = term * values[k - 1]
            out = out + term
        return out

    # serialization
    def to_json(self) -> list[dict]:
        rows = []
        for key, c in sorted(self.terms.items(), key=lambda kv: (key_weight(kv[0]), kv[0])):
            rows.append(
                {"partition": list(partition_of(key)), "s_power": key[0], "coefficient": format_scalar(c)}
            )
        return rows

    @classmethod
    def from_json(cls, D: int, rows: Iterable[dict]) -> "QPolynomial":
        return cls.from_partitions(
            D, {(tuple(r["partition"]), r["s_power"]): parse_scalar(r["coefficient"]) for r in rows}
        )

    def pretty(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for key, c in sorted(self.terms.items(), key=lambda kv: (key_weight(kv[0]), kv[0])):
            mono = [f"{S}^{key[0]}" if key[0] > 1 else S] if key[0] else []
            mono += [
                f"{q_var(k)}^{e}" if e > 1 else q_var(k) for k, e in enumerate(key[1:], start=1) if e
            ]
            coeff = format_scalar(c)
            parts.append(f"({coeff})*" + "*".join(mono) if mono else f"({coeff})")
        return " + ".join(parts)

    def __repr__(self):
        return f"QPolynomial(D={self.D}: {self.pretty()})"
