"""Sparse truncated multivariate formal series.

A :class:`Series` is a map from exponent tuples to exact scalars over a
:class:`VarTable`. Every variable carries its own degree cap (truncation is
rectangular) and a minimum exponent, which may be negative only for variables
declared Laurent. Products drop every term that leaves the caps, so arithmetic
is closed. Coefficients live in ``QQ`` or, for complex-enabled computations,
``QQ_I``; mixing the two promotes to ``QQ_I``.

Laurent truncation is only coherent when callers size the caps for the later
multiplications they perform; a product that falls below a minimum exponent
raises instead of being silently dropped.
"""

from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Union

from sympy.polys.domains import QQ, QQ_I

from kpverify.utils.errors import DomainError, StructuralError
from .scalar import coerce, format_scalar, is_complex, parse_scalar, unify, domain_of


def _is_scalar(x) -> bool:
    return isinstance(x, (int, QQ.dtype)) or is_complex(x)


@dataclass(frozen=True)
class Var:
    name: str
    cap: int
    min_exp: int = 0
    laurent: bool = False


class VarTable:
    """Ordered, immutable list of variables with caps and minimum exponents."""

    __slots__ = ("vars", "names", "caps", "mins", "_index", "_hash")

    def __init__(self, variables: Iterable[Union[Var, tuple]]):
        vs = []
        for v in variables:
            if not isinstance(v, Var):
                v = Var(*v)
            if v.cap < 0:
                raise StructuralError(f"Negative cap for variable {v.name}")
            if v.min_exp > 0:
                raise StructuralError(f"Minimum exponent of {v.name} must be <= 0")
            if v.min_exp < 0 and not v.laurent:
                raise StructuralError(f"Variable {v.name} is not declared Laurent")
            vs.append(v)
        self.vars = tuple(vs)
        self.names = tuple(v.name for v in vs)
        if len(set(self.names)) != len(self.names):
            raise StructuralError(f"Duplicate variable names in {self.names}")
        self.caps = tuple(v.cap for v in vs)
        self.mins = tuple(v.min_exp for v in vs)
        self._index = {n: i for i, n in enumerate(self.names)}
        self._hash = hash(self.vars)

    @classmethod
    def of(cls, **caps: int) -> "VarTable":
        """Shorthand for non-Laurent tables: ``VarTable.of(eps=3, s=2)``."""
        return cls(Var(name, cap) for name, cap in caps.items())

    def __len__(self):
        return len(self.vars)

    def __iter__(self):
        return iter(self.vars)

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def __eq__(self, other):
        return isinstance(other, VarTable) and self.vars == other.vars

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return "VarTable(" + ", ".join(
            f"{v.name}<={v.cap}" + (f">={v.min_exp}" if v.min_exp else "") for v in self.vars
        ) + ")"

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise StructuralError(f"Unknown variable {name!r} in {self!r}") from None

    def cap(self, name: str) -> int:
        return self.caps[self.index(name)]

    def admits(self, exps: tuple) -> bool:
        for e, c, m in zip(exps, self.caps, self.mins):
            if e > c or e < m:
                return False
        return True

    def with_caps(self, **caps: int) -> "VarTable":
        return VarTable(
            Var(v.name, caps.get(v.name, v.cap), v.min_exp, v.laurent) for v in self.vars
        )

    def extended(self, *extra: Union[Var, tuple]) -> "VarTable":
        return VarTable(list(self.vars) + list(extra))

    def zero_exps(self) -> tuple:
        return (0,) * len(self.vars)

    def exps(self, **powers: int) -> tuple:
        e = [0] * len(self.vars)
        for name, p in powers.items():
            e[self.index(name)] = p
        return tuple(e)

    def to_json(self) -> list[dict]:
        return [
            {"name": v.name, "cap": v.cap, "min": v.min_exp, "laurent": v.laurent} for v in self.vars
        ]


def nilpotency_bound(table: VarTable, exponents: Iterable[tuple]) -> int:
    """Smallest k found such that any product of k terms with these exponents leaves the caps.

    A variable dividing every term gives ``cap // min_exponent``. When no
    exponent is negative the total degree gives a second bound. Negative
    exponents are only accepted with a dividing variable.
    """
    exponents = list(exponents)
    if not exponents:
        return 0
    if any(not any(e) for e in exponents):
        raise DomainError("Series has a constant part; no nilpotency bound")
    best = None
    for i, cap in enumerate(table.caps):
        lowest = min(e[i] for e in exponents)
        if lowest >= 1:
            k = cap // lowest + 1
            best = k if best is None else min(best, k)
    if all(p >= 0 for e in exponents for p in e):
        k = sum(table.caps) // min(sum(e) for e in exponents) + 1
        best = k if best is None else min(best, k)
    if best is None:
        raise DomainError("Negative exponents and no variable dividing every term; no nilpotency bound")
    return best


class Series:
    """Truncated multivariate formal series with exact coefficients."""

    __slots__ = ("table", "terms", "domain")

    def __init__(self, table: VarTable, terms: Optional[Mapping[tuple, object]] = None, domain=None):
        self.table = table
        self.domain = domain or QQ
        out = {}
        if terms:
            K = self.domain
            for exps, c in terms.items():
                if len(exps) != len(table):
                    raise StructuralError(f"Exponent {exps} does not match {table!r}")
                if not c:
                    continue
                if not table.admits(exps):
                    if any(e < m for e, m in zip(exps, table.mins)):
                        raise DomainError(f"Exponent {exps} below the declared minimum of {table!r}")
                    continue
                out[tuple(exps)] = coerce(c, K)
        self.terms = out

    @classmethod
    def _raw(cls, table, terms, domain) -> "Series":
        obj = cls.__new__(cls)
        obj.table = table
        obj.terms = terms
        obj.domain = domain
        return obj

    # constructors
    @classmethod
    def zero(cls, table: VarTable, domain=None) -> "Series":
        return cls._raw(table, {}, domain or QQ)

    @classmethod
    def const(cls, table: VarTable, c, domain=None) -> "Series":
        K = unify(domain or QQ, domain_of(c))
        return cls(table, {table.zero_exps(): c}, K)

    @classmethod
    def one(cls, table: VarTable, domain=None) -> "Series":
        return cls.const(table, 1, domain)

    @classmethod
    def var(cls, table: VarTable, name: str, power: int = 1, coeff=1, domain=None) -> "Series":
        K = unify(domain or QQ, domain_of(coeff))
        return cls(table, {table.exps(**{name: power}): coeff}, K)

    @classmethod
    def monomial(cls, table: VarTable, coeff=1, domain=None, **powers: int) -> "Series":
        K = unify(domain or QQ, domain_of(coeff))
        return cls(table, {table.exps(**powers): coeff}, K)

    # structure
    def _check(self, other: "Series"):
        if self.table != other.table:
            raise StructuralError(f"Incompatible VarTables: {self.table!r} vs {other.table!r}")

    def to_domain(self, K) -> "Series":
        if K == self.domain:
            return self
        return Series._raw(self.table, {e: coerce(c, K) for e, c in self.terms.items()}, K)

    def _lift(self, other) -> tuple["Series", "Series", object]:
        self._check(other)
        K = unify(self.domain, other.domain)
        return self.to_domain(K), other.to_domain(K), K

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, Series):
            if self.table != other.table:
                return False
            return (self - other).is_zero()
        if _is_scalar(other):
            return (self - Series.const(self.table, other)).is_zero()
        return NotImplemented

    def __hash__(self):
        return hash((self.table, frozenset((e, format_scalar(c)) for e, c in self.terms.items())))

    def __repr__(self):
        return f"Series({self.pretty()})"

    # arithmetic
    def __neg__(self) -> "Series":
        return Series._raw(self.table, {e: -c for e, c in self.terms.items()}, self.domain)

    def __add__(self, other) -> "Series":
        if not isinstance(other, Series):
            other = Series.const(self.table, other, self.domain)
        a, b, K = self._lift(other)
        out = dict(a.terms)
        for e, c in b.terms.items():
            v = out.get(e)
            v = c if v is None else v + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Series._raw(self.table, out, K)

    __radd__ = __add__

    def __sub__(self, other) -> "Series":
        if not isinstance(other, Series):
            other = Series.const(self.table, other, self.domain)
        return self + (-other)

    def __rsub__(self, other) -> "Series":
        return (-self) + other

    def scale(self, c) -> "Series":
        K = unify(self.domain, domain_of(c))
        c = coerce(c, K)
        if not c:
            return Series.zero(self.table, K)
        src = self.to_domain(K)
        return Series._raw(self.table, {e: v * c for e, v in src.terms.items()}, K)

    def __mul__(self, other) -> "Series":
        if not isinstance(other, Series):
            if not _is_scalar(other):
                return NotImplemented
            return self.scale(other)
        a, b, K = self._lift(other)
        caps, mins = self.table.caps, self.table.mins
        laurent = any(mins)
        out: dict = {}
        get = out.get
        for ea, ca in a.terms.items():
            for eb, cb in b.terms.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                if any(v > c for v, c in zip(e, caps)):
                    continue
                if laurent and any(v < m for v, m in zip(e, mins)):
                    raise DomainError(f"Product exponent {e} below the minimum of {self.table!r}")
                prev = get(e)
                out[e] = ca * cb if prev is None else prev + ca * cb
        return Series._raw(self.table, {e: c for e, c in out.items() if c}, K)

    def __rmul__(self, other) -> "Series":
        return self.scale(other)

    def __truediv__(self, other) -> "Series":
        if isinstance(other, Series):
            from .elementary import series_inv

            return self * series_inv(other)
        return self.scale(coerce(1, domain_of(other)) / other)

    def __pow__(self, k: int) -> "Series":
        if k < 0:
            from .elementary import series_inv

            return series_inv(self) ** (-k)
        result = Series.one(self.table, self.domain)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # coefficient access
    def coeff(self, exps: Union[tuple, Mapping[str, int], None] = None, **powers: int):
        if exps is None:
            exps = self.table.exps(**powers)
        elif isinstance(exps, Mapping):
            exps = self.table.exps(**exps)
        return self.terms.get(tuple(exps), self.domain.zero)

    def constant_term(self):
        return self.terms.get(self.table.zero_exps(), self.domain.zero)

    def without_constant(self) -> "Series":
        z = self.table.zero_exps()
        return Series._raw(self.table, {e: c for e, c in self.terms.items() if e != z}, self.domain)

    def min_degree(self, name: str) -> Optional[int]:
        i = self.table.index(name)
        return min((e[i] for e in self.terms), default=None)

    def max_degree(self, name: str) -> Optional[int]:
        i = self.table.index(name)
        return max((e[i] for e in self.terms), default=None)

    def slice(self, name: str, power: int) -> "Series":
        """Coefficient of ``name**power`` as a series with that variable set to 0."""
        i = self.table.index(name)
        out = {}
        for e, c in self.terms.items():
            if e[i] == power:
                out[e[:i] + (0,) + e[i + 1:]] = c
        return Series._raw(self.table, out, self.domain)

    # calculus
    def derivative(self, name: str, times: int = 1) -> "Series":
        i = self.table.index(name)
        out = {}
        for e, c in self.terms.items():
            p = e[i]
            factor = 1
            for j in range(times):
                factor *= p - j
            if factor == 0:
                continue
            ne = e[:i] + (p - times,) + e[i + 1:]
            if not self.table.admits(ne):
                raise DomainError(f"Derivative leaves the declared range of {name}")
            out[ne] = c * factor
        return Series._raw(self.table, out, self.domain)

    def shift(self, name: str, k: int) -> "Series":
        """Multiply by ``name**k`` (k may be negative for Laurent variables)."""
        i = self.table.index(name)
        out = {}
        for e, c in self.terms.items():
            ne = e[:i] + (e[i] + k,) + e[i + 1:]
            if ne[i] < self.table.mins[i]:
                raise DomainError(f"Shift by {name}^{k} leaves the declared minimum")
            if ne[i] <= self.table.caps[i]:
                out[ne] = c
        return Series._raw(self.table, out, self.domain)

    def at_zero(self, name: str) -> "Series":
        i = self.table.index(name)
        if any(e[i] < 0 for e in self.terms):
            raise DomainError(f"Cannot set {name}=0 with negative powers present")
        return self.slice(name, 0)

    def substitute(self, name: str, value) -> "Series":
        """Replace a variable by a scalar or by a series on the same table.

        The substituted series must not itself contain ``name``.
        """
        i = self.table.index(name)
        if isinstance(value, Series):
            self._check(value)
            if value.terms and value.max_degree(name):
                raise StructuralError(f"Substituted value still contains {name}")
        if any(e[i] < 0 for e in self.terms):
            raise DomainError(f"Cannot substitute into negative powers of {name}")
        by_power: dict[int, dict] = {}
        for e, c in self.terms.items():
            by_power.setdefault(e[i], {})[e[:i] + (0,) + e[i + 1:]] = c
        result = Series.zero(self.table, self.domain)
        top = max(by_power, default=0)
        for p in range(top, -1, -1):
            result = result * value if p != top else result
            chunk = by_power.get(p)
            if chunk:
                result = result + Series._raw(self.table, chunk, self.domain)
        return result

    def evaluate(self, assignment: Mapping[str, object]) -> "Series":
        out = self
        for name, value in assignment.items():
            out = out.substitute(name, value)
        return out

    def scalar_value(self):
        """The single constant coefficient of a series with no variable dependence."""
        for e in self.terms:
            if any(e):
                raise StructuralError("Series still depends on its variables")
        return self.constant_term()

    # truncation and re-homing
    def restrict(self, **caps: int) -> "Series":
        table = self.table.with_caps(**caps)
        return Series(table, self.terms, self.domain)

    def truncate(self, **caps: int) -> "Series":
        """Drop terms above the given caps but keep the table."""
        idx = [(self.table.index(n), c) for n, c in caps.items()]
        out = {e: c for e, c in self.terms.items() if all(e[i] <= cap for i, cap in idx)}
        return Series._raw(self.table, out, self.domain)

    def embed(self, table: VarTable) -> "Series":
        """Re-home into ``table``; variables missing from ``table`` must not occur."""
        positions = []
        for v in self.table.vars:
            positions.append(table.index(v.name) if v.name in table else None)
        out = {}
        width = len(table)
        for e, c in self.terms.items():
            ne = [0] * width
            for k, p in enumerate(positions):
                if p is None:
                    if e[k]:
                        raise StructuralError(f"Variable {self.table.names[k]} missing from target table")
                    continue
                ne[p] = e[k]
            out[tuple(ne)] = c
        return Series(table, out, self.domain)

    def map_coefficients(self, fn, domain=None) -> "Series":
        K = domain or self.domain
        return Series(self.table, {e: fn(c) for e, c in self.terms.items()}, K)

    # complex helpers
    def is_real(self) -> bool:
        return self.domain == QQ or all(c.y == 0 for c in self.terms.values())

    def real(self) -> "Series":
        if self.domain == QQ:
            return self
        return Series(self.table, {e: c.x for e, c in self.terms.items()}, QQ)

    def imag(self) -> "Series":
        if self.domain == QQ:
            return Series.zero(self.table)
        return Series(self.table, {e: c.y for e, c in self.terms.items()}, QQ)

    # serialization
    def sorted_terms(self) -> list[tuple[tuple, object]]:
        return sorted(self.terms.items(), key=lambda kv: kv[0])

    def to_json(self) -> list[dict]:
        return [
            {"exponents": dict(zip(self.table.names, e)), "coefficient": format_scalar(c)}
            for e, c in self.sorted_terms()
        ]

    @classmethod
    def from_json(cls, table: VarTable, rows: list[dict]) -> "Series":
        terms = {}
        K = QQ
        for row in rows:
            c = parse_scalar(row["coefficient"])
            K = unify(K, domain_of(c))
            terms[table.exps(**row["exponents"])] = c
        return cls(table, terms, K)

    def pretty(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                f"{n}^{p}" if p != 1 else n for n, p in zip(self.table.names, e) if p
            )
            coeff = format_scalar(c)
            parts.append(f"({coeff})*{mono}" if mono else f"({coeff})")
        return " + ".join(parts)
