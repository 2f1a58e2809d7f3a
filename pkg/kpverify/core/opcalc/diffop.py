"""Formal differential operators acting on truncated series.

A DiffOp is a finite sum of ``coefficient * word`` where a word is a product
of basic derivations: ``∂/∂v`` and the Λ-derivation ``L_i = λ_i^{-1}∂/∂λ_i``,
which on ``x_i = λ_i^{-1}`` reads ``-x_i³ ∂/∂x_i``. Words act right to left.
"""

from typing import Iterable, NamedTuple, Sequence, Union

from sympy.polys.domains import QQ

from kpverify.config import LOG
from kpverify.utils.errors import CertificateError, DomainError, StructuralError
from kpverify.core.ring import Series, VarTable, format_scalar

DERIVATIVE = "d"
LAMBDA_DERIVATION = "L"


class Letter(NamedTuple):
    kind: str
    var: str

    def __str__(self):
        return f"d/d{self.var}" if self.kind == DERIVATIVE else f"L[{self.var}]"


Word = tuple[Letter, ...]


def _apply_letter(letter: Letter, f: Series) -> Series:
    if letter.kind == DERIVATIVE:
        return f.derivative(letter.var)
    i = f.table.index(letter.var)
    cap = f.table.caps[i]
    out = {}
    for e, c in f.terms.items():
        n = e[i]
        if n == 0 or n + 2 > cap:
            continue
        out[e[:i] + (n + 2,) + e[i + 1:]] = c * (-n)
    return Series(f.table, out, f.domain)


def apply_word(word: Word, f: Series) -> Series:
    for letter in reversed(word):
        if f.is_zero():
            break
        f = _apply_letter(letter, f)
    return f


class DiffOp:
    """Linear combination of derivation words with scalar or Series coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Iterable[tuple[object, Sequence[Letter]]] = ()):
        self.terms: list[tuple[object, Word]] = []
        for c, word in terms:
            if isinstance(c, Series) and c.is_zero():
                continue
            if not isinstance(c, Series) and not c:
                continue
            self.terms.append((c, tuple(Letter(*w) for w in word)))

    @classmethod
    def d(cls, var: str, times: int = 1, coeff=1) -> "DiffOp":
        return cls([(coeff, (Letter(DERIVATIVE, var),) * times)])

    @classmethod
    def lam(cls, xvar: str, coeff=1) -> "DiffOp":
        """The Λ-derivation λ^{-1}∂/∂λ written on x = λ^{-1}."""
        return cls([(coeff, (Letter(LAMBDA_DERIVATION, xvar),))])

    @classmethod
    def trace_lambda(cls, xvars: Sequence[str]) -> "DiffOp":
        """tr Λ^{-1}∂/∂Λ."""
        return cls([(1, (Letter(LAMBDA_DERIVATION, x),)) for x in xvars])

    def __add__(self, other: "DiffOp") -> "DiffOp":
        return DiffOp(self.terms + other.terms)

    def __neg__(self) -> "DiffOp":
        return self.scale(-1)

    def __sub__(self, other: "DiffOp") -> "DiffOp":
        return self + (-other)

    def scale(self, c) -> "DiffOp":
        return DiffOp((coef * c, w) for coef, w in self.terms)

    def variables(self) -> set[str]:
        return {letter.var for _, w in self.terms for letter in w}

    def __matmul__(self, other: "DiffOp") -> "DiffOp":
        """Composition ``self ∘ other``.

        Only defined when the words of ``self`` do not act on the coefficients
        of ``other``; otherwise a Leibniz expansion would be needed.
        """
        out = []
        for c1, w1 in self.terms:
            touched = {letter.var for letter in w1}
            for c2, w2 in other.terms:
                if isinstance(c2, Series):
                    for name in touched:
                        if name in c2.table and c2.max_degree(name):
                            raise StructuralError(
                                f"Composition needs a Leibniz rule: {name} occurs in a coefficient"
                            )
                out.append((_times(c1, c2), w1 + w2))
        return DiffOp(out)

    def apply(self, f: Series) -> Series:
        result = Series.zero(f.table, f.domain)
        for c, word in self.terms:
            g = apply_word(word, f)
            if g.is_zero():
                continue
            if isinstance(c, Series):
                if c.table != f.table:
                    raise StructuralError("Operator coefficient lives on a different VarTable")
                result = result + c * g
            else:
                result = result + g.scale(c)
        return result

    def _shift(self, weights: dict[str, int], coeff, word: Word) -> int:
        shift = 0
        for letter in word:
            w = weights.get(letter.var, 0)
            shift += -w if letter.kind == DERIVATIVE else 2 * w
        if isinstance(coeff, Series):
            best = None
            for e in coeff.terms:
                s = sum(weights.get(n, 0) * p for n, p in zip(coeff.table.names, e))
                best = s if best is None else max(best, s)
            shift += best or 0
        return shift

    def certificate(self, table: VarTable) -> dict[str, int]:
        """A non-negative weight vector under which every term lowers the weighted degree.

        Unit vectors on the derivative variables are tried first, then the
        all-ones vector on them.
        """
        names = sorted(n for n in self.variables() if n in table)
        missing = self.variables() - set(names)
        if missing:
            raise StructuralError(f"Operator variables {sorted(missing)} not in {table!r}")
        candidates = [{n: 1} for n in names] + ([{n: 1 for n in names}] if len(names) > 1 else [])
        for weights in candidates:
            if all(self._shift(weights, c, w) <= -1 for c, w in self.terms):
                return weights
        offenders = [
            " ".join(str(letter) for letter in w) or "1" for c, w in self.terms
            if all(self._shift(weights, c, w) > -1 for weights in candidates)
        ]
        raise CertificateError(
            "No termination certificate: no weighting of "
            f"{names or ['(none)']} is lowered by every term; unbounded direction in "
            f"{offenders[:3]}"
        )

    def to_json(self) -> list[dict]:
        rows = []
        for c, w in self.terms:
            coeff = c.to_json() if isinstance(c, Series) else format_scalar(c)
            rows.append({"coefficient": coeff, "word": [list(letter) for letter in w]})
        return rows

    def __repr__(self):
        return "DiffOp(" + " + ".join(
            f"{c!r}*" + "".join(str(letter) for letter in w) for c, w in self.terms
        ) + ")"


def _times(a, b):
    if isinstance(a, Series):
        return a * b
    if isinstance(b, Series):
        return b.scale(a)
    return a * b


def _weighted_degree(f: Series, weights: dict[str, int]) -> tuple[int, int]:
    idx = [(f.table.index(n), w) for n, w in weights.items()]
    degrees = [sum(e[i] * w for i, w in idx) for e in f.terms]
    return min(degrees), max(degrees)


def _table_floor(table: VarTable, weights: dict[str, int]) -> int:
    return sum(table.mins[table.index(n)] * w for n, w in weights.items())


def apply_diffop_exp(op: DiffOp, f: Series) -> Series:
    """exp(op)·f as a terminating sum, exact within the caps of ``f``.

    The certificate bounds the number of non-vanishing applications by the
    spread between the top weighted degree of ``f`` and the floor of its table.
    """
    if f.is_zero() or not op.terms:
        return f
    weights = op.certificate(f.table)
    _, top = _weighted_degree(f, weights)
    bound = top - _table_floor(f.table, weights)
    result = f
    term = f
    for k in range(1, bound + 1):
        term = op.apply(term).scale(QQ(1, k))
        if term.is_zero():
            break
        result = result + term
    else:
        if bound > 0 and not op.apply(term).is_zero():
            raise DomainError("Operator exponential did not terminate within its certified bound")
    LOG.debug(f"exp(op) terminated after at most {bound} steps under weights {weights}")
    return result


def apply_symbol(symbol: Series, dvar: str, svar: str, g: Series) -> Series:
    """Apply P(∂_s) to ``g``, where ``symbol`` is P written in the formal variable ``dvar``.

    The remaining variables of ``symbol`` multiply the result and must exist in
    ``g``'s table.
    """
    i = symbol.table.index(dvar)
    result = Series.zero(g.table, g.domain)
    by_power: dict[int, Series] = {}
    for e, c in symbol.terms.items():
        rest = {n: p for n, p in zip(symbol.table.names, e) if n != dvar and p}
        mono = Series.monomial(g.table, c, **rest)
        by_power[e[i]] = by_power[e[i]] + mono if e[i] in by_power else mono
    for j in sorted(by_power):
        dg = g.derivative(svar, j) if j else g
        if dg.is_zero():
            continue
        result = result + by_power[j] * dg
    return result


def operator_from_symbol(coefficients: dict[int, Union[Series, object]], svar: str) -> DiffOp:
    """Σ_k c_k ∂_s^k as a DiffOp."""
    return DiffOp((c, (Letter(DERIVATIVE, svar),) * k) for k, c in sorted(coefficients.items()))


__all__ = [
    "Letter",
    "DiffOp",
    "apply_word",
    "apply_diffop_exp",
    "apply_symbol",
    "operator_from_symbol",
]
