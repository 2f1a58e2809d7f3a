from itertools import combinations_with_replacement
from typing import Iterator, Sequence

from scipy.special import factorial2
from sympy.polys.domains import QQ

from kpverify.config import LOG
from kpverify.utils.errors import InfeasibleCapsError, StructuralError
from kpverify.core.ring import Series, VarTable
from .ensemble import Ensemble, GinibreEnsemble
from .symbols import GINIBRE, EntryPoly, EntrySymbol, Monomial


def _split(mono: Monomial, ensembles: Sequence[Ensemble]) -> list[tuple[Ensemble, Monomial]]:
    groups = []
    covered = 0
    for ens in ensembles:
        sub = tuple(s for s in mono if s.kind in ens.kinds)
        covered += len(sub)
        if sub:
            groups.append((ens, sub))
    if covered != len(mono):
        raise StructuralError(f"Monomial {mono} has entries outside the given ensembles")
    return groups


def expectation(p: EntryPoly, ensembles: Sequence[Ensemble]) -> Series:
    """Normalized Gaussian expectation of p by Wick's theorem.

    Independent ensembles factorize; every contraction of a graded ensemble
    contributes one power of its ε variable.
    """
    result = Series.zero(p.table)
    for mono, coeff in sorted(p.terms.items()):
        value = coeff
        for ens, sub in _split(mono, ensembles):
            w = ens.contract(sub)
            if not w:
                value = None
                break
            value = value * w
            if ens.eps:
                value = value.shift(ens.eps, len(sub) // 2)
        if value is not None and not value.is_zero():
            result = result + value
    return result


def iter_pairings(items: Sequence) -> Iterator[list[tuple]]:
    """All perfect matchings of ``items`` as lists of pairs (brute force)."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for k in range(len(rest)):
        for tail in iter_pairings(rest[:k] + rest[k + 1:]):
            yield [(first, rest[k])] + tail


def brute_force_contraction(mono: Monomial, ensemble: Ensemble):
    """Un-memoized sum over all pairings; the oracle for :meth:`Ensemble.contract`."""
    total = ensemble.zero()
    for pairing in iter_pairings(list(mono)):
        term = ensemble.one()
        for a, b in pairing:
            term = term * ensemble.pair(a, b)
            if not term:
                break
        total = total + term
    return total


def count_pairings(n_entries: int) -> int:
    if n_entries % 2:
        return 0
    if n_entries == 0:
        return 1
    return int(factorial2(n_entries - 1, exact=True))


def estimate_pairings(p: EntryPoly, ensembles: Sequence[Ensemble]) -> int:
    """Upper estimate of the pairings a non-memoized evaluation of p would visit."""
    total = 0
    for mono in p.terms:
        cost = 1
        for _, sub in _split(mono, ensembles):
            cost *= count_pairings(len(sub))
        total += cost
    return total


def ensure_feasible(p: EntryPoly, ensembles: Sequence[Ensemble], budget: int) -> int:
    estimate = estimate_pairings(p, ensembles)
    LOG.debug(f"Wick workload: {len(p)} monomials, about {estimate} pairings")
    if estimate > budget:
        raise InfeasibleCapsError(
            f"Estimated {estimate} pairings exceed the budget of {budget}; lower the caps",
            estimate,
        )
    return estimate


def mean_value_check(N: int, max_degree: int) -> bool:
    """Every non-constant monomial in Z entries alone has zero Ginibre expectation."""
    ens = GinibreEnsemble(N)
    if ens.contract(()) != QQ(1):
        return False
    symbols = [EntrySymbol(GINIBRE, a, b) for a in range(1, N + 1) for b in range(1, N + 1)]
    for degree in range(1, max_degree + 1):
        for mono in combinations_with_replacement(symbols, degree):
            if ens.contract(tuple(mono)):
                LOG.warning(f"Z-only monomial {mono} has a non-zero expectation")
                return False
    return True


def monomial_poly(table: VarTable, grading, mono: Sequence[EntrySymbol], coeff=1) -> EntryPoly:
    """Single-monomial EntryPoly, mostly for tests and oracles."""
    value = coeff if isinstance(coeff, Series) else Series.const(table, coeff)
    return EntryPoly(table, grading, {tuple(mono): value})
