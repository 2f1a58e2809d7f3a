"""Evaluated model payloads and completeness-region comparisons."""

from dataclasses import dataclass, field
from typing import Mapping, Optional

from kpverify.models import Basis, CoefficientRow, ModelResult
from kpverify.utils.errors import DomainError
from kpverify.utils.tools import digest
from kpverify.core.ring import Series, format_scalar

Region = dict[str, int]


@dataclass
class PipelineResult:
    model: str
    M: int
    N: int
    lam: Optional[tuple]
    caps: dict[str, int]
    series: Series
    region: Region
    basis: Basis = Basis.EPSILON_NUMERIC
    normalization: str = ""
    notes: list[str] = field(default_factory=list)

    def __post_init__(self):
        if self.series.constant_term() != 1:
            raise DomainError(
                f"{self.model}: constant term {format_scalar(self.series.constant_term())} is not 1"
            )
        if not self.region:
            raise DomainError(f"{self.model}: empty completeness region")

    def certified(self) -> Series:
        """The payload with every coefficient outside the region dropped."""
        return self.series.truncate(**{k: v for k, v in self.region.items() if k in self.series.table})

    def to_model_result(self) -> ModelResult:
        rows = [
            CoefficientRow(
                exponents={n: p for n, p in zip(self.series.table.names, e) if p},
                value=format_scalar(c),
            )
            for e, c in self.certified().sorted_terms()
        ]
        return ModelResult(
            model=self.model,
            M=self.M,
            N=self.N,
            lam=[format_scalar(v) for v in self.lam] if self.lam else [],
            caps=self.caps,
            basis=str(self.basis),
            region=self.region,
            coefficients=rows,
            normalization="; ".join([self.normalization] + self.notes) if self.notes else self.normalization,
        )


def common_region(*regions: Mapping[str, int]) -> Region:
    """Intersection of rectangular regions; a variable missing from one region is unconstrained there."""
    out: Region = {}
    for region in regions:
        for name, cap in region.items():
            out[name] = min(cap, out.get(name, cap))
    return out


def region_terms(f: Series, region: Mapping[str, int]) -> dict[tuple, object]:
    """Coefficients inside ``region`` keyed by sorted (name, power) pairs, independent of the table."""
    out = {}
    for e, c in f.terms.items():
        powers = dict(zip(f.table.names, e))
        if any(powers.get(n, 0) > cap for n, cap in region.items()):
            continue
        out[tuple(sorted((n, p) for n, p in powers.items() if p))] = c
    return out


def region_compare(a: Series, b: Series, region: Mapping[str, int]) -> tuple[bool, list[str]]:
    """Equality of two payloads restricted to ``region``; mismatching monomials are listed."""
    ta, tb = region_terms(a, region), region_terms(b, region)
    mismatches = []
    for key in sorted(set(ta) | set(tb)):
        va, vb = ta.get(key, 0), tb.get(key, 0)
        if va != vb:
            mono = "*".join(f"{n}^{p}" for n, p in key) or "1"
            mismatches.append(f"{mono}: {format_scalar(va)} vs {format_scalar(vb)}")
    return not mismatches, mismatches


def region_digest(f: Series, region: Mapping[str, int]) -> str:
    terms = region_terms(f, region)
    return digest([[list(map(list, k)), format_scalar(v)] for k, v in sorted(terms.items())])
