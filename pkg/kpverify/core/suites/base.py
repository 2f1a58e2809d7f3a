"""What a suite is made of: named, anchored, zero-argument checks."""

from dataclasses import dataclass
from typing import Callable, Mapping, Optional, Sequence

from kpverify.models import CheckOutcome
from kpverify.utils.tools import digest


@dataclass(frozen=True)
class Check:
    name: str
    anchor: str
    run: Callable[[], CheckOutcome]


def passed(ok: bool, detail: str = "", **kwargs) -> CheckOutcome:
    return CheckOutcome.from_bool(ok, detail, **kwargs)


def all_hold(results: Mapping[str, bool]) -> CheckOutcome:
    """Pass iff every named sub-result holds; failing names go into the detail."""
    failing = sorted(k for k, v in results.items() if not v)
    detail = f"failing: {', '.join(failing)}" if failing else f"{len(results)} cases"
    return passed(not failing, detail, lhs_digest=digest(sorted(results)))


def compared(
    result: tuple[bool, Sequence[str]],
    region: Optional[dict] = None,
    lhs_digest: str = "",
    rhs_digest: str = "",
) -> CheckOutcome:
    """Outcome of a (same, mismatches) comparison; at most five mismatches are quoted."""
    same, mismatches = result
    detail = "; ".join(mismatches[:5])
    if len(mismatches) > 5:
        detail += f"; … {len(mismatches) - 5} more"
    return passed(same, detail, region=region, lhs_digest=lhs_digest, rhs_digest=rhs_digest)
