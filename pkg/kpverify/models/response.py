from enum import IntEnum
from typing import Any, Optional

from pydantic import BaseModel, Field, field_validator

from .enums import CheckStatus


class CODE(IntEnum):
    SUCCESS = 0
    BAD_REQUEST = 400
    UNPROCESSABLE_ENTITY = 422
    INTERNAL_SERVER_ERROR = 500
    STRUCTURAL_ERROR = 1001
    DOMAIN_ERROR = 1002
    CERTIFICATE_ERROR = 1003
    EXTRACTION_ERROR = 1004
    INFEASIBLE = 1005
    QUADRATURE_ERROR = 1006
    IMAGINARY_RESIDUE = 1007


class CheckOutcome(BaseModel):
    """What a check function returns before timing and anchoring are attached."""

    status: CheckStatus = Field(..., description="pass, fail or inconclusive")
    lhs_digest: str = Field(default="", description="Short digest of the left-hand side")
    rhs_digest: str = Field(default="", description="Short digest of the right-hand side")
    region: Optional[dict[str, int]] = Field(
        default=None, description="Completeness region the comparison was restricted to"
    )
    detail: str = Field(default="", description="Free-form diagnostic")

    @classmethod
    def from_bool(cls, ok: bool, detail: str = "", **kwargs) -> "CheckOutcome":
        return cls(status=CheckStatus.PASS if ok else CheckStatus.FAIL, detail=detail, **kwargs)


class CheckResult(CheckOutcome):
    check: str = Field(..., description="Check name, unique inside a suite")
    anchor: str = Field(..., description="Verbatim source quote the check is anchored on")
    runtime_ms: int = Field(default=0, description="Wall time in milliseconds")

    @field_validator("runtime_ms", mode="before")
    @classmethod
    def round_runtime(cls, v):
        return int(round(v)) if isinstance(v, float) else v


class SuiteReport(BaseModel):
    suite: str = Field(..., description="Suite name")
    config: dict[str, Any] = Field(default_factory=dict, description="Configuration echo")
    checks: list[CheckResult] = Field(default_factory=list, description="Ordered check results")

    @property
    def status(self) -> CheckStatus:
        statuses = {c.status for c in self.checks}
        if not statuses or statuses == {CheckStatus.PASS}:
            return CheckStatus.PASS
        if CheckStatus.FAIL in statuses:
            return CheckStatus.FAIL
        return CheckStatus.INCONCLUSIVE

    def payload(self, with_runtime: bool = True) -> dict:
        """Plain dict for emission; runtimes are dropped for byte-stable output."""
        checks = []
        for c in self.checks:
            row = c.model_dump(mode="json")
            if not with_runtime:
                row.pop("runtime_ms")
            checks.append(row)
        return {
            "suite": self.suite,
            "config": self.config,
            "checks": checks,
            "status": str(self.status),
        }


class CoefficientRow(BaseModel):
    exponents: dict[str, int] = Field(..., description="Variable name to exponent")
    value: str = Field(..., description='Exact coefficient as "p/q"')


class ModelResult(BaseModel):
    model: str = Field(..., description="Model id")
    M: int = Field(..., description="Hermitian matrix size")
    N: int = Field(default=0, description="Penner power / Ginibre size")
    lam: list[str] = Field(default_factory=list, alias="lambda", description="Eigenvalues")
    caps: dict[str, int] = Field(default_factory=dict, description="Truncation caps")
    basis: str = Field(default="epsilon-numeric", description="Payload coordinates")
    region: dict[str, int] = Field(default_factory=dict, description="Certified region")
    coefficients: list[CoefficientRow] = Field(default_factory=list)
    normalization: str = Field(default="", description="Prefactors divided out")

    model_config = {"populate_by_name": True}
