from .enums import CheckStatus, SuiteName, ModelName, Basis, RangeConvention
from .promise import Promise, PromiseUnpackError
from .response import CODE, CheckOutcome, CheckResult, SuiteReport, ModelResult, CoefficientRow

__all__ = [
    "CheckStatus",
    "SuiteName",
    "ModelName",
    "Basis",
    "RangeConvention",
    "Promise",
    "PromiseUnpackError",
    "CODE",
    "CheckOutcome",
    "CheckResult",
    "SuiteReport",
    "ModelResult",
    "CoefficientRow",
]
