"""
kpverify - exact-arithmetic verification of Kontsevich-Penner and open partition function identities.

This package provides:
- Truncated multivariate formal series over exact rationals
- Wick-theorem evaluation of Gaussian matrix integrals
- Matrix-model pipelines and the q-basis extraction of their τ functions
- Virasoro operator algebra and constraint residuals
- Verification suites with machine-readable reports
"""

__version__ = "0.1.0"

from kpverify.utils.errors import KPVerifyError, ConfigurationError
from kpverify.config import Config
from kpverify.models import CheckStatus, ModelName, ModelResult, SuiteName, SuiteReport
from kpverify.main import KPVerify

__all__ = [
    "KPVerify",
    "KPVerifyError",
    "ConfigurationError",
    "Config",
    "CheckStatus",
    "ModelName",
    "ModelResult",
    "SuiteName",
    "SuiteReport",
]
