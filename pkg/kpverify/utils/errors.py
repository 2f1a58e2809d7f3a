"""Exception classes for kpverify.

Every error raised on purpose inherits from KPVerifyError and carries a CODE,
so the suite runner can turn it into a check outcome without losing the kind.
"""

from typing import Optional
from kpverify.models.response import CODE


class KPVerifyError(Exception):
    """Base exception for all kpverify errors.

    Attributes:
        message: Error message
        error_code: CODE enum value
    """

    def __init__(self, message: str, error_code: Optional[CODE] = None):
        super().__init__(message)
        self.message = message
        self.error_code = error_code or CODE.INTERNAL_SERVER_ERROR

    def __str__(self):
        return self.message


class ConfigurationError(KPVerifyError):
    """Raised when configuration is invalid or missing."""

    def __init__(self, message: str):
        super().__init__(message, CODE.BAD_REQUEST)


class ValidationError(KPVerifyError):
    """Raised when input data fails validation (bad rational string, bad shape)."""

    def __init__(self, message: str):
        super().__init__(message, CODE.UNPROCESSABLE_ENTITY)


class StructuralError(KPVerifyError):
    """Raised when operands do not share a VarTable, dimension or ensemble."""

    def __init__(self, message: str):
        super().__init__(message, CODE.STRUCTURAL_ERROR)


class DomainError(KPVerifyError):
    """Raised when a mathematical precondition fails (constant terms, zero eigenvalues)."""

    def __init__(self, message: str):
        super().__init__(message, CODE.DOMAIN_ERROR)


class CertificateError(DomainError):
    """Raised when an operator exponential has no termination certificate.

    The message names the direction in which the degree is unbounded.
    """

    def __init__(self, message: str):
        KPVerifyError.__init__(self, message, CODE.CERTIFICATE_ERROR)


class ExtractionError(KPVerifyError):
    """Raised when q-basis extraction cannot produce a verified solution."""

    def __init__(self, message: str):
        super().__init__(message, CODE.EXTRACTION_ERROR)


class SingularSystemError(ExtractionError):
    """Raised for a singular extraction system; retried with fresh eigenvalue tuples."""
    pass


class InfeasibleCapsError(KPVerifyError):
    """Raised when the estimated work for the requested caps exceeds the budget."""

    def __init__(self, message: str, estimate: int = 0):
        super().__init__(message, CODE.INFEASIBLE)
        self.estimate = estimate


class QuadratureError(KPVerifyError):
    """Raised when a quadrature refinement does not converge."""

    def __init__(self, message: str):
        super().__init__(message, CODE.QUADRATURE_ERROR)


class ImaginaryResidueError(KPVerifyError):
    """Raised when a result that must be real keeps an imaginary part."""

    def __init__(self, message: str):
        super().__init__(message, CODE.IMAGINARY_RESIDUE)


def exception_to_code(exc: Exception) -> CODE:
    """Convert an exception to a CODE enum.

    Args:
        exc: Exception instance

    Returns:
        CODE enum value

    Examples:
        >>> exception_to_code(ConfigurationError("bad depth"))
        <CODE.BAD_REQUEST: 400>
        >>> exception_to_code(ZeroDivisionError())
        <CODE.INTERNAL_SERVER_ERROR: 500>
    """
    if isinstance(exc, KPVerifyError):
        return exc.error_code
    elif isinstance(exc, ZeroDivisionError):
        return CODE.DOMAIN_ERROR
    else:
        return CODE.INTERNAL_SERVER_ERROR
