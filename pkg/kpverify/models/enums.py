"""
Enum definitions for suites, models and check outcomes.
"""

try:
    from enum import StrEnum
except ImportError:  # Python < 3.11
    from enum import Enum

    class StrEnum(str, Enum):
        """Backport of enum.StrEnum for Python 3.10."""

        def __str__(self) -> str:
            return str(self.value)

        def __format__(self, format_spec: str) -> str:
            return str(self.value).__format__(format_spec)

        @staticmethod
        def _generate_next_value_(name, start, count, last_values):
            return name.lower()


class CheckStatus(StrEnum):
    """Outcome of a single verification check."""
    PASS = "pass"
    FAIL = "fail"
    INCONCLUSIVE = "inconclusive"


class SuiteName(StrEnum):
    """Verification suites runnable from the command line."""
    APPENDIX = "appendix"
    LEMMA1 = "lemma1"
    THEOREM2 = "theorem2"
    THEOREM1 = "theorem1"
    VIRASORO = "virasoro"
    SECTION4 = "section4"
    NUMERIC = "numeric"
    ALL = "all"


class ModelName(StrEnum):
    """Expandable matrix models."""
    ZN = "zn"
    IME = "ime"
    ZO2 = "zo2"
    BT = "bt"
    ZNEXT = "znext"


class Basis(StrEnum):
    """Coordinates a ModelResult payload is expressed in."""
    EPSILON_NUMERIC = "epsilon-numeric"
    X_SYMBOLIC = "x-symbolic"
    Q_BASIS = "q-basis"


class RangeConvention(StrEnum):
    """Quadratic range of the negative Virasoro operators."""
    CORRECTED = "corrected"
    AS_WRITTEN = "as-written"
