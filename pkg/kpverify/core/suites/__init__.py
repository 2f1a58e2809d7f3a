from .base import Check, all_hold, compared, passed
from .report import CSV_HEADER, render_model, render_report, report_emit
from .runner import BUILDERS, config_echo, run_checks, run_suite, run_suite_async, suite_checks

__all__ = [
    "Check",
    "all_hold",
    "compared",
    "passed",
    "CSV_HEADER",
    "render_model",
    "render_report",
    "report_emit",
    "BUILDERS",
    "config_echo",
    "run_checks",
    "run_suite",
    "run_suite_async",
    "suite_checks",
]
