"""Canonical report files.

Runtimes are left out unless asked for, so two runs with the same seed and
configuration produce byte-identical files.
"""

import csv
import io
from pathlib import Path
from typing import Union

from kpverify.models import ModelResult, SuiteReport
from kpverify.utils.errors import ValidationError
from kpverify.utils.tools import canonical_json

CSV_HEADER = ["check", "status", "anchor", "runtime_ms"]


def render_report(report: SuiteReport, fmt: str = "json", with_runtime: bool = False) -> str:
    if fmt == "json":
        return canonical_json(report.payload(with_runtime))
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for c in report.checks:
            writer.writerow([c.check, str(c.status), c.anchor, c.runtime_ms if with_runtime else ""])
        return buf.getvalue()
    raise ValidationError(f"Unknown report format {fmt!r}; expected json or csv")


def render_model(result: ModelResult, fmt: str = "json") -> str:
    if fmt == "json":
        return canonical_json(result.model_dump(mode="json", by_alias=True))
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        names = list(result.caps)
        writer.writerow(names + ["value"])
        for row in result.coefficients:
            writer.writerow([row.exponents.get(n, 0) for n in names] + [row.value])
        return buf.getvalue()
    raise ValidationError(f"Unknown output format {fmt!r}; expected json or csv")


def report_emit(
    report: SuiteReport, path: Union[str, Path, None], fmt: str = "json", with_runtime: bool = False
) -> str:
    """Write the rendered report to ``path`` (stdout handling is the caller's); returns the text."""
    text = render_report(report, fmt, with_runtime)
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text
