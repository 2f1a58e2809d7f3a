"""
Unit tests for report rendering and the concurrent check runner (core/suites).
"""

import json
from pathlib import Path

import pytest

from kpverify.config import Config
from kpverify.core.pipelines import eval_ZN
from kpverify.core.suites import (
    CSV_HEADER,
    Check,
    all_hold,
    compared,
    config_echo,
    passed,
    render_model,
    render_report,
    report_emit,
    run_checks,
    suite_checks,
)
from kpverify.models import CheckResult, CheckStatus, SuiteReport
from kpverify.utils.errors import InfeasibleCapsError, StructuralError, ValidationError


def _report(runtime: float = 12.0) -> SuiteReport:
    checks = [
        CheckResult(check="a", anchor="quote a", status=CheckStatus.PASS, runtime_ms=runtime),
        CheckResult(check="b", anchor="quote, b", status=CheckStatus.INCONCLUSIVE, detail="budget"),
    ]
    return SuiteReport(suite="lemma1", config={"seed": 1}, checks=checks)


@pytest.mark.unit
class TestRenderReport:
    """Test the json and csv renderings."""

    def test_csv(self):
        lines = render_report(_report(), "csv").splitlines()

        assert lines[0] == ",".join(CSV_HEADER)
        assert lines[1] == "a,pass,quote a,"
        assert lines[2] == 'b,inconclusive,"quote, b",'

    def test_csv_with_runtime(self):
        lines = render_report(_report(), "csv", with_runtime=True).splitlines()

        assert lines[1] == "a,pass,quote a,12"

    def test_json_omits_runtime(self):
        payload = json.loads(render_report(_report(), "json"))

        assert payload["status"] == "inconclusive"
        assert all("runtime_ms" not in c for c in payload["checks"])
        assert [c["check"] for c in payload["checks"]] == ["a", "b"]

    def test_byte_identical_without_runtime(self):
        assert render_report(_report(3.0)) == render_report(_report(900.0))
        assert render_report(_report(3.0), with_runtime=True) != render_report(_report(900.0), with_runtime=True)

    def test_unknown_format(self):
        with pytest.raises(ValidationError):
            render_report(_report(), "xml")

    def test_emit_writes_file(self, tmp_path):
        path = tmp_path / "report.json"

        text = report_emit(_report(), path)

        assert path.read_text(encoding="utf-8") == text


@pytest.mark.unit
class TestRenderModel:
    """Test coefficient tables."""

    def test_csv(self):
        text = render_model(eval_ZN(1, 0, [1], 3).to_model_result(), "csv")

        assert text == "eps,value\n0,1\n3,5/24\n"

    def test_json(self):
        payload = json.loads(render_model(eval_ZN(1, 0, [1], 3).to_model_result()))

        assert payload["model"] == "zn"
        assert payload["lambda"] == ["1"]
        assert payload["coefficients"][-1] == {"exponents": {"eps": 3}, "value": "5/24"}


@pytest.mark.unit
class TestOutcomes:
    """Test outcome helpers."""

    def test_passed(self):
        assert passed(True).status == CheckStatus.PASS
        assert passed(False, "no").detail == "no"

    def test_all_hold_names_failures(self):
        outcome = all_hold({"x": True, "y": False, "z": False})

        assert outcome.status == CheckStatus.FAIL
        assert outcome.detail == "failing: y, z"

    def test_compared_quotes_five(self):
        outcome = compared((False, [f"m{i}" for i in range(7)]), region={"eps": 2})

        assert outcome.detail == "m0; m1; m2; m3; m4; … 2 more"
        assert outcome.region == {"eps": 2}


@pytest.mark.unit
class TestRunner:
    """Test check collection and concurrent execution."""

    def test_unknown_suite(self, minimal_config):
        with pytest.raises(ValidationError):
            suite_checks("theorem9", minimal_config)

    def test_all_prefixes_names(self, minimal_config):
        names = [c.name for c in suite_checks("all", minimal_config)]

        assert any(n.startswith("appendix/") for n in names)
        assert any(n.startswith("virasoro/") for n in names)
        assert len(names) == len(set(names))

    def test_anchors_are_verbatim_quotes(self, minimal_config):
        source = Path(__file__).resolve().parents[3] / "examples" / "original_source" / "paper.md"
        if not source.exists():
            pytest.skip("source text not available")
        text = source.read_text(encoding="utf-8")
        checks = suite_checks("all", minimal_config.with_overrides(allow_laurent_s=True))

        missing = [c.name for c in checks if c.anchor not in text]

        assert not missing
        assert len({c.anchor for c in checks}) == len(checks)

    def test_config_echo_drops_runtime_settings(self):
        echo = config_echo(Config(max_workers=8))

        assert "max_workers" not in echo
        assert "log_level" not in echo
        assert echo["seed"] == 20240517

    async def test_error_mapping_and_order(self):
        def infeasible():
            raise InfeasibleCapsError("too many pairings", estimate=10**9)

        def broken():
            raise StructuralError("bad table")

        checks = [
            Check("ok", "anchor 1", lambda: passed(True)),
            Check("infeasible", "anchor 2", infeasible),
            Check("broken", "anchor 3", broken),
        ]

        results = await run_checks("unit", checks, max_workers=3)

        assert [r.check for r in results] == ["ok", "infeasible", "broken"]
        assert [r.status for r in results] == [CheckStatus.PASS, CheckStatus.INCONCLUSIVE, CheckStatus.FAIL]
        assert "STRUCTURAL_ERROR" in results[2].detail
        assert results[1].anchor == "anchor 2"
