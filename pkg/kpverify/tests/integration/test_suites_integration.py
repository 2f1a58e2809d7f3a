"""
Integration tests running whole suites at small caps.

The virasoro and numeric suites are marked slow; select them with ``-m slow``.
"""

import json

import pytest

from kpverify.cli import EXIT_PASS, main
from kpverify.core.suites import run_suite
from kpverify.main import KPVerify
from kpverify.models import CheckStatus


def _statuses(report):
    return {c.check: c.status for c in report.checks}


@pytest.mark.integration
class TestAlgebraicSuites:
    """Suites made of exact identities that hold at every cap."""

    @pytest.mark.parametrize("suite", ["appendix", "lemma1", "section4"])
    def test_suite_passes(self, suite, minimal_config):
        report = run_suite(suite, minimal_config)

        assert report.checks
        assert report.status == CheckStatus.PASS, [(c.check, c.detail) for c in report.checks]

    def test_laurent_check_is_opt_in(self, minimal_config):
        plain = run_suite("appendix", minimal_config)
        report = run_suite("appendix", minimal_config.with_overrides(allow_laurent_s=True))

        assert "complex-integral-laurent" not in _statuses(plain)
        assert _statuses(report)["complex-integral-laurent"] == CheckStatus.PASS

    def test_report_order(self, minimal_config):
        report = run_suite("lemma1", minimal_config)

        assert [c.check for c in report.checks] == [
            "det-expansion",
            "product-identity",
            "bordered-traces",
            "lambda-derivation",
            "conjugation",
            "operator-moving",
        ]

    def test_reports_are_byte_identical(self, minimal_config, tmp_path):
        kp = KPVerify(minimal_config)
        first, second = tmp_path / "a.json", tmp_path / "b.json"

        kp.emit(kp.run_suite("appendix"), first)
        kp.emit(kp.run_suite("appendix"), second)

        assert first.read_bytes() == second.read_bytes()
        assert json.loads(first.read_text(encoding="utf-8"))["config"]["seed"] == minimal_config.seed

    def test_cli_exit_code(self, clean_env, tmp_path):
        out = tmp_path / "section4.csv"

        assert main(["verify", "section4", "--format", "csv", "--out", str(out)]) == EXIT_PASS
        assert out.read_text(encoding="utf-8").startswith("check,status,anchor,runtime_ms\n")


@pytest.mark.integration
class TestModelSuites:
    """Cross-model equalities at M = 1 and M = 2."""

    @pytest.mark.slow
    def test_theorem1(self, minimal_config):
        report = run_suite("theorem1", minimal_config)

        assert report.status == CheckStatus.PASS, [(c.check, c.detail) for c in report.checks]

    def test_theorem2(self, minimal_config):
        report = run_suite("theorem2", minimal_config)

        assert _statuses(report) == {
            "zo2-operator-image": CheckStatus.PASS,
            "bt-proportional": CheckStatus.PASS,
        }, [(c.check, c.detail) for c in report.checks]

    def test_infeasible_caps_are_inconclusive(self, minimal_config):
        config = minimal_config.with_overrides(pairing_budget=1)

        statuses = _statuses(run_suite("theorem2", config))

        assert statuses["zo2-operator-image"] == CheckStatus.INCONCLUSIVE


@pytest.mark.integration
@pytest.mark.slow
class TestHeavySuites:
    """Extraction-backed and quadrature-backed suites."""

    def test_virasoro(self, minimal_config):
        report = run_suite("virasoro", minimal_config)

        assert len(report.checks) == 8
        assert report.status == CheckStatus.PASS, [(c.check, c.detail) for c in report.checks]

    def test_numeric(self, minimal_config):
        report = run_suite("numeric", minimal_config)

        assert {c.check for c in report.checks} == {"normalization", "complex-vector-gaussian", "wick-bridge", "hciz"}
        assert report.status == CheckStatus.PASS, [(c.check, c.detail) for c in report.checks]
