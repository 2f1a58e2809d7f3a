"""
Unit tests for Promise and the error hierarchy (models/promise.py, utils/errors.py).
"""

import pytest

from kpverify.models import CODE, CheckOutcome, CheckResult, CheckStatus, Promise, PromiseUnpackError, SuiteReport
from kpverify.utils.errors import (
    CertificateError,
    ConfigurationError,
    DomainError,
    InfeasibleCapsError,
    KPVerifyError,
    QuadratureError,
    exception_to_code,
)


@pytest.mark.unit
class TestPromise:
    """Test Promise class."""

    def test_resolve_creates_successful_promise(self):
        promise = Promise.resolve("data")

        assert promise.ok() is True
        assert promise.data() == "data"
        assert promise.code() == CODE.SUCCESS
        assert promise.msg() == ""

    def test_reject_creates_failed_promise(self):
        promise = Promise.reject(CODE.DOMAIN_ERROR, "zero eigenvalue")

        assert promise.ok() is False
        assert promise.code() == CODE.DOMAIN_ERROR
        assert "zero eigenvalue" in promise.msg()

    def test_reject_without_message_fails(self):
        with pytest.raises(AssertionError):
            Promise.reject(CODE.BAD_REQUEST, None)

    def test_data_from_failed_promise_raises(self):
        with pytest.raises(PromiseUnpackError):
            Promise.reject(CODE.BAD_REQUEST, "bad").data()

    def test_capture_success(self):
        assert Promise.capture(lambda: 41 + 1).data() == 42

    def test_capture_keeps_error_code(self):
        def fails():
            raise InfeasibleCapsError("too many pairings", estimate=10**9)

        promise = Promise.capture(fails)

        assert promise.code() == CODE.INFEASIBLE
        assert "InfeasibleCapsError" in promise.msg()

    def test_capture_unexpected_exception(self):
        promise = Promise.capture(lambda: {}["missing"])

        assert promise.code() == CODE.INTERNAL_SERVER_ERROR


@pytest.mark.unit
class TestErrors:
    """Test exception codes."""

    def test_codes(self):
        assert exception_to_code(ConfigurationError("x")) == CODE.BAD_REQUEST
        assert exception_to_code(DomainError("x")) == CODE.DOMAIN_ERROR
        assert exception_to_code(QuadratureError("x")) == CODE.QUADRATURE_ERROR
        assert exception_to_code(ZeroDivisionError()) == CODE.DOMAIN_ERROR
        assert exception_to_code(RuntimeError()) == CODE.INTERNAL_SERVER_ERROR

    def test_certificate_error_is_domain_error(self):
        err = CertificateError("unbounded in s")

        assert isinstance(err, DomainError)
        assert isinstance(err, KPVerifyError)
        assert err.error_code == CODE.CERTIFICATE_ERROR
        assert str(err) == "unbounded in s"


@pytest.mark.unit
class TestSuiteReport:
    """Test aggregate status and payloads."""

    def _result(self, name, status, runtime=12.6):
        return CheckResult(check=name, anchor="a", status=status, runtime_ms=runtime)

    def test_status_aggregation(self):
        passing = SuiteReport(suite="s", checks=[self._result("a", CheckStatus.PASS)])
        mixed = SuiteReport(
            suite="s",
            checks=[self._result("a", CheckStatus.PASS), self._result("b", CheckStatus.INCONCLUSIVE)],
        )
        failing = SuiteReport(
            suite="s",
            checks=[self._result("a", CheckStatus.INCONCLUSIVE), self._result("b", CheckStatus.FAIL)],
        )

        assert passing.status == CheckStatus.PASS
        assert mixed.status == CheckStatus.INCONCLUSIVE
        assert failing.status == CheckStatus.FAIL
        assert SuiteReport(suite="empty").status == CheckStatus.PASS

    def test_runtime_rounded_and_optional(self):
        report = SuiteReport(suite="s", checks=[self._result("a", CheckStatus.PASS)])

        assert report.checks[0].runtime_ms == 13
        assert "runtime_ms" not in report.payload(with_runtime=False)["checks"][0]
        assert report.payload()["checks"][0]["runtime_ms"] == 13

    def test_outcome_from_bool(self):
        assert CheckOutcome.from_bool(True).status == CheckStatus.PASS
        assert CheckOutcome.from_bool(False, "differs").detail == "differs"
