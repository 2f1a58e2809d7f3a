"""Run a suite's checks concurrently and assemble an ordered report."""

import asyncio
import dataclasses
import time
from concurrent.futures import ThreadPoolExecutor

from kpverify.config import Config, TRACE_LOG
from kpverify.models import CODE, CheckOutcome, CheckResult, CheckStatus, Promise, SuiteName, SuiteReport
from kpverify.utils.errors import ValidationError
from . import appendix, lemma, numeric, section4, theorems, virasoro
from .base import Check

BUILDERS = {
    SuiteName.APPENDIX: appendix.build,
    SuiteName.LEMMA1: lemma.build,
    SuiteName.THEOREM2: theorems.build_theorem2,
    SuiteName.THEOREM1: theorems.build_theorem1,
    SuiteName.VIRASORO: virasoro.build,
    SuiteName.SECTION4: section4.build,
    SuiteName.NUMERIC: numeric.build,
}

# errors that say "could not decide" rather than "the identity is false"
INCONCLUSIVE_CODES = {CODE.INFEASIBLE, CODE.QUADRATURE_ERROR}


def suite_checks(name: str, config: Config) -> list[Check]:
    try:
        suite = SuiteName(name)
    except ValueError:
        raise ValidationError(
            f"Unknown suite {name!r}; expected one of {', '.join(s.value for s in SuiteName)}"
        ) from None
    if suite != SuiteName.ALL:
        return BUILDERS[suite](config)
    checks = []
    for member, build in BUILDERS.items():
        checks += [Check(f"{member}/{c.name}", c.anchor, c.run) for c in build(config)]
    return checks


def _outcome(promise: Promise[CheckOutcome]) -> CheckOutcome:
    if promise.ok():
        return promise.data()
    status = CheckStatus.INCONCLUSIVE if promise.code() in INCONCLUSIVE_CODES else CheckStatus.FAIL
    return CheckOutcome(status=status, detail=promise.msg())


def _timed(suite: str, check: Check) -> CheckResult:
    TRACE_LOG.debug(suite, "started", check=check.name)
    start = time.perf_counter()
    promise = Promise.capture(check.run)
    runtime_ms = (time.perf_counter() - start) * 1000
    outcome = _outcome(promise)
    log = TRACE_LOG.info if outcome.status == CheckStatus.PASS else TRACE_LOG.warning
    log(suite, f"{outcome.status} in {runtime_ms:.0f} ms {outcome.detail}".rstrip(), check=check.name)
    return CheckResult(check=check.name, anchor=check.anchor, runtime_ms=runtime_ms, **outcome.model_dump())


async def run_checks(suite: str, checks: list[Check], max_workers: int) -> list[CheckResult]:
    loop = asyncio.get_running_loop()
    with ThreadPoolExecutor(max_workers=max_workers) as pool:
        results = await asyncio.gather(
            *[loop.run_in_executor(pool, _timed, suite, c) for c in checks]
        )
    return list(results)


def config_echo(config: Config) -> dict:
    return {k: v for k, v in dataclasses.asdict(config).items() if k not in ("log_level", "max_workers")}


async def run_suite_async(name: str, config: Config) -> SuiteReport:
    checks = suite_checks(name, config)
    TRACE_LOG.info(name, f"running {len(checks)} checks on {config.max_workers} workers")
    results = await run_checks(name, checks, config.max_workers)
    return SuiteReport(suite=name, config=config_echo(config), checks=results)


def run_suite(name: str, config: Config) -> SuiteReport:
    return asyncio.run(run_suite_async(name, config))
