#!/usr/bin/env python3
"""
kpverify - exact verification of Kontsevich-Penner and open partition function identities

This module provides the main entry points: running verification suites,
evaluating a single matrix model and writing its coefficient table.
"""

from pathlib import Path
from typing import Optional, Sequence, Union

from kpverify.config import Config, LOG
from kpverify.models import ModelName, SuiteReport
from kpverify.core.pipelines import (
    GENERAL_S,
    SUBSTITUTED,
    PipelineResult,
    eval_BT_remark,
    eval_IMe_ext,
    eval_ZN,
    eval_ZN_ext,
    eval_Zo2,
)
from kpverify.core.suites import render_model, report_emit, run_suite_async, run_suite
from kpverify.utils.errors import ConfigurationError, ValidationError


class KPVerify:
    """
    Main interface for kpverify.

    Examples:
        # Method 1: default configuration (kpverify.yaml if present)
        kp = KPVerify()

        # Method 2: from a YAML or key=value file
        kp = KPVerify.from_file("kpverify.yaml")

        # Method 3: from parameters
        kp = KPVerify.from_config(matrix_dim=2, eigenvalues=["1", "2"], depth=4)

        report = kp.run_suite("theorem1")
        result = kp.evaluate("zn")
    """

    def __init__(self, config: Optional[Config] = None):
        """
        Args:
            config: Config object. If None, loads ``kpverify.yaml`` from the working directory.

        Raises:
            ConfigurationError: If configuration is invalid or cannot be loaded.
        """
        try:
            self.config = config if config is not None else Config.load_config("kpverify.yaml")
        except ConfigurationError:
            raise
        except Exception as e:
            raise ConfigurationError(f"Failed to load configuration: {str(e)}") from e

    @classmethod
    def from_file(cls, path: Union[str, Path]) -> "KPVerify":
        return cls(Config.load_config(str(path)))

    @classmethod
    def from_config(cls, **kwargs) -> "KPVerify":
        try:
            return cls(Config(**kwargs))
        except TypeError as e:
            raise ConfigurationError(f"Invalid configuration parameters: {e}") from e

    def run_suite(self, name: str) -> SuiteReport:
        """Run a verification suite; unknown names raise ValidationError."""
        return run_suite(name, self.config)

    async def run_suite_async(self, name: str) -> SuiteReport:
        return await run_suite_async(name, self.config)

    def emit(self, report: SuiteReport, path: Union[str, Path, None], fmt: Optional[str] = None,
             with_runtime: bool = False) -> str:
        return report_emit(report, path, fmt or self.config.output_format, with_runtime)

    def evaluate(self, model: str, lam: Optional[Sequence] = None) -> PipelineResult:
        """Evaluate one model with the configured shape and caps."""
        c = self.config
        try:
            name = ModelName(model)
        except ValueError:
            raise ValidationError(
                f"Unknown model {model!r}; expected one of {', '.join(m.value for m in ModelName)}"
            ) from None
        lam = tuple(lam) if lam is not None else c.lambda_tuple()
        M, D, budget = c.matrix_dim, c.depth, c.pairing_budget
        LOG.info(f"Evaluating {name} at M={M}, N={c.penner_power}, depth={D}")
        if name == ModelName.ZN:
            return eval_ZN(M, c.penner_power, lam, D, budget)
        if name == ModelName.IME:
            return eval_IMe_ext(M, lam, D, c.s_cap, budget)
        if name == ModelName.ZO2:
            return eval_Zo2(M, lam, D, c.s_cap, c.sminus_cap, budget)
        if name == ModelName.BT:
            return eval_BT_remark(M, lam, D, c.s_cap, c.sminus_cap, budget)
        mode = GENERAL_S if c.s_time_caps else SUBSTITUTED
        return eval_ZN_ext(M, c.penner_power, lam, D, mode, c.s_time_caps, budget)

    def expand_model(self, model: str, path: Union[str, Path, None] = None, fmt: Optional[str] = None) -> str:
        """Coefficient table of one model; written to ``path`` when given."""
        text = render_model(self.evaluate(model).to_model_result(), fmt or self.config.output_format)
        if path is not None:
            Path(path).write_text(text, encoding="utf-8")
        return text
