"""Command line: ``kpverify verify <suite>`` and ``kpverify expand <model>``.

Exit status: 0 pass, 1 fail, 3 inconclusive, 2 usage error.
"""

import argparse
import sys
from typing import List, Optional

from kpverify.config import Config, LOG
from kpverify.main import KPVerify
from kpverify.models import CheckStatus, ModelName, SuiteName
from kpverify.utils.errors import ConfigurationError, KPVerifyError, ValidationError

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_INCONCLUSIVE = 3

STATUS_EXIT = {
    CheckStatus.PASS: EXIT_PASS,
    CheckStatus.FAIL: EXIT_FAIL,
    CheckStatus.INCONCLUSIVE: EXIT_INCONCLUSIVE,
}

# flag dest -> Config field
FLAG_FIELDS = {
    "M": "matrix_dim",
    "N": "penner_power",
    "depth": "depth",
    "s_cap": "s_cap",
    "sminus_cap": "sminus_cap",
    "seed": "seed",
    "tol": "tol",
    "format": "output_format",
    "weight": "virasoro_weight",
    "range_convention": "range_convention",
    "workers": "max_workers",
    "log_level": "log_level",
}


def _shape_flags(p: argparse.ArgumentParser):
    p.add_argument("--config", type=str, default=None, help="YAML or key=value configuration file.")
    p.add_argument("--M", type=int, default=None, help="Hermitian matrix size.")
    p.add_argument("--N", type=int, default=None, help="Penner power / Ginibre size.")
    p.add_argument("--lambda", type=str, default=None, dest="lam", help="Eigenvalues, e.g. 1,3/2.")
    p.add_argument("--depth", type=int, default=None, help="ε cap.")
    p.add_argument("--s-cap", type=int, default=None, dest="s_cap", help="s cap.")
    p.add_argument("--sminus-cap", type=int, default=None, dest="sminus_cap", help="s_- cap.")
    p.add_argument("--s-time-caps", type=str, default=None, dest="s_time_caps",
                   help="Caps of s_0,s_1,… for the general-s extended model, e.g. 2,1.")
    p.add_argument("--seed", type=int, default=None, help="Seed for sampled eigenvalues and points.")
    p.add_argument("--tol", type=float, default=None, help="Relative tolerance of the quadrature checks.")
    p.add_argument("--out", type=str, default=None, help="Output path (stdout when omitted).")
    p.add_argument("--format", choices=["json", "csv"], default=None, help="Output format.")
    p.add_argument("--log-level", choices=["DEBUG", "INFO", "WARNING", "ERROR"], default=None, dest="log_level")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="kpverify", description="Exact verification of matrix-model identities.")
    sub = p.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="Run a verification suite.")
    verify.add_argument("suite", help=f"One of: {', '.join(s.value for s in SuiteName)}.")
    _shape_flags(verify)
    verify.add_argument("--weight", type=int, default=None, help="Virasoro extraction weight.")
    verify.add_argument("--range-convention", choices=["corrected", "as-written"], default=None,
                        dest="range_convention")
    verify.add_argument("--workers", type=int, default=None, help="Concurrent checks.")
    verify.add_argument("--timings", action="store_true", help="Include runtimes in the report.")

    expand = sub.add_parser("expand", help="Write the coefficient table of one model.")
    expand.add_argument("model", choices=[m.value for m in ModelName])
    _shape_flags(expand)
    return p


def config_from_args(args: argparse.Namespace) -> Config:
    """File values first, then flags."""
    base = Config.load_config(args.config) if args.config else Config()
    overrides = {field: getattr(args, dest, None) for dest, field in FLAG_FIELDS.items()}
    if args.lam is not None:
        overrides["eigenvalues"] = [v.strip() for v in args.lam.split(",") if v.strip()]
        if overrides["matrix_dim"] is None:
            overrides["matrix_dim"] = len(overrides["eigenvalues"])
    if args.s_time_caps is not None:
        overrides["s_time_caps"] = [int(v) for v in args.s_time_caps.split(",") if v.strip()]
    return base.with_overrides(**overrides)


def _write(text: str, path: Optional[str]):
    if path is None:
        sys.stdout.write(text)


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = config_from_args(args)
    except (ConfigurationError, ValueError) as e:
        LOG.error(f"Invalid configuration: {e}")
        return EXIT_USAGE
    LOG.setLevel(config.log_level)
    kp = KPVerify(config)

    if args.command == "verify":
        try:
            report = kp.run_suite(args.suite)
        except ValidationError as e:
            LOG.error(str(e))
            return EXIT_USAGE
        _write(kp.emit(report, args.out, with_runtime=args.timings), args.out)
        LOG.info(f"suite {report.suite}: {report.status}")
        return STATUS_EXIT[report.status]

    try:
        text = kp.expand_model(args.model, args.out)
    except KPVerifyError as e:
        LOG.error(f"{type(e).__name__}: {e}")
        return EXIT_FAIL
    _write(text, args.out)
    return EXIT_PASS


if __name__ == "__main__":
    sys.exit(main())
