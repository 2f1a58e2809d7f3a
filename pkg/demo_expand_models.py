#!/usr/bin/env python3
"""
Demo: Expanding Matrix Models and Running Suites

This demo walks through the programmatic API:

1. Build a configuration from parameters (no file needed)
2. Expand the Kontsevich-Penner model and read exact coefficients
3. Compare it with the Ginibre-extended model at the substituted times
4. Run a verification suite concurrently and print the report

Every coefficient is an exact rational; the only floating point in the
package lives in the `numeric` suite.
"""

import asyncio

from kpverify import KPVerify
from kpverify.core.pipelines import common_region, region_compare
from kpverify.core.ring import format_scalar


def demo_expand():
    """Expand Z_N at M = 1, λ = 1 and print the certified coefficients."""

    print("=" * 80)
    print("Part 1: Kontsevich-Penner coefficients")
    print("=" * 80)
    print()

    for N in (0, 1, 2):
        kp = KPVerify.from_config(matrix_dim=1, eigenvalues=["1"], penner_power=N, depth=6)
        result = kp.evaluate("zn")
        print(f"📌 N = {N}, region {result.region}")
        for row in result.to_model_result().coefficients:
            print(f"   {row.exponents or {'eps': 0}}: {row.value}")
        print()


def demo_extended():
    """The extended model at s_i = s_i(Λ) reproduces Z_N."""

    print("=" * 80)
    print("Part 2: Extended model at the substituted times")
    print("=" * 80)
    print()

    kp = KPVerify.from_config(matrix_dim=1, eigenvalues=["2"], penner_power=2, depth=3)
    zn = kp.evaluate("zn")
    ext = kp.evaluate("znext")
    region = common_region(zn.region, ext.region)
    same, mismatches = region_compare(zn.series, ext.series, region)
    print(f"✓ ε³ coefficient of Z_2: {format_scalar(zn.series.coeff(eps=3))}")
    print(f"{'✓' if same else '❌'} equal on {region}" + ("" if same else f": {mismatches}"))
    print()


async def demo_suite():
    """Run the lemma1 suite on four workers."""

    print("=" * 80)
    print("Part 3: Running a suite")
    print("=" * 80)
    print()

    kp = KPVerify.from_config(max_workers=4)
    report = await kp.run_suite_async("lemma1")
    for check in report.checks:
        print(f"   {check.status:<13} {check.check:<20} {check.runtime_ms} ms")
    print()
    print(f"Overall: {report.status}")
    print("=" * 80)


if __name__ == "__main__":
    print()
    print("╔" + "═" * 78 + "╗")
    print("║" + "     kpverify: exact matrix-model expansions".center(78) + "║")
    print("╚" + "═" * 78 + "╝")
    print()

    try:
        demo_expand()
        demo_extended()
        asyncio.run(demo_suite())
    except KeyboardInterrupt:
        print("\n\n⚠️  Demo interrupted by user")
    except Exception as e:
        print(f"\n\n❌ Demo error: {e}")
        import traceback
        traceback.print_exc()
