#!/usr/bin/env python3
"""Smoke test for the jamsec_py extension module.

Build the extension first, then run this script:

    cargo build --release -p jamsec-python
    python3 python/smoke_test.py [--profile release]

The script locates the built cdylib, stages it under an importable name,
and exercises the main types and operations against known limits.
"""

import argparse
import math
import shutil
import sys
import tempfile
from pathlib import Path

REPO_ROOT = Path(__file__).resolve().parent.parent


def stage_module(profile: str) -> None:
    built = REPO_ROOT / "target" / profile / "libjamsec_py.so"
    if not built.exists():
        sys.exit(
            f"{built} not found — run `cargo build --profile {profile} -p jamsec-python` first"
            if profile != "debug"
            else f"{built} not found — run `cargo build -p jamsec-python` first"
        )
    stage = Path(tempfile.mkdtemp(prefix="jamsec-py-"))
    shutil.copy2(built, stage / "jamsec_py.so")
    sys.path.insert(0, str(stage))


def expect(label: str, ok: bool, detail: str = "") -> bool:
    print(f"{'PASS' if ok else 'FAIL'}  {label}" + (f"  ({detail})" if detail else ""))
    return ok


def main() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("--profile", default="debug", choices=["debug", "release"])
    args = parser.parse_args()
    stage_module(args.profile)

    import jamsec_py as jam

    ok = True

    # Special functions and geometry.
    ok &= expect("Q(0) = 1/2", jam.q_function(0.0) == 0.5)
    ok &= expect(
        "Q(1) tail value",
        abs(jam.q_function(1.0) - 0.15865525393145705) < 1e-14,
    )
    ok &= expect(
        "law-of-cosines distance",
        abs(jam.horizontal_distance(100.0, 340.0, math.pi) - 440.0) < 1e-12,
    )

    env = jam.EnvironmentParams()
    cfg = jam.NetworkConfig()
    placement = jam.JammerPlacement(d_tu=200.0, z_u=100.0, theta_r=math.pi)

    ok &= expect(
        "LoS probability reference",
        abs(jam.los_probability(100.0, 100.0, env) - 0.7748740141420378) < 1e-12,
    )

    # Success/eavesdropping decomposition at the reference point.
    result = jam.p_secrecy(placement, cfg, env)
    ok &= expect(
        "p_se = p_s (1 - p_e)",
        abs(result.p_se - result.p_s * (1.0 - result.p_e)) < 1e-14,
        repr(result),
    )
    ok &= expect(
        "reference p_success",
        abs(result.p_s - 0.6964457486628307) < 1e-12,
    )

    # Near-Tx asymptote approaches the exact value.
    near = jam.JammerPlacement(d_tu=1.0, z_u=1.0, theta_r=math.pi)
    exact = jam.p_secrecy(near, cfg, env).p_se
    asym = jam.p_secrecy_asymptotic(near, cfg, env)
    ok &= expect(
        "near-Tx asymptote within 5%",
        abs(asym - exact) / exact < 0.05,
        f"exact {exact:.6f} vs asymptote {asym:.6f}",
    )

    # Multi-jammer closed form is an identity at alpha_N = 4.
    env4 = jam.EnvironmentParams(alpha_nlos=4.0)
    cfg4 = jam.NetworkConfig(ell_r=50.0, lambda_e=1e-5, p_jam=2e-11)
    field = jam.MultiJammerSettings(lambda_u=7e-6, z_u=0.0)
    closed = jam.p_secrecy_multi_closed_form(field, cfg4, env4)
    quadrature = jam.p_secrecy_multi_asymptotic(field, cfg4, env4)
    ok &= expect(
        "alpha_N=4 closed form identity",
        abs(closed - quadrature) / closed < 1e-8,
        f"{closed:.10f} vs {quadrature:.10f}",
    )

    # Simulation agrees with the analytic single-jammer value.
    estimate = jam.simulate_secrecy(placement, cfg, env, n=50_000, seed=7)
    dev = abs(result.p_se - estimate.mean) / estimate.std_error
    ok &= expect(
        "simulation within 4 sigma",
        dev <= 4.0,
        f"{estimate!r}, {dev:.2f} sigma",
    )

    # Determinism contract.
    again = jam.simulate_secrecy(placement, cfg, env, n=50_000, seed=7)
    ok &= expect("identical seeds reproduce bitwise", again.mean == estimate.mean)

    # Optimizer sanity: the optimal angle-constrained placement beats the
    # reference point.
    best = jam.optimize_placement(
        cfg, env, d_tu=(0.0, 680.0, 18), z_u=(0.0, 300.0, 7), refine_iterations=3
    )
    ok &= expect(
        "optimizer improves on the reference placement",
        best.p_se_star >= result.p_se,
        repr(best),
    )

    # Invalid parameters raise ValueError.
    try:
        jam.EnvironmentParams(alpha_nlos=1.0)
        ok &= expect("invalid environment rejected", False)
    except ValueError as err:
        ok &= expect("invalid environment rejected", "alpha_nlos" in str(err))

    print("smoke test:", "PASS" if ok else "FAIL")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
