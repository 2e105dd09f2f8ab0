#!/usr/bin/env python3
"""Benchmark the compiled stepping kernels against the pure-Python fallback.

Run:  python3 benchmarks/bench_kernels.py [--steps N] [--repeat R]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from zakbench import kernels
from zakbench.evolve import _step_factors
from zakbench.labframe import CavityConfig, _mode_coefficients
from zakbench.model import ModelParams, build_schedule_pair


def best_of(repeat, fn):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--steps", type=int, default=40000)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    impls = kernels.available_backends()
    if "cython" not in impls:
        print("compiled backend not available; showing python fallback only")

    params = ModelParams(1, 5, 0)
    sched_a, _ = build_schedule_pair(params, 200.0, args.steps)
    cs, sx, sy = _step_factors(params, sched_a)
    psi2 = np.array([1.0, 1.0], dtype=complex) / np.sqrt(2.0)
    psi4 = np.array([0.5, 0.5, 0.5, 0.5], dtype=complex)

    cav = CavityConfig()
    n_lab = int(round(cav.T * cav.sample_rate))
    dt = 1.0 / cav.sample_rate
    mid = (np.arange(n_lab) + 0.5) * dt
    k = np.pi * mid / cav.T
    q = params.w + params.v * np.exp(1j * k) + params.J * np.exp(2j * k)
    E = np.abs(q)
    theta = np.angle(q)
    w0 = cav.omega0
    coeffs = _mode_coefficients(w0 * w0 + 2 * w0 * cav.g0 * E, 0.0, dt)
    coeffs += _mode_coefficients(w0 * w0 - 2 * w0 * cav.g0 * E, 0.0, dt)
    ct, st = np.cos(theta), np.sin(theta)
    p0 = np.full(4, 0.5)
    v0 = np.zeros(4)

    rng = np.random.default_rng(1)
    U = np.ascontiguousarray(
        np.linalg.qr(rng.standard_normal((2000, 4, 4)) + 1j * rng.standard_normal((2000, 4, 4)))[0]
    )

    cases = [
        ("two-level steps", lambda impl: kernels.evolve_c2(cs, sx, sy, psi2, impl=impl)),
        ("four-level steps", lambda impl: kernels.evolve_r4(cs, sx, sy, psi4, impl=impl)),
        ("lab oscillator steps", lambda impl: kernels.lab_evolve(ct, st, coeffs, p0, v0, impl=impl)),
        ("generic unitary steps", lambda impl: kernels.apply_steps(U, psi4, impl=impl)),
    ]

    print(f"{'kernel':<24}{'python':>12}{'cython':>12}{'speedup':>10}")
    for name, fn in cases:
        t_py = best_of(args.repeat, lambda: fn(impls["python"]))
        if "cython" in impls:
            t_cy = best_of(args.repeat, lambda: fn(impls["cython"]))
            print(f"{name:<24}{t_py * 1e3:>10.2f}ms{t_cy * 1e3:>10.3f}ms{t_py / t_cy:>9.0f}x")
        else:
            print(f"{name:<24}{t_py * 1e3:>10.2f}ms{'-':>12}{'-':>10}")

    # both backends must agree sample for sample
    for name, fn in cases[:3]:
        if "cython" in impls:
            a = fn(impls["python"])
            b = fn(impls["cython"])
            a = a[0] if isinstance(a, tuple) else a
            b = b[0] if isinstance(b, tuple) else b
            same = np.array_equal(a, b)
            print(f"{name}: backends bitwise identical: {same}")


if __name__ == "__main__":
    main()
