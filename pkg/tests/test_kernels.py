import numpy as np
import pytest

from zakbench import kernels
from zakbench.labframe import _mode_coefficients

IMPLS = kernels.available_backends()

needs_both = pytest.mark.skipif(
    "cython" not in IMPLS, reason="compiled backend not built"
)


def step_arrays(n, seed=0):
    rng = np.random.default_rng(seed)
    phase = rng.uniform(0, 0.2, n)
    ang = rng.uniform(-np.pi, np.pi, n)
    return np.cos(phase), np.sin(phase) * np.cos(ang), np.sin(phase) * np.sin(ang)


class TestParity:
    @needs_both
    def test_two_level_bitwise(self):
        cs, sx, sy = step_arrays(20000)
        psi = np.array([1.0, 1.0j]) / np.sqrt(2)
        a = kernels.evolve_c2(cs, sx, sy, psi, impl=IMPLS["python"])
        b = kernels.evolve_c2(cs, sx, sy, psi, impl=IMPLS["cython"])
        assert np.array_equal(a, b)

    @needs_both
    def test_four_level_bitwise(self):
        cs, sx, sy = step_arrays(20000, seed=1)
        psi = np.array([0.5, 0.5, 0.5, 0.5], dtype=complex)
        a = kernels.evolve_r4(cs, sx, sy, psi, impl=IMPLS["python"])
        b = kernels.evolve_r4(cs, sx, sy, psi, impl=IMPLS["cython"])
        assert np.array_equal(a, b)

    @needs_both
    def test_lab_bitwise(self):
        n = 10000
        rng = np.random.default_rng(2)
        w0 = 2 * np.pi * 1955.0
        dt = 1 / 80000.0
        E = rng.uniform(0, 6, n)
        coeffs = _mode_coefficients(w0**2 + 2 * w0 * 250 * E, 25.0, dt)
        coeffs += _mode_coefficients(w0**2 - 2 * w0 * 250 * E, 25.0, dt)
        ang = rng.uniform(-np.pi, np.pi, n)
        args = (np.cos(ang), np.sin(ang), coeffs, np.full(4, 0.5), np.zeros(4))
        pa, va = kernels.lab_evolve(*args, impl=IMPLS["python"])
        pb, vb = kernels.lab_evolve(*args, impl=IMPLS["cython"])
        assert np.array_equal(pa, pb)
        assert np.array_equal(va, vb)

    @needs_both
    def test_generic_steps_close(self):
        rng = np.random.default_rng(3)
        U = np.linalg.qr(rng.standard_normal((500, 4, 4)) + 1j * rng.standard_normal((500, 4, 4)))[0]
        psi = np.zeros(4, dtype=complex)
        psi[0] = 1.0
        a = kernels.apply_steps(np.ascontiguousarray(U), psi, impl=IMPLS["python"])
        b = kernels.apply_steps(np.ascontiguousarray(U), psi, impl=IMPLS["cython"])
        assert np.max(np.abs(a - b)) <= 1e-13


class TestContracts:
    def test_identity_steps_hold_state(self):
        n = 100
        cs = np.ones(n)
        zeros = np.zeros(n)
        psi = np.array([0.6, 0.8j])
        out = kernels.evolve_c2(cs, zeros, zeros, psi)
        assert np.array_equal(out[-1], psi)

    def test_norm_preservation(self):
        cs, sx, sy = step_arrays(5000, seed=4)
        psi = np.array([1.0, 1.0]) / np.sqrt(2)
        out = kernels.evolve_c2(cs, sx, sy, psi)
        assert np.max(np.abs(np.linalg.norm(out, axis=1) - 1.0)) <= 1e-10

    def test_reruns_identical(self):
        cs, sx, sy = step_arrays(5000, seed=5)
        psi = np.array([0.5, 0.5, 0.5, 0.5], dtype=complex)
        a = kernels.evolve_r4(cs, sx, sy, psi)
        b = kernels.evolve_r4(cs, sx, sy, psi)
        assert np.array_equal(a, b)

    def test_dimension_cap(self):
        U = np.zeros((3, 9, 9), dtype=complex)
        with pytest.raises(ValueError):
            kernels.apply_steps(U, np.zeros(9, dtype=complex))


class TestBenchmarkScript:
    def test_runs_and_reports_parity(self):
        import os
        import subprocess
        import sys

        script = os.path.join(os.path.dirname(__file__), os.pardir,
                              "benchmarks", "bench_kernels.py")
        result = subprocess.run(
            [sys.executable, script, "--steps", "2000", "--repeat", "1"],
            capture_output=True, text=True, timeout=300,
        )
        assert result.returncode == 0, result.stderr
        assert "kernel" in result.stdout
        if "cython" in IMPLS:
            assert "bitwise identical: True" in result.stdout
