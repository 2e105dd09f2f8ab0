"""Backend selection for the stepping kernels.

The compiled extension is used when importable; otherwise the pure-Python
fallback.  ZAKBENCH_KERNELS={cython,python} forces a choice (raises if the
compiled backend is requested but missing).  Within one installation the
selection is fixed, which keeps run outputs reproducible byte for byte.
"""

from __future__ import annotations

import os

import numpy as np

from . import _kernels_py

_forced = os.environ.get("ZAKBENCH_KERNELS", "").strip().lower()

if _forced == "python":
    _impl = _kernels_py
elif _forced == "cython":
    from . import _kernels as _impl  # type: ignore[no-redef]
else:
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _kernels_py

BACKEND: str = _impl.BACKEND


def available_backends():
    """Map of backend name to kernel module, for parity tests and benchmarks."""
    found = {"python": _kernels_py}
    try:
        from . import _kernels

        found["cython"] = _kernels
    except ImportError:
        pass
    return found


def _as_c(a, dtype):
    return np.ascontiguousarray(a, dtype=dtype)


def evolve_c2(cs, sx, sy, psi0, impl=None) -> np.ndarray:
    """Run the two-level stepping loop; returns states of shape (n+1, 2)."""
    impl = impl or _impl
    n = len(cs)
    out = np.empty((n + 1, 2), dtype=np.complex128)
    out[0] = psi0
    impl.evolve_c2(_as_c(cs, float), _as_c(sx, float), _as_c(sy, float), out)
    return out


def evolve_r4(cs, sx, sy, psi0, impl=None) -> np.ndarray:
    """Run the four-level stepping loop; returns states of shape (n+1, 4)."""
    impl = impl or _impl
    n = len(cs)
    out = np.empty((n + 1, 4), dtype=np.complex128)
    out[0] = psi0
    impl.evolve_r4(_as_c(cs, float), _as_c(sx, float), _as_c(sy, float), out)
    return out


def apply_steps(U, psi0, impl=None) -> np.ndarray:
    """Sequentially apply step matrices U (n, d, d) to psi0; returns (n+1, d)."""
    impl = impl or _impl
    U = _as_c(U, np.complex128)
    n, d = U.shape[0], U.shape[1]
    if d > 8:
        raise ValueError(f"kernel supports dimension <= 8, got {d}")
    out = np.empty((n + 1, d), dtype=np.complex128)
    out[0] = psi0
    impl.apply_steps(U, out)
    return out


def lab_evolve(ct, st, mode_coeffs, p0, v0, impl=None):
    """Run the oscillator-network stepping loop.

    mode_coeffs: (c1p, c2p, c3p, c4p, c1m, c2m, c3m, c4m) per-step propagator
    entries for the two stiffness branches.  Returns (positions, velocities),
    each of shape (n+1, 4).
    """
    impl = impl or _impl
    n = len(ct)
    out_p = np.empty((n + 1, 4), dtype=float)
    out_v = np.empty((n + 1, 4), dtype=float)
    out_p[0] = p0
    out_v[0] = v0
    coeffs = [_as_c(c, float) for c in mode_coeffs]
    impl.lab_evolve(_as_c(ct, float), _as_c(st, float), *coeffs, out_p, out_v)
    return out_p, out_v
