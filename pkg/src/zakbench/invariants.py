"""Momentum-space topological invariants of the two-band chain.

The winding number counts how often q(k) encircles the origin over one zone
sweep; it is computed from summed principal-value increments of arg q, which
total an exact multiple of 2 pi on a closed loop.  The Wilson-loop route
computes the same invariant (times pi, mod 2 pi) from a gauge-invariant
product of numerical eigenvector overlaps and serves as an independent
cross-check of the analytic-gauge quantities.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import GaplessPoint, UnwrapJump
from .model import DEFAULT_QUAD_N, ModelParams, brillouin_grid, q_of_k

THETA_GUARD = math.pi / 2


def _principal_increments(angles: np.ndarray) -> np.ndarray:
    d = np.diff(angles)
    return d - 2.0 * np.pi * np.ceil((d - np.pi) / (2.0 * np.pi))


def theta_along(params: ModelParams, k_values, guard: float = THETA_GUARD) -> np.ndarray:
    """Continuous continuation of arg q along a sampled momentum path.

    Starts from the principal value at the first sample (exactly 0 at k = 0
    when w + v + J > 0).  Raises GaplessPoint if the path touches a zero of q
    and UnwrapJump if sampling is too coarse to continue the angle.
    """
    k_values = np.asarray(k_values, dtype=float)
    q = q_of_k(params, k_values)
    q = np.atleast_1d(q)
    if float(np.min(np.abs(q))) <= params.gapless_threshold:
        raise GaplessPoint("arg q undefined on a band touching along the path")
    raw = np.angle(q)
    inc = _principal_increments(raw)
    if len(inc) and np.max(np.abs(inc)) >= guard:
        raise UnwrapJump(
            f"arg q increment {float(np.max(np.abs(inc))):.4f} >= {guard:.4f}; "
            "increase the sample count"
        )
    out = np.empty_like(raw)
    out[0] = raw[0]
    out[1:] = raw[0] + np.cumsum(inc)
    return out


def theta_unwrapped(params: ModelParams, K: float, N: int = DEFAULT_QUAD_N) -> float:
    """Continued arg q at momentum K, marching from k = 0 over N points."""
    if not params.w + params.v + params.J > 0:
        raise ValueError("continuation from k = 0 requires w + v + J > 0")
    if N < 2:
        raise ValueError(f"need N >= 2 marching points, got {N}")
    return float(theta_along(params, np.linspace(0.0, K, N))[-1])


@dataclass(frozen=True)
class WindingResult:
    """Winding number with its Wilson-loop counterpart and the sampled gap floor."""

    W: int
    zak_mod_2pi: float
    min_abs_q: float


def _closed_loop_samples(params: ModelParams, N: int) -> np.ndarray:
    k = brillouin_grid(N)
    q = q_of_k(params, k)
    return np.concatenate([q, q[:1]])  # exact closure


def winding_of_samples(z: np.ndarray) -> int:
    """Winding of a closed complex polyline (first point equals last) about 0."""
    z = np.asarray(z, dtype=complex)
    if z[0] != z[-1]:
        raise ValueError("polyline is not closed")
    if np.any(z == 0):
        raise GaplessPoint("polyline passes exactly through the origin")
    total = float(np.sum(_principal_increments(np.angle(z))))
    raw = total / (2.0 * np.pi)
    W = round(raw)
    if abs(raw - W) >= 1e-6:
        raise ArithmeticError(f"winding sum {raw} is not integral")
    return int(W)


def winding_number(params: ModelParams, N: int = DEFAULT_QUAD_N) -> WindingResult:
    """Integer winding of q(k) over the zone, with the Wilson-loop phase."""
    z = _closed_loop_samples(params, N)
    min_q = float(np.min(np.abs(z)))
    if min_q <= params.gapless_threshold:
        raise GaplessPoint(f"sampled band touching (min |q| = {min_q:.3e})")
    W = winding_of_samples(z)
    return WindingResult(W=W, zak_mod_2pi=zak_wilson(params, N), min_abs_q=min_q)


def zak_wilson(params: ModelParams, N: int = DEFAULT_QUAD_N, band: str = "upper") -> float:
    """Geometric phase of one band from the discrete Wilson loop, in [0, 2 pi).

    -arg prod_i <u(k_i)|u(k_{i+1})> over the closed N-point loop, built from
    numerically diagonalized Bloch matrices; per-point gauge factors cancel in
    the closed product.
    """
    if band not in ("upper", "lower"):
        raise ValueError("band must be 'upper' or 'lower'")
    k = brillouin_grid(N)
    q = q_of_k(params, k)
    if float(np.min(np.abs(q))) <= params.gapless_threshold:
        raise GaplessPoint("band touching on the loop; Zak phase undefined")
    H = np.zeros((N, 2, 2), dtype=complex)
    H[:, 0, 1] = np.conj(q)
    H[:, 1, 0] = q
    _, vecs = np.linalg.eigh(H)
    u = vecs[:, :, 1] if band == "upper" else vecs[:, :, 0]
    u_next = np.roll(u, -1, axis=0)  # closed: last overlaps with first
    overlaps = np.sum(np.conj(u) * u_next, axis=1)
    phase = -np.angle(np.prod(overlaps))
    return float(np.mod(phase, 2.0 * np.pi))


BOUNDARY = "boundary"


@dataclass
class PhaseDiagramGrid:
    """Winding map over coupling ratios at fixed w = 1.

    W[i, j] is the winding for (v_values[i], J_values[j]); boundary[i, j]
    marks cells where the sampled loop touches a zone gap closure, where no
    winding is assigned.
    """

    v_values: np.ndarray
    J_values: np.ndarray
    W: np.ndarray
    boundary: np.ndarray
    min_abs_q: np.ndarray

    def cell(self, v: float, J: float):
        """Winding at the grid cell nearest to (v, J), or the boundary marker."""
        i = int(np.argmin(np.abs(self.v_values - v)))
        j = int(np.argmin(np.abs(self.J_values - J)))
        if self.boundary[i, j]:
            return BOUNDARY
        return int(self.W[i, j])


def phase_diagram(
    v_values, J_values, N: int = DEFAULT_QUAD_N, w: float = 1.0
) -> PhaseDiagramGrid:
    """Winding map on the (v/w, J/w) grid; gap closures become boundary cells."""
    if w != 1.0:
        raise ValueError("phase diagram axes are ratios; w is fixed to 1")
    v_values = np.asarray(v_values, dtype=float)
    J_values = np.asarray(J_values, dtype=float)
    if v_values.size == 0 or J_values.size == 0:
        raise ValueError("empty axis")
    k = brillouin_grid(N)
    ek = np.exp(1j * k)
    e2k = np.exp(2j * k)
    nv, nJ = len(v_values), len(J_values)
    W = np.zeros((nv, nJ), dtype=int)
    boundary = np.zeros((nv, nJ), dtype=bool)
    min_q = np.zeros((nv, nJ))
    for i, v in enumerate(v_values):
        # one row at a time keeps the (nJ, N) workspace small
        q = 1.0 + v * ek[None, :] + J_values[:, None] * e2k[None, :]
        q = np.concatenate([q, q[:, :1]], axis=1)
        absq = np.abs(q)
        row_min = absq.min(axis=1)
        min_q[i] = row_min
        thresholds = 1e-9 * np.maximum(1.0, np.maximum(abs(v), np.abs(J_values)))
        on_boundary = row_min <= thresholds
        boundary[i] = on_boundary
        inc = _principal_increments(np.angle(q))  # diffs along the loop axis
        raw = inc.sum(axis=1) / (2.0 * np.pi)
        with np.errstate(invalid="ignore"):
            W[i] = np.where(on_boundary, 0, np.round(raw).astype(int))
        bad = ~on_boundary & (np.abs(raw - np.round(raw)) >= 1e-6)
        if np.any(bad):
            raise ArithmeticError("non-integral winding away from a detected boundary")
    return PhaseDiagramGrid(
        v_values=v_values, J_values=J_values, W=W, boundary=boundary, min_abs_q=min_q
    )


def q_trajectory(params: ModelParams, N: int = DEFAULT_QUAD_N) -> np.ndarray:
    """Closed complex-plane trajectory of q(k) over one zone (first point == last)."""
    return _closed_loop_samples(params, N)
