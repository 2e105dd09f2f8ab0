"""Carrier-frequency emulation of the four-cavity measurement.

Four resonators at f0 with time-modulated real couplings obey

    p''_j + gamma p'_j + w0^2 p_j + 2 w0 sum_l kappa_jl(t) p_l = 0,

with w0 = 2 pi f0 and kappa(t) = g0 times the realified Bloch pattern on the
drive path k(t).  The slowly varying envelope of this system follows
i da/dt = Hr(t) a - i (gamma/2) a, which is exactly the four-level rotating
frame used by the fast modules, so demodulated envelopes validate the whole
reduction end to end.

Integration is a per-step midpoint exponential in the instantaneous normal
modes: the stiffness eigenbasis is known in closed form from the Bloch angle,
and a uniformly damped oscillator has an exact two-by-two propagator.  The
scheme is exact for frozen couplings; with the drive varying on the scale of
T it keeps local errors far below 1e-8 of the signal scale per step.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import kernels
from .errors import DegenerateComponent, RWAViolated
from .model import ModelParams
from .phase import DEGENERATE_RTOL, PhaseTrace, unwrap

# coupling-to-carrier guard: coupling spread in Hz at most 2 pi f0 / 20
RWA_GUARD_NUM = (2.0 * np.pi) ** 2 / 20.0
DEFAULT_DEMOD_CYCLES = 8


@dataclass(frozen=True)
class CavityConfig:
    """Physical-layer settings: carrier, damping, coupling scale, sampling."""

    f0: float = 1955.0
    gamma: float = 0.0
    g0: float = 2.0 * np.pi * 40.0
    sample_rate: float = 80000.0
    T: float = 0.5

    def __post_init__(self):
        if not (self.f0 > 0 and math.isfinite(self.f0)):
            raise ValueError(f"f0 must be positive, got {self.f0}")
        if self.gamma < 0:
            raise ValueError(f"gamma must be >= 0, got {self.gamma}")
        if not (self.g0 > 0 and math.isfinite(self.g0)):
            raise ValueError(f"g0 must be positive, got {self.g0}")
        if self.sample_rate < 40.0 * self.f0:
            raise ValueError(
                f"sample_rate {self.sample_rate} below 40 f0 = {40 * self.f0}"
            )
        if not (self.T > 0 and math.isfinite(self.T)):
            raise ValueError(f"T must be positive, got {self.T}")

    @property
    def omega0(self) -> float:
        return 2.0 * np.pi * self.f0

    @property
    def quality_factor(self) -> float:
        return math.inf if self.gamma == 0 else 2.0 * np.pi * self.f0 / self.gamma


def _coerce_couplings(params) -> tuple[float, float, float]:
    """Accept ModelParams or a raw (w, v, J) triple (all-zero allowed here)."""
    if isinstance(params, ModelParams):
        return params.as_tuple()
    w, v, J = (float(x) for x in params)
    if not all(math.isfinite(x) for x in (w, v, J)):
        raise ValueError(f"couplings must be finite, got {(w, v, J)}")
    return (w, v, J)


def check_rwa(params, config: CavityConfig) -> None:
    """Raise RWAViolated when the coupling spread is too large for the carrier."""
    w, v, J = _coerce_couplings(params)
    if config.g0 * (w + v + J) > RWA_GUARD_NUM * config.f0:
        raise RWAViolated(
            f"g0 (w+v+J) = {config.g0 * (w + v + J):.1f} rad/s exceeds the "
            f"rotating-frame guard {RWA_GUARD_NUM * config.f0:.1f} rad/s"
        )


def _q_raw(w: float, v: float, J: float, k: np.ndarray) -> np.ndarray:
    return w + v * np.exp(1j * k) + J * np.exp(2j * k)


@dataclass
class PressureTrace:
    """Real cavity pressures (and velocities) sampled at the configured rate."""

    times: np.ndarray
    pressures: np.ndarray
    velocities: np.ndarray
    config: CavityConfig
    couplings: tuple[float, float, float]
    path_sign: float
    frozen_k: Optional[float] = None


@dataclass
class EnvelopeTrace:
    """Demodulated complex envelopes in the plain carrier rotating frame."""

    times: np.ndarray
    envelopes: np.ndarray
    config: CavityConfig

    @property
    def norms(self) -> np.ndarray:
        return np.linalg.norm(self.envelopes, axis=1)


def _mode_coefficients(lam: np.ndarray, gamma: float, dt: float):
    """Exact (position, velocity) propagator entries for x'' + gamma x' + lam x = 0."""
    wd = np.sqrt(lam - gamma * gamma / 4.0)
    decay = math.exp(-gamma * dt / 2.0)
    co = np.cos(wd * dt)
    si = np.sin(wd * dt)
    c1 = decay * (co + (gamma / 2.0) * si / wd)
    c2 = decay * si / wd
    c3 = -lam * c2
    c4 = decay * (co - (gamma / 2.0) * si / wd)
    return c1, c2, c3, c4


def simulate_path(
    params,
    config: CavityConfig,
    path_sign: float = +1.0,
    frozen_k: Optional[float] = None,
    initial_pressure=0.5,
) -> PressureTrace:
    """Integrate one drive path (k = sign * pi t / T, or frozen couplings).

    initial_pressure may be a scalar (all four cavities equal, velocities
    zero) or a 4-vector; the default 0.5 encodes the resonant all-ones
    preparation of unit envelope norm.
    """
    w, v, J = _coerce_couplings(params)
    check_rwa((w, v, J), config)
    w0 = config.omega0
    n = int(round(config.T * config.sample_rate))
    dt = 1.0 / config.sample_rate
    times = np.arange(n + 1) * dt
    mid = (np.arange(n) + 0.5) * dt
    if frozen_k is None:
        k_mid = path_sign * np.pi * mid / config.T
    else:
        k_mid = np.full(n, float(frozen_k))
    q = _q_raw(w, v, J, k_mid)
    E = np.abs(q)
    theta = np.arctan2(q.imag, q.real)

    lam_plus = w0 * w0 + 2.0 * w0 * config.g0 * E
    lam_minus = w0 * w0 - 2.0 * w0 * config.g0 * E
    if float(lam_minus.min()) <= 0:
        raise RWAViolated("coupling drives the soft stiffness branch unstable")
    coeffs = _mode_coefficients(lam_plus, config.gamma, dt) + _mode_coefficients(
        lam_minus, config.gamma, dt
    )

    p0 = np.asarray(initial_pressure, dtype=float)
    if p0.ndim == 0:
        p0 = np.full(4, float(p0))
    if p0.shape != (4,):
        raise ValueError(f"initial pressure must be scalar or 4-vector, got {p0.shape}")
    v0 = np.zeros(4)
    pressures, velocities = kernels.lab_evolve(
        np.cos(theta), np.sin(theta), coeffs, p0, v0
    )
    return PressureTrace(
        times=times,
        pressures=pressures,
        velocities=velocities,
        config=config,
        couplings=(w, v, J),
        path_sign=float(path_sign),
        frozen_k=frozen_k,
    )


def simulate_lab(params, config: CavityConfig) -> tuple[PressureTrace, PressureTrace]:
    """Both mirror drive paths from the shared [0.5]*4 resonant preparation."""
    return (
        simulate_path(params, config, path_sign=+1.0),
        simulate_path(params, config, path_sign=-1.0),
    )


def mechanical_energy(trace: PressureTrace) -> np.ndarray:
    """Instantaneous oscillator energy, meaningful for frozen couplings.

    E = (|p'|^2 + w0^2 |p|^2 + 2 w0 p.kappa p)/2; monotone non-increasing for
    gamma >= 0 when the couplings do not change.
    """
    if trace.frozen_k is None:
        raise ValueError("energy bookkeeping requires a frozen-coupling trace")
    w, v, J = trace.couplings
    q = _q_raw(w, v, J, np.asarray(trace.frozen_k))
    w0 = trace.config.omega0
    dx, dy = float(q.real), float(q.imag)
    kappa = trace.config.g0 * np.array(
        [
            [0.0, 0.0, dx, dy],
            [0.0, 0.0, -dy, dx],
            [dx, -dy, 0.0, 0.0],
            [dy, dx, 0.0, 0.0],
        ]
    )
    stiffness = w0 * w0 * np.eye(4) + 2.0 * w0 * kappa
    p, vel = trace.pressures, trace.velocities
    return 0.5 * (
        np.einsum("ti,ti->t", vel, vel) + np.einsum("ti,ij,tj->t", p, stiffness, p)
    )


def _reference_phase(trace: PressureTrace) -> np.ndarray:
    """Drive reference w0 t + g0 int |q| dt on the trace grid (tracking lock-in)."""
    w, v, J = trace.couplings
    if trace.frozen_k is None:
        k = trace.path_sign * np.pi * trace.times / trace.config.T
    else:
        k = np.full_like(trace.times, float(trace.frozen_k))
    E = trace.config.g0 * np.abs(_q_raw(w, v, J, k))
    dt = 1.0 / trace.config.sample_rate
    phi = np.empty_like(trace.times)
    phi[0] = 0.0
    np.cumsum((E[1:] + E[:-1]) * (dt / 2.0), out=phi[1:])
    return phi


def demodulate(
    trace: PressureTrace,
    config: Optional[CavityConfig] = None,
    cycles: int = DEFAULT_DEMOD_CYCLES,
    tracking: bool = True,
) -> EnvelopeTrace:
    """Recover complex envelopes: a(t) = 2 LP[p(t) e^{i phi_ref(t)}].

    The low-pass is a centered moving average over `cycles` carrier periods,
    decimated to one sample per period; the convention is
    p(t) = Re[a(t) e^{-i 2 pi f0 t}].  With tracking=True (default) the mixer
    reference also rotates at the known drive's band frequency g0 |q(k(t))|
    and that rotation is reattached afterwards, so the returned envelope
    stays in the plain f0 frame but the averaging window only ever sees the
    slow geometric modulation.  A plain fixed-frequency mixer
    (tracking=False) attenuates envelopes whose band rotation approaches the
    window bandwidth.

    Averages are taken as local windowed sums, which keeps heavily damped
    tails (amplitudes far below the early signal) free of cancellation error.
    """
    config = config or trace.config
    if cycles < 1:
        raise ValueError(f"cycles must be >= 1, got {cycles}")
    fs = config.sample_rate
    w0 = config.omega0
    window = int(round(cycles * fs / config.f0))
    step = max(1, int(round(fs / config.f0)))
    n = len(trace.times)
    if window >= n:
        raise ValueError("trace shorter than one demodulation window")

    phi_ref = w0 * trace.times
    if tracking:
        phi_dyn = _reference_phase(trace)
        phi_ref = phi_ref + phi_dyn
    mixed = trace.pressures * np.exp(1j * phi_ref)[:, None]

    starts = np.arange(0, n - window + 1, step)
    idx = starts[:, None] + np.arange(window)[None, :]
    env = 2.0 * mixed[idx].mean(axis=1)
    centers = trace.times[starts] + (window - 1) / (2.0 * fs)
    if tracking:
        env = env * np.exp(-1j * np.interp(centers, trace.times, phi_dyn))[:, None]
    return EnvelopeTrace(times=centers, envelopes=env, config=config)


def lab_delta_phi(env_a: EnvelopeTrace, env_b: EnvelopeTrace) -> PhaseTrace:
    """Interferometric phase difference from demodulated envelope pairs.

    Same readout as the rotating-frame extraction: z = a3 + i a4 per path,
    Delta phi = unwrapped arg(z_A conj z_B).  The carrier, the dynamical
    rotation, and any uniform damping factor are common to both paths and
    cancel in the product.  The first sample keeps its principal value (the
    envelope grid starts half a window after t = 0, where the true phase
    difference is already slightly nonzero).
    """
    if len(env_a.times) != len(env_b.times) or not np.allclose(
        env_a.times, env_b.times, rtol=0.0, atol=1e-12
    ):
        raise ValueError("envelope traces do not share a time base")
    z_a = env_a.envelopes[:, 2] + 1j * env_a.envelopes[:, 3]
    z_b = env_b.envelopes[:, 2] + 1j * env_b.envelopes[:, 3]
    for z, env, label in ((z_a, env_a, "A"), (z_b, env_b, "B")):
        floor = DEGENERATE_RTOL * env.norms
        if np.any(np.abs(z) < floor):
            i = int(np.argmax(np.abs(z) < floor))
            raise DegenerateComponent(
                f"path {label} readout vanished at t = {env.times[i]:.6g}"
            )
    d = unwrap(np.angle(z_a * np.conj(z_b)))
    return PhaseTrace(times=env_a.times.copy(), delta_phi=d)


def export_pressure_csv(trace: PressureTrace, path) -> None:
    """Raw per-path export: t, p1..p4 at nine significant digits."""
    with open(path, "w", newline="\n") as fh:
        fh.write("t,p1,p2,p3,p4\n")
        for i in range(len(trace.times)):
            row = [trace.times[i]] + list(trace.pressures[i])
            fh.write(",".join(f"{x:.9g}" for x in row) + "\n")
