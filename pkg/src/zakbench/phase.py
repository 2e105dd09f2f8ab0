"""Phase extraction from evolved path pairs.

The interferometric observable is the cross-path product of one sublattice
component: z_p(t) from each path, Delta phi(t) = unwrapped arg(z_A conj z_B).
Mirror paths have identical band energies, so the dynamical phases cancel in
the product and the unwrapped difference tracks the accumulated geometric
phase alone.  The second sublattice is the default readout because its
instantaneous-eigenvector amplitude is real positive (1/sqrt 2) in the chiral
gauge, so the extracted angle carries no eigenvector-phase contamination.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DegenerateComponent, UnwrapJump
from .evolve import PathTrace, instantaneous_fidelity
from .invariants import theta_along
from .model import KSchedule, ModelParams, q_of_k

UNWRAP_GUARD = math.pi / 2
DEGENERATE_RTOL = 1e-6


def reduce_angle(x):
    """Reduce angle(s) to the principal interval (-pi, pi]."""
    x = np.asarray(x, dtype=float)
    r = x - 2.0 * np.pi * np.ceil((x - np.pi) / (2.0 * np.pi))
    if r.ndim == 0:
        return float(r)
    return r


def unwrap(angles, guard: float = UNWRAP_GUARD) -> np.ndarray:
    """Continuity-preserving unwrap of a raw angle sequence.

    Each consecutive increment, reduced mod 2 pi to (-pi, pi], must stay below
    the guard in magnitude; otherwise the sampling cannot distinguish a real
    jump from a wrap and UnwrapJump is raised.
    """
    angles = np.asarray(angles, dtype=float)
    if angles.ndim != 1 or len(angles) == 0:
        raise ValueError("expected a non-empty 1-d angle sequence")
    inc = reduce_angle(np.diff(angles))
    if len(inc) and np.max(np.abs(inc)) >= guard:
        worst = float(np.max(np.abs(inc)))
        raise UnwrapJump(f"angle increment {worst:.4f} >= guard {guard:.4f}")
    out = np.empty_like(angles)
    out[0] = reduce_angle(angles[0])
    out[1:] = out[0] + np.cumsum(inc)
    return out


@dataclass
class PhaseTrace:
    """Interferometric phase record for one path pair.

    delta_phi is unwrapped and starts at 0 exactly for pairs sharing the
    initial state at t = 0 (arg of a positive real number).  phi_dyn_* and
    fidelity_* are filled when the traces carry model metadata.
    """

    times: np.ndarray
    delta_phi: np.ndarray
    phi_dyn_A: Optional[np.ndarray] = None
    phi_dyn_B: Optional[np.ndarray] = None
    fidelity_A: Optional[np.ndarray] = None
    fidelity_B: Optional[np.ndarray] = None


def band_energy_profile(params: ModelParams, schedule: KSchedule) -> np.ndarray:
    """Upper-band energy |q(k(t_i))| on the schedule grid."""
    return np.abs(q_of_k(params, schedule.k_at(schedule.times)))


def dynamical_phase_profile(params: ModelParams, schedule: KSchedule) -> np.ndarray:
    """Cumulative -int_0^t E_+(k(s)) ds by composite trapezoid on the grid."""
    E = band_energy_profile(params, schedule)
    dt = schedule.T / schedule.steps
    out = np.empty_like(E)
    out[0] = 0.0
    np.cumsum((E[1:] + E[:-1]) * (dt / 2.0), out=out[1:])
    return -out


def dynamical_phase(params: ModelParams, schedule: KSchedule, t: float) -> float:
    """-int_0^t E_+(k(s)) ds; off-grid t is linearly interpolated."""
    if not 0.0 <= t <= schedule.T:
        raise ValueError(f"t={t} outside [0, {schedule.T}]")
    prof = dynamical_phase_profile(params, schedule)
    return float(np.interp(t, schedule.times, prof))


def _readout(states: np.ndarray, representation: str, component: int) -> np.ndarray:
    """Per-sample complex readout of one sublattice.

    component 2 (default elsewhere) is u2, or amplitude_3 + i amplitude_4 of
    the four-level complex state; component 1 is the other sublattice.
    """
    if component not in (1, 2):
        raise ValueError("component must be 1 or 2")
    if representation == "complex2":
        return states[:, component - 1]
    if component == 2:
        return states[:, 2] + 1j * states[:, 3]
    return states[:, 0] + 1j * states[:, 1]


def delta_phi(
    trace_a: PathTrace, trace_b: PathTrace, component: int = 2
) -> PhaseTrace:
    """Two-path interferometric phase difference from evolved traces.

    Requires both traces to share the time grid and the initial state.  The
    readout component must stay away from zero relative to the state norm
    (adiabatically it has fixed magnitude 1/sqrt 2; a vanishing readout flags
    diabatic breakdown).
    """
    if trace_a.representation != trace_b.representation:
        raise ValueError("traces use different representations")
    if len(trace_a.times) != len(trace_b.times) or not np.allclose(
        trace_a.times, trace_b.times, rtol=0.0, atol=1e-12 * float(trace_a.times[-1])
    ):
        raise ValueError("traces do not share a time grid")
    if not np.allclose(trace_a.states[0], trace_b.states[0], rtol=0.0, atol=1e-9):
        raise ValueError("traces do not share the initial state")

    z_a = _readout(trace_a.states, trace_a.representation, component)
    z_b = _readout(trace_b.states, trace_b.representation, component)
    for z, trace, label in ((z_a, trace_a, "A"), (z_b, trace_b, "B")):
        floor = DEGENERATE_RTOL * trace.norms
        if np.any(np.abs(z) < floor):
            i = int(np.argmax(np.abs(z) < floor))
            raise DegenerateComponent(
                f"path {label} readout vanished at t = {trace.times[i]:.6g}"
            )
    d = unwrap(np.angle(z_a * np.conj(z_b)))

    phi_a = phi_b = fid_a = fid_b = None
    if trace_a.params is not None and trace_a.schedule is not None:
        phi_a = dynamical_phase_profile(trace_a.params, trace_a.schedule)
        fid_a = instantaneous_fidelity(trace_a, trace_a.params, trace_a.schedule)
    if trace_b.params is not None and trace_b.schedule is not None:
        phi_b = dynamical_phase_profile(trace_b.params, trace_b.schedule)
        fid_b = instantaneous_fidelity(trace_b, trace_b.params, trace_b.schedule)

    return PhaseTrace(
        times=trace_a.times.copy(),
        delta_phi=d,
        phi_dyn_A=phi_a,
        phi_dyn_B=phi_b,
        fidelity_A=fid_a,
        fidelity_B=fid_b,
    )


def adiabatic_prediction_profile(
    params: ModelParams,
    schedule_pair: tuple[KSchedule, KSchedule],
    times=None,
) -> np.ndarray:
    """Ideal adiabatic Delta phi(t): half the difference of the continued
    Bloch angles along the two paths.

    For the half-path pair this equals the continued arg q along path A
    (theta(-k) = -theta(k)), reaching pi W at t = T.
    """
    sched_a, sched_b = schedule_pair
    if times is None:
        times = sched_a.times
    th_a = theta_along(params, sched_a.k_at(times))
    th_b = theta_along(params, sched_b.k_at(times))
    # accumulation is measured from the shared start; the start angles are 0
    # for half paths but sit on opposite sides of the branch cut for the
    # full-zone pair
    return ((th_a - th_a[0]) - (th_b - th_b[0])) / 2.0


def adiabatic_prediction(
    params: ModelParams, schedule_pair: tuple[KSchedule, KSchedule], t: float
) -> float:
    """Ideal adiabatic Delta phi at a single time t."""
    sched_a, _ = schedule_pair
    if not 0.0 <= t <= sched_a.T:
        raise ValueError(f"t={t} outside [0, {sched_a.T}]")
    times = sched_a.times
    prof = adiabatic_prediction_profile(params, schedule_pair, times)
    return float(np.interp(t, times, prof))
