"""Momentum-space two-band models and momentum-time drive schedules.

The chain has alternating couplings w (intracell) and v (intercell) plus an
optional next-nearest-neighbor coupling J.  Everything is expressed through
the off-diagonal Bloch amplitude

    q(k) = w + v e^{ik} + J e^{i2k},

with H(k) = [[0, conj(q)], [q, 0]] = dx(k) sigma_x + dy(k) sigma_y.  Units:
hbar = 1, couplings in a common scale g0, time in 1/g0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import GaplessPoint, OutOfRange

# defaults shared by invariant quadratures and time evolution
DEFAULT_QUAD_N = 4096
DEFAULT_STEPS = 40000
DEFAULT_T = 200.0

# relative band-touching threshold: |q| below this times the coupling scale
# counts as gapless
GAPLESS_RTOL = 1e-9

SCHEDULE_VARIANTS = ("half-A", "half-B", "full", "full-B")


@dataclass(frozen=True)
class ModelParams:
    """Coupling triple (w, v, J) in units of the common scale g0."""

    w: float
    v: float
    J: float = 0.0

    def __post_init__(self):
        vals = (self.w, self.v, self.J)
        if not all(math.isfinite(x) for x in vals):
            raise ValueError(f"couplings must be finite, got {vals}")
        if all(x == 0.0 for x in vals):
            raise ValueError("at least one coupling must be nonzero")

    @property
    def scale(self) -> float:
        return max(abs(self.w), abs(self.v), abs(self.J))

    @property
    def gapless_threshold(self) -> float:
        return GAPLESS_RTOL * self.scale

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.w, self.v, self.J)


@dataclass(frozen=True)
class KSchedule:
    """Momentum-versus-time drive path.

    Variants: "half-A" maps t in [0,T] to k = pi t/T, "half-B" to k = -pi t/T
    (its mirror image), "full" sweeps the whole zone k = -pi + 2pi t/T, and
    "full-B" is the mirror of "full" (k = pi - 2pi t/T), defined here so the
    full sweep also has a symmetric partner path.
    """

    variant: str
    T: float
    steps: int

    def __post_init__(self):
        if self.variant not in SCHEDULE_VARIANTS:
            raise ValueError(f"unknown schedule variant {self.variant!r}")
        if not (math.isfinite(self.T) and self.T > 0):
            raise ValueError(f"T must be positive and finite, got {self.T}")
        if self.steps < 1:
            raise ValueError(f"steps must be >= 1, got {self.steps}")

    def k_at(self, t):
        """Vectorized momentum at time(s) t, no range check."""
        t = np.asarray(t, dtype=float)
        if self.variant == "half-A":
            return np.pi * t / self.T
        if self.variant == "half-B":
            return -(np.pi * t / self.T)
        if self.variant == "full":
            return -np.pi + 2.0 * np.pi * t / self.T
        return np.pi - 2.0 * np.pi * t / self.T

    def k_of_t(self, t: float) -> float:
        """Momentum at a single time t in [0, T]."""
        if not 0.0 <= t <= self.T:
            raise OutOfRange(f"t={t} outside [0, {self.T}]")
        return float(self.k_at(t))

    @property
    def times(self) -> np.ndarray:
        return np.linspace(0.0, self.T, self.steps + 1)

    @property
    def mid_times(self) -> np.ndarray:
        dt = self.T / self.steps
        return (np.arange(self.steps) + 0.5) * dt


@dataclass(frozen=True)
class BlochVector:
    """Real pseudospin components (dx, dy) = (Re q, Im q) at one momentum."""

    dx: float
    dy: float

    def as_complex(self) -> complex:
        return complex(self.dx, self.dy)

    @property
    def magnitude(self) -> float:
        return math.hypot(self.dx, self.dy)


@dataclass(frozen=True)
class EigenPair:
    """Analytic eigensystem of H(k) in the chiral gauge.

    E_pm = pm|q|; u_pm = (pm e^{-i theta}, 1)/sqrt(2) with theta = arg q(k),
    so the second component is always real positive 1/sqrt(2).
    """

    E_plus: float
    E_minus: float
    u_plus: np.ndarray
    u_minus: np.ndarray
    theta: float


def q_of_k(params: ModelParams, k):
    """Off-diagonal Bloch amplitude w + v e^{ik} + J e^{i2k}.

    Accepts a scalar or an array of momenta; returns complex of the same shape.
    """
    k = np.asarray(k, dtype=float)
    q = params.w + params.v * np.exp(1j * k) + params.J * np.exp(2j * k)
    if q.ndim == 0:
        return complex(q)
    return q


def bloch_vector(params: ModelParams, k: float) -> BlochVector:
    """Pseudospin components at momentum k, consistent with q_of_k by construction."""
    q = q_of_k(params, k)
    return BlochVector(dx=q.real, dy=q.imag)


def bloch_matrix(params: ModelParams, k: float) -> np.ndarray:
    """The 2x2 Bloch matrix [[0, conj q], [q, 0]]."""
    q = q_of_k(params, k)
    return np.array([[0.0, np.conj(q)], [q, 0.0]], dtype=complex)


def eigensystem(params: ModelParams, k: float) -> EigenPair:
    """Analytic eigenvalues and chiral-gauge eigenvectors at momentum k.

    Raises GaplessPoint when |q(k)| falls below the relative threshold;
    eigenvectors are undefined on a phase boundary.
    """
    q = q_of_k(params, k)
    E = abs(q)
    if E <= params.gapless_threshold:
        raise GaplessPoint(f"|q({k})| = {E:.3e} at or below threshold")
    theta = math.atan2(q.imag, q.real)
    phase = np.exp(-1j * theta)
    inv_sqrt2 = 1.0 / math.sqrt(2.0)
    u_plus = np.array([phase, 1.0], dtype=complex) * inv_sqrt2
    u_minus = np.array([-phase, 1.0], dtype=complex) * inv_sqrt2
    return EigenPair(E_plus=E, E_minus=-E, u_plus=u_plus, u_minus=u_minus, theta=theta)


def brillouin_grid(N: int) -> np.ndarray:
    """Uniform N-point momentum grid -pi + 2 pi i/N, i = 0..N-1 (contains -pi)."""
    if N < 2:
        raise ValueError(f"need N >= 2 grid points, got {N}")
    return -np.pi + 2.0 * np.pi * np.arange(N) / N

def min_gap(params: ModelParams, N: int = DEFAULT_QUAD_N) -> float:
    """Band gap 2 min_k |q(k)| sampled on the uniform N-point zone grid.

    Grids are nested under doubling, so the result is monotone non-increasing
    in N for nested N.  Large N (>= a few thousand) recommended for sharp minima.
    """
    k = brillouin_grid(N)
    return 2.0 * float(np.min(np.abs(q_of_k(params, k))))


def k_of_t(schedule: KSchedule, t: float) -> float:
    """Momentum at time t under the schedule; OutOfRange outside [0, T]."""
    return schedule.k_of_t(t)


def build_schedule_pair(
    params: ModelParams, T: float, steps: int, variant: str = "half"
) -> tuple[KSchedule, KSchedule]:
    """Construct the symmetric path pair (A, B) for the two-path protocol.

    "half": A sweeps k = 0 -> pi, B its mirror 0 -> -pi.  Requires
    w + v + J > 0 so the k = 0 state is a well-defined gauge origin
    (theta(0) = 0).  "full": A sweeps -pi -> pi, B its mirror pi -> -pi;
    requires a gap at the starting momentum.
    """
    if variant == "half":
        if not params.w + params.v + params.J > 0:
            raise ValueError(
                "half-path schedules require w + v + J > 0 "
                f"(got {params.w + params.v + params.J})"
            )
        return (KSchedule("half-A", T, steps), KSchedule("half-B", T, steps))
    if variant == "full":
        if abs(q_of_k(params, -np.pi)) <= params.gapless_threshold:
            raise GaplessPoint("zone-edge gap closes; full sweep cannot be prepared")
        return (KSchedule("full", T, steps), KSchedule("full-B", T, steps))
    raise ValueError(f"unknown pair variant {variant!r} (use 'half' or 'full')")
