"""Desk-scale toolkit for direct geometric-phase measurement in driven
two-band chains: Bloch models and schedules, the complex-to-real dimensional
extension, adiabatic two-path evolution, interferometric phase extraction,
winding and Wilson-loop invariants, and a carrier-frequency lab emulation.
"""

from .errors import (
    ConfigError,
    DegenerateComponent,
    GaplessPoint,
    NonHermitianGenerator,
    OutOfRange,
    RWAViolated,
    UnwrapJump,
    ZakbenchError,
)
from .kernels import BACKEND
from .model import (
    DEFAULT_QUAD_N,
    DEFAULT_STEPS,
    DEFAULT_T,
    BlochVector,
    EigenPair,
    KSchedule,
    ModelParams,
    bloch_vector,
    build_schedule_pair,
    eigensystem,
    k_of_t,
    min_gap,
    q_of_k,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BlochVector",
    "ConfigError",
    "DEFAULT_QUAD_N",
    "DEFAULT_STEPS",
    "DEFAULT_T",
    "DegenerateComponent",
    "EigenPair",
    "GaplessPoint",
    "KSchedule",
    "ModelParams",
    "NonHermitianGenerator",
    "OutOfRange",
    "RWAViolated",
    "UnwrapJump",
    "ZakbenchError",
    "bloch_vector",
    "build_schedule_pair",
    "eigensystem",
    "k_of_t",
    "min_gap",
    "q_of_k",
]
