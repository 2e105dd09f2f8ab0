"""Failure modes shared across the package."""


class ZakbenchError(Exception):
    """Base class for all package-specific failures."""


class GaplessPoint(ZakbenchError):
    """A sampled momentum sits on a band-touching point; eigenstates undefined."""


class UnwrapJump(ZakbenchError):
    """Consecutive phase samples jumped by >= pi/2; resolution is too coarse."""


class DegenerateComponent(ZakbenchError):
    """Interferometric readout component vanished; adiabaticity has broken down."""


class NonHermitianGenerator(ZakbenchError):
    """A sampled generator matrix is not Hermitian within tolerance."""


class RWAViolated(ZakbenchError):
    """Coupling scale too large relative to the carrier for the rotating frame."""


class OutOfRange(ZakbenchError):
    """Time argument outside the schedule interval [0, T]."""


class ConfigError(ZakbenchError):
    """Invalid or incomplete run configuration."""
