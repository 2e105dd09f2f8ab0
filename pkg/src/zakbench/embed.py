"""Dimensional extension: complex 2-level objects as real 4-level ones.

A complex state (u1, u2) = (a+ib, c+id) maps to the real 4-vector
(a, b, c, d), and multiplication by i becomes the block rotation J4.  The
Bloch matrix dx sigma_x + dy sigma_y maps to a real symmetric 4x4 matrix
whose off-diagonal blocks hold [[dx, dy], [-dy, dx]]; each eigenvalue of the
2-level problem appears twice.  An alternative interleaving (a, c, b, d)
gives the matrix `methods_matrix`; the two are related by the permutation
PERMUTATION, which `verify_permutation` checks entrywise.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import GaplessPoint
from .model import BlochVector, ModelParams, bloch_matrix, eigensystem, q_of_k

# real representation of multiplication by i in the (a, b, c, d) ordering
J4 = np.array(
    [
        [0.0, -1.0, 0.0, 0.0],
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, -1.0],
        [0.0, 0.0, 1.0, 0.0],
    ]
)

# basis transformation between the (a, c, b, d) and (a, b, c, d) orderings
PERMUTATION = np.array(
    [
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
    ]
)


def vec(u) -> np.ndarray:
    """Complex 2-vector (a+ib, c+id) -> real 4-vector (a, b, c, d)."""
    u = np.asarray(u, dtype=complex)
    if u.shape != (2,):
        raise ValueError(f"expected a complex 2-vector, got shape {u.shape}")
    return np.array([u[0].real, u[0].imag, u[1].real, u[1].imag])


def unvec(r) -> np.ndarray:
    """Inverse of vec: (a, b, c, d) -> (a+ib, c+id).

    Also accepts complex 4-vectors (physical four-mode amplitudes); the map
    is complex-linear and intertwines the real 4x4 dynamics with the 2x2 one,
    so it applies sample-by-sample to evolved four-mode states.
    """
    r = np.asarray(r)
    if r.shape[-1] != 4:
        raise ValueError(f"expected trailing dimension 4, got shape {r.shape}")
    return np.stack([r[..., 0] + 1j * r[..., 1], r[..., 2] + 1j * r[..., 3]], axis=-1)


def realify(d: BlochVector) -> np.ndarray:
    """Real symmetric 4x4 image of dx sigma_x + dy sigma_y in (a,b,c,d) order."""
    dx, dy = d.dx, d.dy
    return np.array(
        [
            [0.0, 0.0, dx, dy],
            [0.0, 0.0, -dy, dx],
            [dx, -dy, 0.0, 0.0],
            [dy, dx, 0.0, 0.0],
        ]
    )


def complex_scale_matrix(alpha: float, beta: float) -> np.ndarray:
    """Real 4x4 acting as multiplication by alpha + i beta on vec images."""
    return alpha * np.eye(4) + beta * J4


def methods_matrix(d: BlochVector) -> np.ndarray:
    """The realified Bloch matrix in the interleaved (a, c, b, d) ordering."""
    dx, dy = d.dx, d.dy
    return np.array(
        [
            [0.0, dx, 0.0, dy],
            [dx, 0.0, -dy, 0.0],
            [0.0, -dy, 0.0, dx],
            [dy, 0.0, dx, 0.0],
        ]
    )


def verify_permutation(d: BlochVector, tol: float = 1e-15) -> bool:
    """Check P H P^T == realify(d) entrywise within tol."""
    lhs = PERMUTATION @ methods_matrix(d) @ PERMUTATION.T
    return bool(np.max(np.abs(lhs - realify(d))) <= tol)


@dataclass(frozen=True)
class SpectralDoublingReport:
    """Outcome of the eigenvalue-doubling and back-mapping check at one momentum."""

    k: float
    eigenvalues: np.ndarray
    expected: np.ndarray
    max_eigenvalue_error: float
    max_residual: float
    ok: bool


def spectral_doubling_check(
    params: ModelParams, k: float, residual_tol: float = 1e-10
) -> SpectralDoublingReport:
    """Diagonalize the real 4x4 matrix and map its eigenvectors back.

    Confirms the spectrum is {+|q|, +|q|, -|q|, -|q|} and that every real
    eigenvector, reassembled into a complex 2-vector, solves the original
    complex eigenproblem with residual <= residual_tol.  The real
    diagonalization is numerical (eigh), independent of the analytic gauge.
    """
    pair = eigensystem(params, k)  # raises GaplessPoint on a boundary
    q = q_of_k(params, k)
    E = abs(q)
    H4 = realify(BlochVector(q.real, q.imag))
    evals, evecs = np.linalg.eigh(H4)
    expected = np.array([-E, -E, E, E])
    eig_err = float(np.max(np.abs(evals - expected)))

    H2 = bloch_matrix(params, k)
    max_resid = 0.0
    for j in range(4):
        mu = unvec(evecs[:, j])
        resid = float(np.linalg.norm(H2 @ mu - evals[j] * mu))
        max_resid = max(max_resid, resid)

    ok = eig_err <= 1e-10 * max(1.0, E) and max_resid <= residual_tol
    return SpectralDoublingReport(
        k=float(k),
        eigenvalues=evals,
        expected=expected,
        max_eigenvalue_error=eig_err,
        max_residual=max_resid,
        ok=ok,
    )
