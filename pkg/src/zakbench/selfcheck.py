"""Embedded invariant suite: fast structural checks runnable from the CLI.

Each check is a small, self-contained assertion of a property the package
relies on (band symmetry, gauge structure, embedding isomorphism, unitarity,
invariant consistency, demodulation conventions).  `run_all` prints one line
per check and returns the number of failures.
"""

from __future__ import annotations

import numpy as np

from .embed import (
    J4,
    SpectralDoublingReport,
    realify,
    spectral_doubling_check,
    unvec,
    vec,
    verify_permutation,
)
from .evolve import evolve_pair, instantaneous_fidelity
from .invariants import theta_unwrapped, winding_number, zak_wilson
from .labframe import CavityConfig, demodulate, simulate_path
from .model import BlochVector, ModelParams, eigensystem, min_gap, q_of_k
from .phase import delta_phi, reduce_angle, unwrap

PAPER_SETS = (
    ((5, 1, 0), 0),
    ((1, 5, 0), 1),
    ((4, 1, 1), 0),
    ((1, 4, 1), 1),
    ((1, 1, 4), 2),
)


def _rng():
    return np.random.default_rng(20250809)


def check_band_symmetry():
    rng = _rng()
    for _ in range(200):
        p = ModelParams(*rng.uniform(-3, 3, 3))
        k = rng.uniform(-np.pi, np.pi)
        assert np.isclose(q_of_k(p, -k), np.conj(q_of_k(p, k)), rtol=0, atol=1e-12)


def check_eigensystem_residuals():
    rng = _rng()
    for _ in range(200):
        p = ModelParams(*rng.uniform(0.2, 4, 3))
        k = rng.uniform(-np.pi, np.pi)
        pair = eigensystem(p, k)
        H = np.array([[0, np.conj(q_of_k(p, k))], [q_of_k(p, k), 0]])
        r1 = np.linalg.norm(H @ pair.u_plus - pair.E_plus * pair.u_plus)
        r2 = np.linalg.norm(H @ pair.u_minus - pair.E_minus * pair.u_minus)
        assert max(r1, r2) <= 1e-12 * max(1.0, pair.E_plus)
        assert abs(np.vdot(pair.u_plus, pair.u_minus)) <= 1e-12


def check_embedding_isomorphism():
    rng = _rng()
    for _ in range(100):
        mu = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        z = complex(*rng.standard_normal(2))
        lhs = vec(z * mu)
        rhs = (z.real * np.eye(4) + z.imag * J4) @ vec(mu)
        assert np.allclose(lhs, rhs, atol=1e-12)
        assert np.allclose(unvec(vec(mu)), mu, atol=0)
    for _ in range(100):
        d = BlochVector(*rng.uniform(-10, 10, 2))
        assert verify_permutation(d)
        assert np.allclose(realify(d), realify(d).T, atol=0)


def check_spectral_doubling():
    rng = _rng()
    for _ in range(50):
        p = ModelParams(*rng.uniform(0.3, 3, 3))
        k = rng.uniform(-np.pi, np.pi)
        report: SpectralDoublingReport = spectral_doubling_check(p, k)
        assert report.ok, f"doubling check failed at k={k}"


def check_unitarity():
    p = ModelParams(1, 5, 0)
    ta, tb = evolve_pair(p, T=50.0, steps=8000)
    for t in (ta, tb):
        assert np.max(np.abs(t.norms - 1.0)) <= 1e-9


def check_dynamical_cancellation():
    p = ModelParams(1, 4, 1)
    ta, tb = evolve_pair(p, T=50.0, steps=8000)
    ph = delta_phi(ta, tb)
    assert np.max(np.abs(ph.phi_dyn_A - ph.phi_dyn_B)) <= 1e-10


def check_invariant_consistency():
    for (w, v, J), W in PAPER_SETS:
        p = ModelParams(w, v, J)
        res = winding_number(p, 2048)
        assert res.W == W
        zak = zak_wilson(p, 2048)
        dist = abs(reduce_angle(zak - np.pi * W))
        assert dist <= 1e-4, f"zak {zak} vs pi W {np.pi * W}"
    assert abs(theta_unwrapped(ModelParams(1, 1, 4), np.pi, 2048) - 2 * np.pi) <= 1e-4


def check_min_gap_refinement():
    rng = _rng()
    for _ in range(20):
        p = ModelParams(*rng.uniform(0.2, 3, 3))
        assert min_gap(p, 2048) <= min_gap(p, 1024) + 1e-15


def check_unwrap_conventions():
    out = unwrap([3.0, -3.0])
    assert np.allclose(out, [3.0, 3.0 + (2 * np.pi - 6.0)])
    assert reduce_angle(np.pi) == np.pi and reduce_angle(-np.pi) == np.pi


def check_demod_convention():
    cav = CavityConfig(f0=1955.0, sample_rate=1955.0 * 40, T=0.05)
    tr = simulate_path((0.0, 0.0, 0.0), cav, initial_pressure=1.0)
    env = demodulate(tr, cav)
    assert np.max(np.abs(env.envelopes[:, 0] - 1.0)) <= 1e-6


def check_fidelity_preparation():
    p = ModelParams(2, 3, 0.5)
    ta, tb = evolve_pair(p, T=20.0, steps=4000)
    fa = instantaneous_fidelity(ta, p, ta.schedule)
    assert abs(fa[0] - 1.0) <= 1e-12
    assert np.all(fa <= 1.0 + 1e-9)


CHECKS = [
    ("band symmetry q(-k) = conj q(k)", check_band_symmetry),
    ("eigensystem residuals and orthogonality", check_eigensystem_residuals),
    ("embedding isomorphism and permutation", check_embedding_isomorphism),
    ("spectral doubling and back-mapping", check_spectral_doubling),
    ("propagation unitarity", check_unitarity),
    ("dynamical-phase cancellation", check_dynamical_cancellation),
    ("winding / Wilson-loop / continuation consistency", check_invariant_consistency),
    ("gap refinement monotonicity", check_min_gap_refinement),
    ("unwrap conventions", check_unwrap_conventions),
    ("demodulation convention", check_demod_convention),
    ("eigenstate preparation fidelity", check_fidelity_preparation),
]


def run_all(verbose: bool = True) -> int:
    failures = 0
    for name, fn in CHECKS:
        try:
            fn()
        except Exception as exc:  # report and keep going
            failures += 1
            if verbose:
                print(f"FAIL  {name}: {exc}")
        else:
            if verbose:
                print(f"ok    {name}")
    if verbose and failures:
        print(f"{failures} of {len(CHECKS)} checks failed")
    return failures
