import numpy as np
import pytest

from zakbench.errors import DegenerateComponent, UnwrapJump
from zakbench.evolve import PathTrace, evolve_pair
from zakbench.invariants import winding_number
from zakbench.model import KSchedule, ModelParams, build_schedule_pair
from zakbench.phase import (
    adiabatic_prediction,
    adiabatic_prediction_profile,
    delta_phi,
    dynamical_phase,
    dynamical_phase_profile,
    reduce_angle,
    unwrap,
)

from runcache import PAPER_SETS


class TestReduceAngle:
    def test_principal_interval_edges(self):
        assert reduce_angle(np.pi) == np.pi
        assert reduce_angle(-np.pi) == np.pi
        assert reduce_angle(0.0) == 0.0
        assert reduce_angle(3 * np.pi) == pytest.approx(np.pi)

    def test_idempotent_inside(self):
        x = np.linspace(-3.1, 3.1, 41)
        assert np.allclose(reduce_angle(x), x)


class TestUnwrap:
    def test_passthrough(self):
        assert np.allclose(unwrap([0.0, 0.1, 0.2]), [0.0, 0.1, 0.2])

    def test_wrap_restored(self):
        out = unwrap([3.0, -3.0])
        assert np.allclose(out, [3.0, 3.0 + (2 * np.pi - 6.0)])
        assert out[1] == pytest.approx(3.2832, abs=1e-4)

    def test_guard_trips(self):
        with pytest.raises(UnwrapJump):
            unwrap([0.0, 2.0])

    def test_first_sample_reduced(self):
        out = unwrap([7.0, 7.1])
        assert out[0] == pytest.approx(7.0 - 2 * np.pi)


class TestDynamicalPhase:
    def test_flat_band_exact(self):
        p = ModelParams(2, 0, 0)
        for variant in ("half-A", "half-B", "full"):
            s = KSchedule(variant, T=50.0, steps=500)
            for t in (0.0, 12.5, 50.0):
                assert dynamical_phase(p, s, t) == pytest.approx(-2.0 * t, abs=1e-12)

    def test_mirror_paths_identical(self):
        p = ModelParams(1, 4, 1)
        a = dynamical_phase_profile(p, KSchedule("half-A", 200.0, 40000))
        b = dynamical_phase_profile(p, KSchedule("half-B", 200.0, 40000))
        assert np.max(np.abs(a - b)) <= 1e-12

    def test_quadrature_oracle(self):
        from scipy.integrate import quad

        p = ModelParams(1, 5, 0)
        s = KSchedule("half-A", T=200.0, steps=40000)
        val = dynamical_phase(p, s, 200.0)
        integral, err = quad(lambda k: abs(1 + 5 * np.exp(1j * k)), 0.0, np.pi,
                             epsabs=1e-12, epsrel=1e-12)
        expected = -(200.0 / np.pi) * integral
        assert err < 1e-8
        assert val == pytest.approx(expected, rel=1e-6)


class TestDeltaPhi:
    @pytest.mark.parametrize("wvj,W", PAPER_SETS)
    def test_endpoints_quantized(self, pair_run, wvj, W):
        _, _, _, ph = pair_run(*wvj)
        assert abs(ph.delta_phi[-1] - np.pi * W) <= 0.05

    def test_starts_at_zero_exactly(self, pair_run):
        _, _, _, ph = pair_run(1.0, 5.0, 0.0)
        assert ph.delta_phi[0] == 0.0

    def test_dynamical_cancellation(self, pair_run):
        for wvj, _ in PAPER_SETS:
            _, _, _, ph = pair_run(*wvj)
            assert np.max(np.abs(ph.phi_dyn_A - ph.phi_dyn_B)) <= 1e-10

    def test_global_phase_invariance(self, pair_run):
        _, _, _, ref = pair_run(1.0, 5.0, 0.0)
        _, _, _, rot = pair_run(1.0, 5.0, 0.0, phase=np.pi / 4)
        assert np.max(np.abs(ref.delta_phi - rot.delta_phi)) <= 1e-12

    def test_representation_invariance(self, pair_run):
        _, _, _, c = pair_run(1.0, 1.0, 4.0)
        _, _, _, r = pair_run(1.0, 1.0, 4.0, representation="real4")
        assert np.max(np.abs(c.delta_phi - r.delta_phi)) <= 1e-9

    def test_first_sublattice_readout_consistency(self, pair_run):
        # the other sublattice reconstructs -delta_phi: its eigenvector
        # amplitude carries e^{-i theta}, contributing -2 theta(k_A)
        p, ta, tb, ph = pair_run(1.0, 5.0, 0.0)
        other = delta_phi(ta, tb, component=1)
        assert np.max(np.abs(other.delta_phi + ph.delta_phi)) <= 0.1

    def test_mismatched_grids_rejected(self, pair_run):
        _, ta, _, _ = pair_run(1.0, 5.0, 0.0)
        _, _, tb, _ = pair_run(1.0, 5.0, 0.0, T=100.0)
        with pytest.raises(ValueError):
            delta_phi(ta, tb)

    def test_mismatched_initial_state_rejected(self, pair_run):
        _, ta, _, _ = pair_run(1.0, 5.0, 0.0)
        _, _, tb, _ = pair_run(1.0, 5.0, 0.0, phase=np.pi / 4)
        with pytest.raises(ValueError):
            delta_phi(ta, tb)

    def test_degenerate_component_detected(self):
        times = np.linspace(0, 1, 3)
        dead = np.array([[1, 0], [1, 0], [1, 0]], dtype=complex)
        a = PathTrace(times=times, states=dead, representation="complex2")
        b = PathTrace(times=times, states=dead, representation="complex2")
        with pytest.raises(DegenerateComponent):
            delta_phi(a, b)


class TestAdiabaticPrediction:
    def test_zero_at_start(self):
        p = ModelParams(1, 4, 1)
        pair = build_schedule_pair(p, 200.0, 4000)
        assert adiabatic_prediction(p, pair, 0.0) == 0.0

    @pytest.mark.parametrize(
        "wvj,endpoint",
        [((1.0, 5.0, 0.0), np.pi), ((1.0, 1.0, 4.0), 2 * np.pi)],
    )
    def test_endpoint_continuation(self, wvj, endpoint):
        p = ModelParams(*wvj)
        pair = build_schedule_pair(p, 200.0, 40000)
        assert adiabatic_prediction(p, pair, 200.0) == pytest.approx(endpoint, abs=1e-9)

    def test_matches_winding_route(self):
        for wvj, W in PAPER_SETS:
            p = ModelParams(*wvj)
            pair = build_schedule_pair(p, 50.0, 5000)
            end = adiabatic_prediction(p, pair, 50.0)
            assert round(end / np.pi) == winding_number(p, 1024).W
            assert end == pytest.approx(np.pi * W, abs=1e-9)

    @pytest.mark.parametrize("wvj,W", PAPER_SETS)
    def test_trajectory_oracle(self, pair_run, wvj, W):
        p, ta, _, ph = pair_run(*wvj)
        pred = adiabatic_prediction_profile(
            p, (ta.schedule, KSchedule("half-B", 200.0, 40000)), ph.times
        )
        assert np.max(np.abs(ph.delta_phi - pred)) <= 0.05

    def test_full_sweep_doubles_endpoint(self):
        p = ModelParams(1, 5, 0)
        ta, tb = evolve_pair(p, T=400.0, steps=40000, variant="full")
        ph = delta_phi(ta, tb)
        assert abs(ph.delta_phi[-1] - 2 * np.pi) <= 0.05
        pair = build_schedule_pair(p, 400.0, 40000, "full")
        assert adiabatic_prediction(p, pair, 400.0) == pytest.approx(2 * np.pi, abs=1e-9)
