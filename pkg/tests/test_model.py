import numpy as np
import pytest

from zakbench.errors import GaplessPoint, OutOfRange
from zakbench.model import (
    KSchedule,
    ModelParams,
    bloch_vector,
    brillouin_grid,
    build_schedule_pair,
    eigensystem,
    k_of_t,
    min_gap,
    q_of_k,
)

SQ2 = np.sqrt(2.0)


class TestParams:
    def test_rejects_nonfinite(self):
        with pytest.raises(ValueError):
            ModelParams(np.inf, 1.0, 0.0)
        with pytest.raises(ValueError):
            ModelParams(1.0, np.nan, 0.0)

    def test_rejects_all_zero(self):
        with pytest.raises(ValueError):
            ModelParams(0.0, 0.0, 0.0)

    def test_threshold_scales(self):
        assert ModelParams(1, 5, 0).gapless_threshold == 5e-9
        assert ModelParams(0.1, 0.2, 0).gapless_threshold == pytest.approx(2e-10)


class TestQofK:
    def test_examples(self):
        assert q_of_k(ModelParams(1, 5, 0), 0.0) == pytest.approx(6 + 0j, abs=1e-12)
        assert q_of_k(ModelParams(1, 5, 0), np.pi) == pytest.approx(-4 + 0j, abs=1e-12)
        assert q_of_k(ModelParams(1, 1, 4), np.pi / 2) == pytest.approx(-3 + 1j, abs=1e-12)

    def test_vectorized_matches_scalar(self):
        p = ModelParams(1, 4, 1)
        k = np.linspace(-np.pi, np.pi, 7)
        arr = q_of_k(p, k)
        assert arr.shape == (7,)
        for i, ki in enumerate(k):
            assert arr[i] == q_of_k(p, float(ki))

    def test_conjugation_symmetry(self):
        rng = np.random.default_rng(3)
        for _ in range(300):
            p = ModelParams(*rng.uniform(-3, 3, 3))
            k = rng.uniform(-np.pi, np.pi)
            assert q_of_k(p, -k) == np.conj(q_of_k(p, k))


class TestBlochVector:
    def test_examples(self):
        d = bloch_vector(ModelParams(1, 5, 0), np.pi / 2)
        assert d.dx == pytest.approx(1.0, abs=1e-12)
        assert d.dy == pytest.approx(5.0, abs=1e-12)
        assert bloch_vector(ModelParams(1, 4, 1), 0.0).dx == pytest.approx(6.0, abs=1e-12)
        d = bloch_vector(ModelParams(1, 1, 4), np.pi)
        assert d.dx == pytest.approx(4.0, abs=1e-12)
        assert d.dy == pytest.approx(0.0, abs=1e-12)

    def test_exact_consistency_with_q(self):
        p = ModelParams(0.7, -1.3, 2.2)
        for k in (-2.0, 0.3, 1.9):
            q = q_of_k(p, k)
            d = bloch_vector(p, k)
            assert d.dx == q.real and d.dy == q.imag


class TestEigensystem:
    def test_trivial_point(self):
        pair = eigensystem(ModelParams(1, 5, 0), 0.0)
        assert pair.E_plus == pytest.approx(6.0, abs=1e-12)
        assert pair.E_minus == pytest.approx(-6.0, abs=1e-12)
        assert np.allclose(pair.u_plus, np.array([1, 1]) / SQ2, atol=1e-12)

    def test_zone_edge(self):
        pair = eigensystem(ModelParams(1, 5, 0), np.pi)
        assert pair.E_plus == pytest.approx(4.0, abs=1e-12)
        assert np.allclose(pair.u_plus, np.array([-1, 1]) / SQ2, atol=1e-12)
        assert pair.theta == pytest.approx(np.pi, abs=1e-12)

    def test_gapless_raises(self):
        with pytest.raises(GaplessPoint):
            eigensystem(ModelParams(1, 1, 0), np.pi)

    def test_chiral_gauge_second_component(self):
        rng = np.random.default_rng(5)
        for _ in range(100):
            p = ModelParams(*rng.uniform(0.2, 4, 3))
            pair = eigensystem(p, rng.uniform(-np.pi, np.pi))
            assert pair.u_plus[1] == 1 / SQ2
            assert pair.u_minus[1] == 1 / SQ2

    def test_residual_and_orthogonality(self):
        rng = np.random.default_rng(11)
        for _ in range(200):
            p = ModelParams(*rng.uniform(-3, 3, 3))
            k = rng.uniform(-np.pi, np.pi)
            q = q_of_k(p, k)
            if abs(q) <= 1e-6 * p.scale:
                continue
            pair = eigensystem(p, k)
            H = np.array([[0, np.conj(q)], [q, 0]])
            assert np.linalg.norm(H @ pair.u_plus - pair.E_plus * pair.u_plus) <= 1e-12 * abs(q)
            assert np.linalg.norm(H @ pair.u_minus - pair.E_minus * pair.u_minus) <= 1e-12 * abs(q)
            assert abs(np.vdot(pair.u_plus, pair.u_minus)) <= 1e-12

    def test_theta_oddness(self):
        rng = np.random.default_rng(13)
        for _ in range(100):
            p = ModelParams(*rng.uniform(0.2, 4, 3))
            k = rng.uniform(0.01, np.pi - 0.01)
            assert eigensystem(p, -k).theta == pytest.approx(-eigensystem(p, k).theta, abs=1e-12)


class TestMinGap:
    def test_dense_sampling_oracle(self):
        # analytic minimum |q| = |v - w| at k = pi for the two-coupling chain
        assert min_gap(ModelParams(1, 5, 0), 4096) == pytest.approx(8.0, abs=1e-12)
        dense = 2.0 * np.min(np.abs(q_of_k(ModelParams(1, 5, 0), brillouin_grid(1 << 20))))
        assert min_gap(ModelParams(1, 5, 0), 4096) == pytest.approx(dense, abs=1e-9)

    def test_closure_detected_on_grid(self):
        for N in (2, 64, 4097):
            assert min_gap(ModelParams(1, 1, 0), N) == pytest.approx(0.0, abs=1e-12)

    def test_flat_band_spacing(self):
        assert min_gap(ModelParams(1, 0, 0), 17) == pytest.approx(2.0, abs=1e-14)

    def test_monotone_under_doubling(self):
        rng = np.random.default_rng(17)
        for _ in range(25):
            p = ModelParams(*rng.uniform(0.1, 3, 3))
            for N in (64, 256, 1024):
                assert min_gap(p, 2 * N) <= min_gap(p, N) + 1e-15


class TestSchedules:
    def test_half_a_midpoint(self):
        s = KSchedule("half-A", T=8.0, steps=10)
        assert k_of_t(s, 4.0) == pytest.approx(np.pi / 2, abs=1e-15)

    def test_half_b_endpoint(self):
        s = KSchedule("half-B", T=8.0, steps=10)
        assert k_of_t(s, 8.0) == pytest.approx(-np.pi, abs=1e-15)

    def test_full_start(self):
        s = KSchedule("full", T=8.0, steps=10)
        assert k_of_t(s, 0.0) == pytest.approx(-np.pi, abs=1e-15)

    def test_out_of_range(self):
        s = KSchedule("half-A", T=8.0, steps=10)
        with pytest.raises(OutOfRange):
            k_of_t(s, -0.1)
        with pytest.raises(OutOfRange):
            k_of_t(s, 8.1)

    def test_mirror_symmetry_exact(self):
        a = KSchedule("half-A", T=7.3, steps=11)
        b = KSchedule("half-B", T=7.3, steps=11)
        t = np.linspace(0, 7.3, 97)
        assert np.array_equal(a.k_at(t), -b.k_at(t))

    def test_pair_construction_requires_positive_sum(self):
        with pytest.raises(ValueError):
            build_schedule_pair(ModelParams(-1, -2, 0), 10.0, 100)

    def test_pair_variants(self):
        a, b = build_schedule_pair(ModelParams(1, 5, 0), 10.0, 100, "full")
        assert a.variant == "full" and b.variant == "full-B"
        assert np.array_equal(a.k_at(a.times), -b.k_at(b.times))
