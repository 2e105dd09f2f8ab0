import numpy as np
import pytest

from zakbench.embed import (
    J4,
    PERMUTATION,
    complex_scale_matrix,
    methods_matrix,
    realify,
    spectral_doubling_check,
    unvec,
    vec,
    verify_permutation,
)
from zakbench.errors import GaplessPoint
from zakbench.model import BlochVector, ModelParams, bloch_matrix


class TestVecUnvec:
    def test_resonant_preparation(self):
        u = np.array([(1 + 1j) / 2, (1 + 1j) / 2])
        assert np.array_equal(vec(u), [0.5, 0.5, 0.5, 0.5])

    def test_basis_vectors(self):
        assert np.array_equal(vec([1, 0]), [1, 0, 0, 0])
        assert np.array_equal(vec([1j, -1]), [0, 1, -1, 0])

    def test_roundtrip_exact(self):
        rng = np.random.default_rng(2)
        for _ in range(200):
            u = rng.standard_normal(2) + 1j * rng.standard_normal(2)
            assert np.array_equal(unvec(vec(u)), u)

    def test_norm_preserved(self):
        rng = np.random.default_rng(4)
        for _ in range(100):
            u = rng.standard_normal(2) + 1j * rng.standard_normal(2)
            assert np.linalg.norm(vec(u)) == pytest.approx(np.linalg.norm(u), abs=1e-15)

    def test_unvec_batched(self):
        r = np.arange(12.0).reshape(3, 4)
        out = unvec(r)
        assert out.shape == (3, 2)
        assert out[1, 0] == 4 + 5j and out[1, 1] == 6 + 7j


class TestRealify:
    def test_diagonal_coupling_pattern(self):
        H = realify(BlochVector(6.0, 0.0))
        expected = np.zeros((4, 4))
        for i, j in ((0, 2), (1, 3), (2, 0), (3, 1)):
            expected[i, j] = 6.0
        assert np.array_equal(H, expected)

    def test_antisymmetric_coupling_pattern(self):
        H = realify(BlochVector(0.0, 1.0))
        expected = np.zeros((4, 4))
        expected[0, 3] = expected[3, 0] = 1.0
        expected[1, 2] = expected[2, 1] = -1.0
        assert np.array_equal(H, expected)

    def test_always_symmetric(self):
        rng = np.random.default_rng(6)
        for _ in range(100):
            H = realify(BlochVector(*rng.uniform(-10, 10, 2)))
            assert np.array_equal(H, H.T)

    def test_operator_norm_matches_complex(self):
        rng = np.random.default_rng(8)
        for _ in range(50):
            p = ModelParams(*rng.uniform(0.2, 3, 3))
            k = rng.uniform(-np.pi, np.pi)
            H2 = bloch_matrix(p, k)
            H4 = realify(BlochVector(H2[1, 0].real, H2[1, 0].imag))
            n2 = np.linalg.norm(H2, 2)
            n4 = np.linalg.norm(H4, 2)
            assert n4 == pytest.approx(n2, rel=1e-12)


class TestIsomorphism:
    def test_complex_scaling_commutes(self):
        rng = np.random.default_rng(10)
        for _ in range(200):
            mu = rng.standard_normal(2) + 1j * rng.standard_normal(2)
            alpha, beta = rng.standard_normal(2)
            lhs = vec((alpha + 1j * beta) * mu)
            rhs = complex_scale_matrix(alpha, beta) @ vec(mu)
            assert np.allclose(lhs, rhs, atol=1e-13)

    def test_j4_squares_to_minus_identity(self):
        assert np.array_equal(J4 @ J4, -np.eye(4))

    def test_matrix_action_intertwines(self):
        rng = np.random.default_rng(12)
        for _ in range(100):
            d = BlochVector(*rng.uniform(-5, 5, 2))
            mu = rng.standard_normal(2) + 1j * rng.standard_normal(2)
            H2 = np.array([[0, d.dx - 1j * d.dy], [d.dx + 1j * d.dy, 0]])
            assert np.allclose(vec(H2 @ mu), realify(d) @ vec(mu), atol=1e-12)


class TestMethodsMatrix:
    def test_symmetric_coupling_pattern(self):
        H = methods_matrix(BlochVector(1.0, 0.0))
        expected = np.zeros((4, 4))
        for i, j in ((0, 1), (1, 0), (2, 3), (3, 2)):
            expected[i, j] = 1.0
        assert np.array_equal(H, expected)

    def test_antisymmetric_coupling_pattern(self):
        H = methods_matrix(BlochVector(0.0, 1.0))
        expected = np.zeros((4, 4))
        expected[0, 3] = expected[3, 0] = 1.0
        expected[1, 2] = expected[2, 1] = -1.0
        assert np.array_equal(H, expected)

    def test_always_symmetric(self):
        rng = np.random.default_rng(14)
        for _ in range(100):
            H = methods_matrix(BlochVector(*rng.uniform(-10, 10, 2)))
            assert np.array_equal(H, H.T)


class TestPermutation:
    def test_is_involution(self):
        assert np.array_equal(PERMUTATION @ PERMUTATION, np.eye(4))

    def test_unit_vectors(self):
        assert verify_permutation(BlochVector(1.0, 0.0))
        assert verify_permutation(BlochVector(0.0, 1.0))

    def test_thousand_random_vectors(self):
        rng = np.random.default_rng(16)
        for _ in range(1000):
            assert verify_permutation(BlochVector(*rng.uniform(-10, 10, 2)))


class TestSpectralDoubling:
    def test_gap_maximum(self):
        report = spectral_doubling_check(ModelParams(1, 5, 0), 0.0)
        assert np.allclose(report.eigenvalues, [-6, -6, 6, 6], atol=1e-10)
        assert report.ok

    def test_zone_edge(self):
        report = spectral_doubling_check(ModelParams(1, 5, 0), np.pi)
        assert np.allclose(report.eigenvalues, [-4, -4, 4, 4], atol=1e-10)
        assert report.ok

    def test_random_momenta_back_mapping(self):
        rng = np.random.default_rng(18)
        p = ModelParams(1, 1, 4)
        for _ in range(100):
            report = spectral_doubling_check(p, rng.uniform(-np.pi, np.pi))
            assert report.max_residual <= 1e-10
            assert report.ok

    def test_gapless_propagates(self):
        with pytest.raises(GaplessPoint):
            spectral_doubling_check(ModelParams(1, 1, 0), np.pi)
