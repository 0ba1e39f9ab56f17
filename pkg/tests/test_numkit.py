import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corrlab import NotPSDError, ParameterError, SizeError
from corrlab.numkit import empirical_cdf, hadamard, hermitian_eig, kronecker, psd_sqrt

from conftest import random_complex, random_hermitian, random_psd


def brute_kron(a, b):
    r1, c1 = a.shape
    r2, c2 = b.shape
    out = np.zeros((r1 * r2, c1 * c2), dtype=complex)
    for i in range(r1):
        for j in range(c1):
            for k in range(r2):
                for l in range(c2):
                    out[i * r2 + k, j * c2 + l] = a[i, j] * b[k, l]
    return out


class TestKronecker:
    def test_identity(self):
        np.testing.assert_array_equal(kronecker(np.eye(2), np.eye(2)), np.eye(4))

    def test_xpol_block_tiling(self):
        block = np.array([[1.0, 0.1], [0.1, 1.0]])
        out = kronecker(np.ones((2, 2)), block)
        assert out.shape == (4, 4)
        for i in range(2):
            for j in range(2):
                np.testing.assert_array_equal(out[2 * i : 2 * i + 2, 2 * j : 2 * j + 2], block)

    def test_random_2x2_3x3(self, rng):
        a, b = random_complex(rng, 2, 2), random_complex(rng, 3, 3)
        np.testing.assert_allclose(kronecker(a, b), brute_kron(a, b), atol=1e-12)

    @given(
        st.integers(1, 4), st.integers(1, 4), st.integers(1, 4), st.integers(1, 4), st.integers(0, 2**32 - 1)
    )
    @settings(max_examples=40, deadline=None)
    def test_property_vs_definition(self, r1, c1, r2, c2, seed):
        g = np.random.default_rng(seed)
        a, b = random_complex(g, r1, c1), random_complex(g, r2, c2)
        np.testing.assert_allclose(kronecker(a, b), brute_kron(a, b), rtol=0, atol=1e-12)

    def test_size_errors(self):
        with pytest.raises(SizeError):
            kronecker(np.zeros((0, 2)), np.eye(2))
        with pytest.raises(SizeError):
            kronecker(np.ones((1, 50000)), np.ones((1, 50000)))


class TestHadamard:
    def test_identities(self, rng):
        a = random_complex(rng, 3, 3)
        np.testing.assert_array_equal(hadamard(a, np.ones((3, 3))), a)
        np.testing.assert_array_equal(hadamard(a, np.zeros((3, 3))), np.zeros((3, 3)))

    def test_entrywise(self):
        a = np.array([[1 + 1j, 2], [3, -1j]])
        b = np.array([[2, 1j], [0.5, 4]])
        expected = np.array([[a[i, j] * b[i, j] for j in range(2)] for i in range(2)])
        np.testing.assert_array_equal(hadamard(a, b), expected)

    def test_mismatch(self):
        with pytest.raises(SizeError):
            hadamard(np.eye(2), np.eye(3))


class TestHermitianEig:
    def test_simple(self):
        np.testing.assert_allclose(hermitian_eig(np.eye(5)).eigenvalues, np.ones(5))
        np.testing.assert_allclose(hermitian_eig(np.diag([1.0, 3.0])).eigenvalues, [3.0, 1.0])

    @pytest.mark.parametrize("n", [1, 4, 16, 64])
    def test_invariants(self, rng, n):
        m = random_hermitian(rng, n)
        eig = hermitian_eig(m)
        v = eig.eigenvectors
        assert np.all(np.diff(eig.eigenvalues) <= 0)
        np.testing.assert_allclose(v.conj().T @ v, np.eye(n), atol=1e-10)
        assert eig.eigenvalues.sum() == pytest.approx(np.trace(m).real, abs=1e-10 * max(1, np.abs(m).max()) * n)
        assert np.linalg.norm(eig.reconstruct() - m) <= 1e-10 * np.linalg.norm(m)

    def test_rejects(self, rng):
        with pytest.raises(SizeError):
            hermitian_eig(np.ones((2, 3)))
        with pytest.raises(ParameterError):
            hermitian_eig(random_complex(rng, 3, 3))


class TestPsdSqrt:
    def test_simple(self):
        np.testing.assert_allclose(psd_sqrt(np.eye(3)), np.eye(3), atol=1e-15)
        np.testing.assert_allclose(psd_sqrt(np.diag([4.0, 9.0])), np.diag([2.0, 3.0]), atol=1e-14)

    @pytest.mark.parametrize("n", [2, 8, 32])
    def test_reconstruction(self, rng, n):
        a = random_psd(rng, n)
        r = psd_sqrt(a)
        assert np.linalg.norm(r @ r - a) <= 1e-8 * np.linalg.norm(a)
        assert np.linalg.eigvalsh(r).min() >= -1e-12 * np.abs(r).max()
        np.testing.assert_allclose(r, r.conj().T, atol=0)

    def test_clipping(self):
        m = np.diag([1.0, -1e-10])
        np.testing.assert_allclose(psd_sqrt(m), np.diag([1.0, 0.0]))
        with pytest.raises(NotPSDError) as info:
            psd_sqrt(np.diag([1.0, -1e-3]))
        assert info.value.min_eigenvalue == pytest.approx(-1e-3)


class TestEmpiricalCdf:
    def test_single(self):
        assert empirical_cdf([5]).points() == [(5.0, 1.0)]

    def test_median_midpoint(self):
        assert empirical_cdf([4, 1, 3, 2]).median() == 2.5

    def test_steps(self):
        cdf = empirical_cdf([3.0, 1.0, 2.0])
        assert cdf.points() == [(1.0, 1 / 3), (2.0, 2 / 3), (3.0, 1.0)]
        assert cdf(1.5) == pytest.approx(1 / 3)

    def test_uniform_convergence(self, rng):
        cdf = empirical_cdf(rng.random(10**4))
        dev = max(np.max(np.abs(cdf.probabilities - cdf.values)),
                  np.max(np.abs(cdf.probabilities - 1 / len(cdf) - cdf.values)))
        assert dev <= 0.03

    def test_rejects(self):
        with pytest.raises(ParameterError):
            empirical_cdf([])
        with pytest.raises(ParameterError):
            empirical_cdf([1.0, float("inf")])
