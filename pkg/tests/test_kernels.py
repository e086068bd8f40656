"""Eigensolver kernels against closed-form oracles and across backends."""

import math

import numpy as np
import pytest

from symcone import _kernels
from symcone.spectral import JacobiConvergenceError, sym_eigen, sym_eigvals_batch


def eig2_closed(M):
    """2x2 symmetric eigenvalues from trace and determinant."""
    half_tr = (M[0, 0] + M[1, 1]) / 2.0
    disc = math.sqrt(((M[0, 0] - M[1, 1]) / 2.0) ** 2 + M[0, 1] ** 2)
    return np.array([half_tr + disc, half_tr - disc])


def eig3_closed(M):
    """3x3 symmetric eigenvalues by the trigonometric characteristic-poly form."""
    p1 = M[0, 1] ** 2 + M[0, 2] ** 2 + M[1, 2] ** 2
    if p1 == 0.0:
        return np.sort(np.diag(M))[::-1]
    q = np.trace(M) / 3.0
    p2 = sum((M[i, i] - q) ** 2 for i in range(3)) + 2.0 * p1
    p = math.sqrt(p2 / 6.0)
    B = (M - q * np.eye(3)) / p
    r = np.linalg.det(B) / 2.0
    r = min(1.0, max(-1.0, r))
    phi = math.acos(r) / 3.0
    e1 = q + 2.0 * p * math.cos(phi)
    e3 = q + 2.0 * p * math.cos(phi + 2.0 * math.pi / 3.0)
    return np.array([e1, 3.0 * q - e1 - e3, e3])


class TestAgainstClosedForms:
    def test_fixed_2x2(self):
        w, _ = sym_eigen(np.array([[9.0, 24.0], [24.0, 9.0]]))
        np.testing.assert_allclose(w, [33.0, -15.0], atol=1e-10)

    def test_identity(self):
        w, V = sym_eigen(np.eye(4))
        np.testing.assert_allclose(w, np.ones(4), atol=1e-14)
        np.testing.assert_allclose(V.T @ V, np.eye(4), atol=1e-12)

    def test_diagonal_sorts(self):
        w, _ = sym_eigen(np.diag([3.0, 1.0, 2.0]))
        np.testing.assert_allclose(w, [3.0, 2.0, 1.0], atol=0)

    @pytest.mark.parametrize("n,oracle", [(2, eig2_closed), (3, eig3_closed)])
    def test_random_vs_characteristic_polynomial(self, n, oracle):
        rng = np.random.default_rng(11)
        for _ in range(300):
            G = rng.normal(0.0, 3.0, (n, n))
            M = (G + G.T) / 2.0
            w, _ = sym_eigen(M)
            scale = max(1.0, np.abs(M).max())
            np.testing.assert_allclose(w, oracle(M), atol=1e-10 * scale)

    def test_reconstruction(self):
        rng = np.random.default_rng(3)
        for n in (2, 3, 5, 8):
            G = rng.normal(0.0, 2.0, (n, n))
            M = (G + G.T) / 2.0
            w, V = sym_eigen(M)
            np.testing.assert_allclose(V @ np.diag(w) @ V.T, M,
                                       atol=1e-12 * max(1.0, np.abs(M).max()))
            np.testing.assert_allclose(V.T @ V, np.eye(n), atol=1e-12)


class TestInputHandling:
    def test_rejects_asymmetric(self):
        with pytest.raises(ValueError):
            sym_eigen(np.array([[1.0, 2.0], [0.0, 1.0]]))

    def test_rejects_nonsquare(self):
        with pytest.raises(ValueError):
            sym_eigen(np.zeros((2, 3)))

    def test_nonconvergence_raises(self):
        M = np.array([[1.0, 4.0], [4.0, -2.0]])
        with pytest.raises(JacobiConvergenceError) as exc:
            sym_eigen(M, max_sweeps=0)
        assert exc.value.residual > 0

    def test_deterministic(self):
        rng = np.random.default_rng(1)
        G = rng.normal(size=(5, 5))
        M = (G + G.T) / 2.0
        w1, V1 = sym_eigen(M)
        w2, V2 = sym_eigen(M)
        assert np.array_equal(w1, w2)
        assert np.array_equal(V1, V2)


class TestBatch:
    def test_batch_matches_single(self):
        rng = np.random.default_rng(5)
        S = rng.normal(0.0, 2.0, (40, 4, 4))
        S = (S + S.transpose(0, 2, 1)) / 2.0
        W = sym_eigvals_batch(S)
        for i in range(S.shape[0]):
            w, _ = sym_eigen(S[i])
            np.testing.assert_allclose(W[i], w, atol=1e-11 * max(1.0, np.abs(S[i]).max()))

    def test_backends_agree(self):
        impls = _kernels.implementations()
        if "numba" not in impls:
            pytest.skip("numba backend unavailable")
        rng = np.random.default_rng(9)
        S = rng.normal(0.0, 3.0, (25, 5, 5))
        S = (S + S.transpose(0, 2, 1)) / 2.0
        results = {}
        for name, impl in impls.items():
            W, offs = impl["vals_batch"](S, _kernels.JACOBI_TOL, _kernels.JACOBI_MAX_SWEEPS)
            assert float(offs.max()) < 1e-10
            results[name] = -np.sort(-W, axis=1)
        np.testing.assert_allclose(results["numba"], results["numpy"],
                                   atol=1e-10 * max(1.0, np.abs(S).max()))

    def test_single_backends_agree(self):
        impls = _kernels.implementations()
        if "numba" not in impls:
            pytest.skip("numba backend unavailable")
        rng = np.random.default_rng(13)
        G = rng.normal(size=(6, 6))
        M = (G + G.T) / 2.0
        outs = {}
        for name, impl in impls.items():
            w, V, off = impl["eigh"](M, _kernels.JACOBI_TOL, _kernels.JACOBI_MAX_SWEEPS)
            assert off < 1e-10
            outs[name] = np.sort(w)
        np.testing.assert_allclose(outs["numba"], outs["numpy"], atol=1e-12)
