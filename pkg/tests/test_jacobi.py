"""Deterministic Hermitian top-eigenpair solver against reference solvers."""

from __future__ import annotations

import numpy as np
import pytest

from conftest import power_top_eig
from fockrange import EigensolverError
from fockrange.jacobi import hermitian_max_eigenpair


def _random_hermitian(rng, n: int, scale: float = 1.0) -> np.ndarray:
    A = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return scale * 0.5 * (A + A.conj().T)


class TestExamples:
    def test_diagonal(self):
        lam, v = hermitian_max_eigenpair(np.diag([1.0, 2.0, 3.0]).astype(np.complex128))
        assert lam == 3.0
        assert np.array_equal(v, np.array([0, 0, 1], dtype=np.complex128))

    def test_symmetric_involution(self):
        H = np.array([[0.0, 0.5], [0.5, 0.0]], dtype=np.complex128)
        lam, v = hermitian_max_eigenpair(H)
        assert lam == pytest.approx(0.5, abs=1e-14)
        assert np.allclose(v, np.array([1, 1]) / np.sqrt(2), atol=1e-12)

    def test_degenerate_tie_breaks_to_lowest_index(self):
        lam, v = hermitian_max_eigenpair(np.diag([2.0, 2.0, 1.0]).astype(np.complex128))
        assert lam == 2.0
        assert np.array_equal(v, np.array([1, 0, 0], dtype=np.complex128))

    def test_phase_fixed_positive_real(self, rng):
        for n in (2, 5, 9):
            H = _random_hermitian(rng, n)
            _, v = hermitian_max_eigenpair(H)
            pivot = v[int(np.argmax(np.abs(v)))]
            assert pivot.imag == pytest.approx(0.0, abs=1e-14)
            assert pivot.real > 0


class TestAgainstOracles:
    def test_matches_lapack_eigenvalues(self, rng):
        for n in (1, 2, 3, 5, 8, 13, 24):
            for scale in (1.0, 1e-3, 50.0):
                H = _random_hermitian(rng, n, scale)
                lam, v = hermitian_max_eigenpair(H)
                ref = float(np.linalg.eigvalsh(H)[-1])
                norm = float(np.linalg.norm(H, 2)) or 1.0
                assert abs(lam - ref) <= 1e-12 * norm
                assert np.linalg.norm(H @ v - lam * v) <= 1e-10 * norm
                assert np.linalg.norm(v) == pytest.approx(1.0, abs=1e-12)

    def test_matches_power_iteration(self, rng):
        for _ in range(10):
            H = _random_hermitian(rng, 6)
            lam, _ = hermitian_max_eigenpair(H)
            assert abs(lam - power_top_eig(H)) <= 1e-9 * (1.0 + np.linalg.norm(H, 2))


class TestContract:
    def test_deterministic_across_runs(self, rng):
        H = _random_hermitian(rng, 12)
        lam1, v1 = hermitian_max_eigenpair(H)
        lam2, v2 = hermitian_max_eigenpair(H.copy())
        assert lam1 == lam2
        assert np.array_equal(v1, v2)

    def test_rejects_non_hermitian(self):
        with pytest.raises(EigensolverError):
            hermitian_max_eigenpair(np.array([[0, 1], [0, 0]], dtype=np.complex128))

    def test_rejects_non_square(self):
        with pytest.raises((EigensolverError, ValueError)):
            hermitian_max_eigenpair(np.zeros((2, 3), dtype=np.complex128))
