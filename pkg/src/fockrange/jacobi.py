"""Self-contained Hermitian eigensolver: cyclic complex Jacobi rotations.

The kernel runs fixed row-major (p, q) cycles with a per-element skip
threshold, annihilating each off-diagonal entry with a unitary plane
rotation.  Everything is deterministic: no pivot ordering depends on data
beyond the skip test, ties in the final diagonal are broken by lowest index,
and the returned eigenvector phase is normalized.  numba compiles the kernel
once and caches the binary next to the package.
"""

from __future__ import annotations

import numpy as np
from numba import njit

from .errors import EigensolverError

# Off-diagonal Frobenius target, relative to the matrix Frobenius norm.  Kept
# a factor below the usual sqrt(eps) so Rayleigh-quotient support values stay
# monotone under subspace nesting at the 1e-10 tolerances the checks use.
OFF_DIAGONAL_TOL = 3e-14
MAX_SWEEPS = 60


@njit(
    "Tuple((int64, float64))(complex128[:, ::1], complex128[:, ::1], float64, int64)",
    cache=True,
)
def _jacobi_cycle(A, V, thresh, max_sweeps):
    """Diagonalize Hermitian A in place, accumulating rotations into V.

    Returns (sweeps used, final off-diagonal Frobenius norm).  A ends up
    diagonal-real up to thresh; V ends up with A_in = V A_out V^dagger.
    """
    n = A.shape[0]
    skip = thresh / n
    sweeps = 0
    while True:
        off = 0.0
        for i in range(n - 1):
            for j in range(i + 1, n):
                off += 2.0 * abs(A[i, j]) ** 2
        off = np.sqrt(off)
        if off <= thresh or sweeps >= max_sweeps:
            return sweeps, off
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                m = abs(apq)
                if m <= skip:
                    continue
                app = A[p, p].real
                aqq = A[q, q].real
                tau = (aqq - app) / (2.0 * m)
                if tau >= 0.0:
                    t = -1.0 / (tau + np.sqrt(tau * tau + 1.0))
                else:
                    t = 1.0 / (-tau + np.sqrt(tau * tau + 1.0))
                c = 1.0 / np.sqrt(1.0 + t * t)
                sr = t * c
                u = apq / m
                su = sr * u
                suc = sr * np.conj(u)
                for i in range(n):
                    aip = A[i, p]
                    aiq = A[i, q]
                    A[i, p] = c * aip + suc * aiq
                    A[i, q] = -su * aip + c * aiq
                for i in range(n):
                    api = A[p, i]
                    aqi = A[q, i]
                    A[p, i] = c * api + su * aqi
                    A[q, i] = -suc * api + c * aqi
                for i in range(n):
                    vip = V[i, p]
                    viq = V[i, q]
                    V[i, p] = c * vip + suc * viq
                    V[i, q] = -su * vip + c * viq
                dp = c * c * app + sr * sr * aqq + 2.0 * c * sr * m
                dq = sr * sr * app + c * c * aqq - 2.0 * c * sr * m
                A[p, p] = complex(dp, 0.0)
                A[q, q] = complex(dq, 0.0)
                A[p, q] = 0.0
                A[q, p] = 0.0


def require_hermitian(H, tol: float = 1e-12) -> np.ndarray:
    """Validate H = H^dagger within tol (relative) and return a clean copy."""
    H = np.ascontiguousarray(H, dtype=np.complex128)
    if H.ndim != 2 or H.shape[0] != H.shape[1]:
        raise EigensolverError(f"expected a square matrix, got shape {H.shape}")
    scale = float(np.max(np.abs(H))) if H.size else 0.0
    dev = float(np.max(np.abs(H - H.conj().T))) if H.size else 0.0
    if dev > tol * (1.0 + scale):
        raise EigensolverError(
            f"matrix is not Hermitian: max |H - H^t| = {dev:.3e} at scale {scale:.3e}"
        )
    return np.ascontiguousarray(0.5 * (H + H.conj().T))


def diagonalize(H) -> tuple[np.ndarray, np.ndarray]:
    """Full deterministic eigendecomposition: (diagonal values, unitary V)."""
    A = require_hermitian(H)
    n = A.shape[0]
    V = np.eye(n, dtype=np.complex128)
    thresh = OFF_DIAGONAL_TOL * float(np.linalg.norm(A))
    sweeps, off = _jacobi_cycle(A, V, thresh, MAX_SWEEPS)
    if off > thresh:
        raise EigensolverError(
            f"Jacobi cycles stalled: off-diagonal {off:.3e} > {thresh:.3e} "
            f"after {sweeps} sweeps"
        )
    return A.diagonal().real.copy(), V


def fix_phase(v: np.ndarray) -> np.ndarray:
    """Rotate a vector so its largest-modulus entry is real positive."""
    j = int(np.argmax(np.abs(v)))
    piv = v[j]
    mag = abs(piv)
    if mag == 0.0:
        return v
    return v * (piv.conjugate() / mag)


def hermitian_max_eigenpair(H) -> tuple[float, np.ndarray]:
    """Largest eigenvalue and a unit eigenvector of a Hermitian matrix.

    Deterministic across runs: fixed cyclic sweep order, lowest index on a
    tied maximal diagonal, eigenvector phase fixed by fix_phase.
    """
    d, V = diagonalize(H)
    idx = int(np.argmax(d))
    v = V[:, idx].copy()
    nrm = float(np.linalg.norm(v))
    if nrm == 0.0:
        raise EigensolverError("degenerate eigenvector column")
    return float(d[idx]), fix_phase(v / nrm)
