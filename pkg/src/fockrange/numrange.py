"""Numerical range of a finite complex matrix by support-function sweep.

For each angle theta the top eigenpair of the Hermitian part of
e^{-i theta} T gives the support value h(theta) and a boundary point
p = <T v, v>.  Consecutive angle problems are near-commuting, so the sweep
chains eigenbases: each angle diagonalizes the small residual left after
rotating into the previous basis, which cuts Jacobi work roughly in half.
The reported support is the Rayleigh quotient of the returned vector, so
Re(e^{-i theta} p) = h(theta) holds exactly by construction and every
boundary point is a genuine quadratic-form value of T.

1x1 and 2x2 matrices take vectorized closed forms with the same
deterministic tie-breaks as the Jacobi path.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import geometry
from .errors import EigensolverError
from .jacobi import MAX_SWEEPS, OFF_DIAGONAL_TOL, _jacobi_cycle, fix_phase
from .regions import DiskRegion, EllipseRegion, SegmentRegion

# Basis drift from chained products is curbed by re-orthonormalizing every
# this many angles.
_REORTH_EVERY = 96


def _as_matrix(T) -> np.ndarray:
    entries = getattr(T, "entries", T)
    M = np.ascontiguousarray(entries, dtype=np.complex128)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {M.shape}")
    return M


@dataclass(frozen=True, eq=False)
class FieldOfValues:
    """Sampled support function and boundary points of one matrix."""

    angles: np.ndarray
    support: np.ndarray
    boundary: np.ndarray
    dim: int

    @cached_property
    def hull_vertices(self) -> np.ndarray:
        return geometry.convex_hull(self.boundary)

    @cached_property
    def area(self) -> float:
        return geometry.shoelace_area(self.hull_vertices)

    def support_at(self, thetas) -> np.ndarray:
        """Support function of the inner hull at arbitrary angles."""
        return geometry.polygon_support(self.hull_vertices, thetas)

    def __len__(self) -> int:
        return int(self.angles.size)


def _sweep_1x1(t00: complex, thetas: np.ndarray) -> FieldOfValues:
    h = np.real(np.exp(-1j * thetas) * t00)
    p = np.full(thetas.size, t00, dtype=np.complex128)
    return FieldOfValues(thetas, h, p, 1)


def _sweep_2x2(T: np.ndarray, thetas: np.ndarray) -> FieldOfValues:
    t00, t01 = T[0, 0], T[0, 1]
    t10, t11 = T[1, 0], T[1, 1]
    E = np.exp(-1j * thetas)
    h00 = np.real(E * t00)
    h11 = np.real(E * t11)
    g = 0.5 * (E * t01 + np.conj(E * t10))
    mid = 0.5 * (h00 + h11)
    rad = np.hypot(0.5 * (h00 - h11), np.abs(g))
    lam = mid + rad
    # eigenvector (g, lam - h00); when both vanish the matrix is diagonal
    # with the top value at index 0, matching the Jacobi tie-break
    v0 = g.copy()
    v1 = (lam - h00).astype(np.complex128)
    dead = (np.abs(v0) == 0.0) & (np.abs(v1) == 0.0)
    v0[dead] = 1.0
    nrm = np.sqrt(np.abs(v0) ** 2 + np.abs(v1) ** 2)
    v0 /= nrm
    v1 /= nrm
    # phase: largest-modulus component real positive, lowest index on ties
    pick0 = np.abs(v0) >= np.abs(v1)
    piv = np.where(pick0, v0, v1)
    phase = np.conj(piv) / np.abs(piv)
    v0 *= phase
    v1 *= phase
    p = (
        np.conj(v0) * (t00 * v0 + t01 * v1)
        + np.conj(v1) * (t10 * v0 + t11 * v1)
    )
    h = np.real(E * p)
    return FieldOfValues(thetas, h, p, 2)


def _reorthonormalize(Vb: np.ndarray) -> np.ndarray:
    Q, R = np.linalg.qr(Vb)
    d = np.diagonal(R).copy()
    d = np.where(np.abs(d) == 0.0, 1.0, d / np.abs(d))
    return np.ascontiguousarray(Q * d[None, :])


def sweep(T, K: int = 360) -> FieldOfValues:
    """Field of values of T sampled at K uniform angles 2 pi j / K."""
    M = _as_matrix(T)
    if K < 3:
        raise ValueError(f"sweep needs K >= 3 angles, got {K}")
    n = M.shape[0]
    thetas = 2.0 * np.pi * np.arange(K) / K
    if n == 1:
        return _sweep_1x1(complex(M[0, 0]), thetas)
    if n == 2:
        return _sweep_2x2(M, thetas)

    support = np.empty(K)
    boundary = np.empty(K, dtype=np.complex128)
    Vb: np.ndarray | None = None
    eye = np.eye(n, dtype=np.complex128)
    for j in range(K):
        R = np.exp(-1j * thetas[j]) * M
        H = 0.5 * (R + R.conj().T)
        if Vb is None:
            B = np.ascontiguousarray(H)
        else:
            B = Vb.conj().T @ H @ Vb
            B = np.ascontiguousarray(0.5 * (B + B.conj().T))
        W = eye.copy()
        thresh = OFF_DIAGONAL_TOL * float(np.linalg.norm(H))
        sweeps, off = _jacobi_cycle(B, W, thresh, MAX_SWEEPS)
        if off > thresh:
            raise EigensolverError(
                f"angle {j}: off-diagonal {off:.3e} > {thresh:.3e} "
                f"after {sweeps} sweeps"
            )
        Vb = W if Vb is None else Vb @ W
        idx = int(np.argmax(B.diagonal().real))
        v = Vb[:, idx]
        v = v / np.linalg.norm(v)
        p = complex(np.vdot(v, M @ v))
        boundary[j] = p
        support[j] = (np.exp(-1j * thetas[j]) * p).real
        if (j + 1) % _REORTH_EVERY == 0:
            Vb = _reorthonormalize(Vb)
    return FieldOfValues(thetas, support, boundary, n)


@dataclass(frozen=True)
class MembershipVerdict:
    """Verdict for one query point against a sampled field of values.

    certificate is a separating angle for Outside, a tuple of
    (boundary point, weight) pairs for Inside, and None otherwise.
    """

    status: str
    margin: float
    certificate: object = None

    INSIDE = "Inside"
    OUTSIDE = "Outside"
    AMBIGUOUS = "Boundary-ambiguous"


def membership(fov: FieldOfValues, w, tol: float = 1e-7) -> MembershipVerdict:
    """Locate w relative to the sampled range.

    Outside requires a sampled half-plane violated by more than tol (the
    certificate is its angle); Inside requires depth above tol within the
    inner hull (the certificate is a convex combination of boundary points);
    anything else is Boundary-ambiguous.
    """
    if len(fov) == 0:
        raise ValueError("empty field of values")
    w = complex(w)
    violations = np.real(np.exp(-1j * fov.angles) * w) - fov.support
    worst = int(np.argmax(violations))
    if violations[worst] > tol:
        return MembershipVerdict(
            MembershipVerdict.OUTSIDE,
            float(violations[worst]),
            float(fov.angles[worst]),
        )
    hull = fov.hull_vertices
    margin = geometry.hull_signed_margin(hull, w)
    if margin > tol:
        cert = geometry.hull_membership_certificate(hull, w)
        if cert is not None:
            idx, weights = cert
            pairs = tuple(
                (complex(hull[i]), float(wt)) for i, wt in zip(idx, weights)
            )
            return MembershipVerdict(MembershipVerdict.INSIDE, float(margin), pairs)
    return MembershipVerdict(MembershipVerdict.AMBIGUOUS, float(margin))


def ellipse_2x2(M):
    """Exact numerical range of a lower-triangular 2x2 matrix.

    Entries (alpha, 0; gamma, beta) give the closed elliptical disk with
    foci alpha, beta, minor axis |gamma| and major axis
    sqrt(|alpha - beta|^2 + |gamma|^2), degenerating to the segment
    [alpha, beta] when gamma = 0 and to a disk when alpha = beta.
    """
    A = _as_matrix(M)
    if A.shape != (2, 2):
        raise ValueError(f"expected a 2x2 matrix, got shape {A.shape}")
    alpha, beta, gamma = complex(A[0, 0]), complex(A[1, 1]), complex(A[1, 0])
    scale = max(abs(alpha), abs(beta), abs(gamma), 1.0)
    if abs(A[0, 1]) > 1e-14 * scale:
        raise ValueError("matrix is not lower triangular")
    prov = "elliptical-range-2x2"
    if gamma == 0:
        return SegmentRegion(alpha, beta, provenance=prov)
    if alpha == beta:
        return DiskRegion(alpha, 0.5 * abs(gamma), open_disk=False, provenance=prov)
    minor = abs(gamma)
    major = float(np.hypot(abs(alpha - beta), minor))
    return EllipseRegion(alpha, beta, major=major, minor=minor, provenance=prov)
