"""Planar convex geometry on complex points.

Everything the range computations need: monotone-chain hulls, signed margins
against a hull, support functions of polygons evaluated by a rotating walk,
convex-position tests, and Hausdorff distances between convex sets via the
support-function identity d_H(A, B) = sup_theta |h_A - h_B|.

Points are complex numbers; polygons are counterclockwise vertex arrays.
"""

from __future__ import annotations

import numpy as np


def _cross(o: complex, a: complex, b: complex) -> float:
    return (a.real - o.real) * (b.imag - o.imag) - (a.imag - o.imag) * (b.real - o.real)


def convex_hull(points) -> np.ndarray:
    """Counterclockwise hull vertices by monotone chain.

    Degenerate inputs collapse gracefully: one distinct point gives a single
    vertex, collinear sets give the two extreme points.
    """
    pts = np.asarray(points, dtype=np.complex128).ravel()
    if pts.size == 0:
        raise ValueError("convex_hull needs at least one point")
    uniq = sorted(set(complex(p) for p in pts), key=lambda z: (z.real, z.imag))
    if len(uniq) == 1:
        return np.array(uniq, dtype=np.complex128)
    lower: list[complex] = []
    for p in uniq:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[complex] = []
    for p in reversed(uniq):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 2:
        # all points collinear; keep the two extremes
        hull = [uniq[0], uniq[-1]]
    return np.array(hull, dtype=np.complex128)


def shoelace_area(vertices) -> float:
    v = np.asarray(vertices, dtype=np.complex128).ravel()
    if v.size < 3:
        return 0.0
    x, y = v.real, v.imag
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1)))


def hull_signed_margin(vertices, w) -> float:
    """Signed distance from w to the hull boundary; positive inside.

    For an interior point this is exactly the largest inscribed-disk radius
    around w (minimum over the supporting half-planes); outside it is the
    worst half-plane violation, which understates corner distances by at
    most the secant factor of the exterior angle.
    """
    v = np.asarray(vertices, dtype=np.complex128).ravel()
    w = complex(w)
    if v.size == 1:
        return -abs(w - v[0])
    nxt = np.roll(v, -1)
    edge = nxt - v
    lengths = np.abs(edge)
    live = lengths > 0
    if not np.any(live):
        return -abs(w - v[0])
    edge, base = edge[live], v[live]
    lengths = lengths[live]
    # inward for CCW order is the left normal of each edge
    normal = 1j * edge / lengths
    margins = (normal.conjugate() * (w - base)).real
    if v.size == 2:
        # degenerate segment hull: the two-edge loop caps margins at zero,
        # but points beyond the endpoints need the true distance
        t = ((w - v[0]).real * edge[0].real + (w - v[0]).imag * edge[0].imag) / lengths[0] ** 2
        t = min(max(t, 0.0), 1.0)
        return -abs(w - (v[0] + t * edge[0]))
    return float(np.min(margins))


def convex_position(points, slack: float | None = None) -> bool:
    """True when the ordered point cycle never turns clockwise beyond slack.

    Checks every cyclic consecutive triple of the raw sequence, so it detects
    out-of-order boundary samples that a hull-based test would silently drop.
    The default slack is 1e-12 relative to the squared point scale, matching
    the cross-product roundoff of points accurate to ~1e-13 of that scale.
    """
    pts = np.asarray(points, dtype=np.complex128).ravel()
    if pts.size < 3:
        return True
    if slack is None:
        scale = float(np.max(np.abs(pts)))
        slack = 1e-12 * (1.0 + scale) ** 2
    a, b, c = pts, np.roll(pts, -1), np.roll(pts, -2)
    crosses = ((b - a).conjugate() * (c - b)).imag
    return bool(np.all(crosses >= -slack))


def polygon_support(vertices, thetas) -> np.ndarray:
    """h(theta) = max over vertices of Re(e^{-i theta} v), vectorized.

    Walks vertices in direction order when the angle grid is sorted, so the
    cost is O(K + V) instead of O(K V).
    """
    v = np.asarray(vertices, dtype=np.complex128).ravel()
    t = np.asarray(thetas, dtype=np.float64).ravel()
    if v.size == 0:
        raise ValueError("empty polygon")
    if v.size <= 8 or t.size <= 8 or np.any(np.diff(t) < 0):
        return np.max(np.real(np.exp(-1j * t)[:, None] * v[None, :]), axis=1)
    out = np.empty(t.size)
    j = int(np.argmax(np.real(np.exp(-1j * t[0]) * v)))
    n = v.size
    for i, th in enumerate(t):
        u = np.exp(-1j * th)
        cur = (u * v[j]).real
        while True:
            nj = (j + 1) % n
            nxt = (u * v[nj]).real
            if nxt > cur + 1e-300:
                j, cur = nj, nxt
            else:
                break
        out[i] = cur
    return out


def point_on_segment(w, z_from, z_to, tol: float = 1e-12) -> bool:
    """Collinearity plus betweenness, both within tol."""
    w, a, b = complex(w), complex(z_from), complex(z_to)
    d = b - a
    L = abs(d)
    if L <= tol:
        return abs(w - a) <= tol
    u = d / L
    local = (w - a) * u.conjugate()
    return abs(local.imag) <= tol and -tol <= local.real <= L + tol


def hull_membership_certificate(vertices, w):
    """Barycentric certificate that w lies in the hull, or None.

    Returns (indices, weights) with w = sum weights[i] * vertices[idx[i]],
    weights >= 0 summing to 1, taken from a triangle fan.  Exact geometry on
    the given floats; points outside every fan triangle yield None.
    """
    v = np.asarray(vertices, dtype=np.complex128).ravel()
    w = complex(w)
    if v.size == 1:
        return ((0,), (1.0,)) if w == v[0] else None
    if v.size == 2:
        d = v[1] - v[0]
        L2 = abs(d) ** 2
        if L2 == 0.0:
            return ((0,), (1.0,)) if w == v[0] else None
        t = ((w - v[0]).conjugate() * d).real / L2
        if 0.0 <= t <= 1.0 and abs(v[0] + t * d - w) <= 1e-12 * (1 + abs(w)):
            return ((0, 1), (1.0 - t, t))
        return None
    for i in range(1, v.size - 1):
        a, b, c = v[0], v[i], v[i + 1]
        det = (b - a).real * (c - a).imag - (b - a).imag * (c - a).real
        if det == 0.0:
            continue
        l2 = ((w - a).real * (c - a).imag - (w - a).imag * (c - a).real) / det
        l3 = ((b - a).real * (w - a).imag - (b - a).imag * (w - a).real) / det
        l1 = 1.0 - l2 - l3
        if l1 >= -1e-14 and l2 >= -1e-14 and l3 >= -1e-14:
            weights = np.clip([l1, l2, l3], 0.0, None)
            weights /= weights.sum()
            return ((0, i, i + 1), tuple(float(x) for x in weights))
    return None


_DEFAULT_HAUSDORFF_GRID = 1 << 17


def support_gap(support_inner, support_outer, grid: int = 8192) -> float:
    """min over directions of h_outer - h_inner; >= 0 iff inner is contained.

    Both arguments are callables mapping an angle array to support values.
    The minimum over the continuous circle is approached from a uniform grid;
    the quadrature error is O(scale / grid^2) and irrelevant at the margins
    the checks run with.
    """
    t = np.linspace(0.0, 2.0 * np.pi, grid, endpoint=False)
    return float(np.min(support_outer(t) - support_inner(t)))


def hausdorff_support(support_a, support_b, grid: int = _DEFAULT_HAUSDORFF_GRID) -> float:
    """Hausdorff distance of two compact convex sets from their supports."""
    t = np.linspace(0.0, 2.0 * np.pi, grid, endpoint=False)
    return float(np.max(np.abs(support_a(t) - support_b(t))))
