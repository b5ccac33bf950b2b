"""Closed-form regions predicted for weighted composition operators.

Five region kinds cover every case the theory produces: elliptical disks
from 2x2 compressions, centered disks from nilpotent compressions, convex
polygon hulls and dense-orbit disks for unimodular a, and degenerate
segments.  Each region knows its membership predicate, support function,
boundary parametrization, and a JSON form; constructors tag results with a
provenance string naming the claim and inputs that produced them.

Claim tokens: P2.1 (2x2 compression ellipse, literal and corrected modes),
T2.2 (zero witnesses from the point spectrum), T2.3 (nilpotent compression
disk), R2.4 (rank-one trichotomy for constant composition), T3.1a/b/c
(exact ranges on the unit circle).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import geometry
from .errors import HypothesisViolation, SearchExhausted
from .symbols import (
    AffineMap,
    ConjugationData,
    EntireSymbol,
    PolarRationalAngle,
    evaluate,
    inner_product,
)


def _pair(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


@dataclass(frozen=True)
class EllipseRegion:
    """Closed elliptical disk given by foci and full axis lengths."""

    f1: complex
    f2: complex
    major: float
    minor: float
    provenance: str = ""

    kind = "ellipse"

    def __post_init__(self):
        if self.major < abs(self.f1 - self.f2) - 1e-12 * (1 + self.major):
            raise ValueError("major axis shorter than the focal distance")

    @property
    def center(self) -> complex:
        return 0.5 * (self.f1 + self.f2)

    @property
    def tilt(self) -> float:
        d = self.f2 - self.f1
        return math.atan2(d.imag, d.real) if d != 0 else 0.0

    def contains(self, w, tol: float = 0.0) -> bool:
        w = complex(w)
        return abs(w - self.f1) + abs(w - self.f2) <= self.major + 2.0 * tol

    def signed_margin(self, w) -> float:
        """Half the focal-sum slack; exact in sign, near distance in size."""
        w = complex(w)
        return 0.5 * (self.major - (abs(w - self.f1) + abs(w - self.f2)))

    def support(self, thetas) -> np.ndarray:
        t = np.asarray(thetas, dtype=np.float64)
        A, B = 0.5 * self.major, 0.5 * self.minor
        rel = t - self.tilt
        bulge = np.sqrt((A * np.cos(rel)) ** 2 + (B * np.sin(rel)) ** 2)
        return np.real(np.exp(-1j * t) * self.center) + bulge

    def boundary_points(self, count: int = 512) -> np.ndarray:
        t = 2.0 * np.pi * np.arange(count) / count
        A, B = 0.5 * self.major, 0.5 * self.minor
        return self.center + np.exp(1j * self.tilt) * (
            A * np.cos(t) + 1j * B * np.sin(t)
        )

    def touch_point(self, theta: float) -> complex:
        """Boundary point attaining the support value in direction theta."""
        A, B = 0.5 * self.major, 0.5 * self.minor
        rel = theta - self.tilt
        den = math.hypot(A * math.cos(rel), B * math.sin(rel))
        if den == 0.0:
            return self.center
        x = A * A * math.cos(rel) / den
        y = B * B * math.sin(rel) / den
        return self.center + cmath.exp(1j * self.tilt) * complex(x, y)

    def to_json_dict(self) -> dict:
        return {
            "kind": self.kind,
            "parameters": {
                "f1": _pair(self.f1),
                "f2": _pair(self.f2),
                "major": float(self.major),
                "minor": float(self.minor),
            },
            "provenance": self.provenance,
        }


@dataclass(frozen=True)
class DiskRegion:
    """Disk; open_disk records openness, predicates treat the closure."""

    center: complex
    radius: float
    open_disk: bool = False
    provenance: str = ""

    kind = "disk"

    def contains(self, w, tol: float = 0.0) -> bool:
        return abs(complex(w) - self.center) <= self.radius + tol

    def signed_margin(self, w) -> float:
        return self.radius - abs(complex(w) - self.center)

    def support(self, thetas) -> np.ndarray:
        t = np.asarray(thetas, dtype=np.float64)
        return np.real(np.exp(-1j * t) * self.center) + self.radius

    def boundary_points(self, count: int = 512) -> np.ndarray:
        t = 2.0 * np.pi * np.arange(count) / count
        return self.center + self.radius * np.exp(1j * t)

    def touch_point(self, theta: float) -> complex:
        return self.center + self.radius * cmath.exp(1j * theta)

    def to_json_dict(self) -> dict:
        return {
            "kind": self.kind,
            "parameters": {
                "center": _pair(self.center),
                "radius": float(self.radius),
                "open": bool(self.open_disk),
            },
            "provenance": self.provenance,
        }


@dataclass(frozen=True)
class PolygonHullRegion:
    """Convex hull of finitely many vertices, stored counterclockwise."""

    vertices: tuple[complex, ...]
    provenance: str = ""

    kind = "polygon-hull"

    @classmethod
    def from_points(cls, points, provenance: str = "") -> "PolygonHullRegion":
        hull = geometry.convex_hull(np.asarray(points, dtype=np.complex128))
        return cls(tuple(complex(v) for v in hull), provenance)

    def contains(self, w, tol: float = 0.0) -> bool:
        return self.signed_margin(w) >= -tol

    def signed_margin(self, w) -> float:
        return geometry.hull_signed_margin(np.array(self.vertices), w)

    def support(self, thetas) -> np.ndarray:
        return geometry.polygon_support(np.array(self.vertices), thetas)

    def boundary_points(self, count: int = 512) -> np.ndarray:
        v = np.array(self.vertices, dtype=np.complex128)
        if v.size == 1:
            return np.repeat(v, count)
        edges = np.roll(v, -1) - v
        lengths = np.abs(edges)
        total = lengths.sum()
        if total == 0.0:
            return np.repeat(v[:1], count)
        s = np.linspace(0.0, total, count, endpoint=False)
        cum = np.concatenate([[0.0], np.cumsum(lengths)])
        idx = np.clip(np.searchsorted(cum, s, side="right") - 1, 0, v.size - 1)
        local = (s - cum[idx]) / np.where(lengths[idx] == 0, 1.0, lengths[idx])
        return v[idx] + local * edges[idx]

    def touch_point(self, theta: float) -> complex:
        v = np.array(self.vertices, dtype=np.complex128)
        return complex(v[int(np.argmax(np.real(np.exp(-1j * theta) * v)))])

    def to_json_dict(self) -> dict:
        return {
            "kind": self.kind,
            "parameters": {"vertices": [_pair(v) for v in self.vertices]},
            "provenance": self.provenance,
        }


@dataclass(frozen=True)
class SegmentRegion:
    """Closed line segment, possibly degenerate to a point."""

    z_from: complex
    z_to: complex
    provenance: str = ""

    kind = "segment"

    def contains(self, w, tol: float = 1e-12) -> bool:
        return geometry.point_on_segment(w, self.z_from, self.z_to, tol)

    def signed_margin(self, w) -> float:
        """Negated distance to the segment; never positive (empty interior)."""
        w = complex(w)
        d = self.z_to - self.z_from
        L2 = abs(d) ** 2
        if L2 == 0.0:
            return -abs(w - self.z_from)
        t = min(max((((w - self.z_from).conjugate() * d).real) / L2, 0.0), 1.0)
        return -abs(w - (self.z_from + t * d))

    def support(self, thetas) -> np.ndarray:
        t = np.asarray(thetas, dtype=np.float64)
        E = np.exp(-1j * t)
        return np.maximum(np.real(E * self.z_from), np.real(E * self.z_to))

    def boundary_points(self, count: int = 512) -> np.ndarray:
        s = np.linspace(0.0, 1.0, count)
        return self.z_from + s * (self.z_to - self.z_from)

    def touch_point(self, theta: float) -> complex:
        u = cmath.exp(-1j * theta)
        if (u * self.z_from).real >= (u * self.z_to).real:
            return self.z_from
        return self.z_to

    def to_json_dict(self) -> dict:
        return {
            "kind": self.kind,
            "parameters": {"from": _pair(self.z_from), "to": _pair(self.z_to)},
            "provenance": self.provenance,
        }


@dataclass(frozen=True)
class DiskPlusOrbitRegion:
    """Open centered disk together with a unimodular orbit on its circle.

    The set is {|w| < |scale|} united with the points scale * a^m, m >= 0,
    which are dense in the circle when a is not a root of unity.  Predicates
    work with the closure; the orbit is exposed for inspection.
    """

    scale: complex
    orbit_generator: PolarRationalAngle
    provenance: str = ""

    kind = "disk-plus-orbit"

    @property
    def radius(self) -> float:
        return abs(self.scale)

    def contains(self, w, tol: float = 0.0) -> bool:
        return abs(complex(w)) <= self.radius + tol

    def signed_margin(self, w) -> float:
        return self.radius - abs(complex(w))

    def support(self, thetas) -> np.ndarray:
        t = np.asarray(thetas, dtype=np.float64)
        return np.full(t.shape, self.radius)

    def boundary_points(self, count: int = 512) -> np.ndarray:
        t = 2.0 * np.pi * np.arange(count) / count
        return self.radius * np.exp(1j * t)

    def touch_point(self, theta: float) -> complex:
        return self.radius * cmath.exp(1j * theta)

    def orbit_points(self, count: int = 16) -> np.ndarray:
        return np.array(
            [self.scale * self.orbit_generator.power(m) for m in range(count)],
            dtype=np.complex128,
        )

    def to_json_dict(self) -> dict:
        a = self.orbit_generator
        gen = (
            {"r": a.modulus, "pi_num": a.pi_num, "pi_den": a.pi_den}
            if a.is_exact
            else {"r": a.modulus, "radians": a.radians}
        )
        return {
            "kind": self.kind,
            "parameters": {"scale": _pair(self.scale), "orbit_generator": gen},
            "provenance": self.provenance,
        }


PredictedRegion = (
    EllipseRegion | DiskRegion | PolygonHullRegion | SegmentRegion | DiskPlusOrbitRegion
)


# ---------------------------------------------------------------------------
# classification of a on the unit circle


@dataclass(frozen=True)
class UnitRootClassification:
    """Outcome of the root-of-unity test for a unimodular parameter.

    provable is False when the angle was given as raw radians: equality with
    a rational multiple of pi is then undecidable and the verdict defaults
    to not-root-of-unity.
    """

    kind: str
    order: int | None
    provable: bool

    ONE = "one"
    ROOT_OF_UNITY = "root-of-unity"
    NOT_ROOT_OF_UNITY = "not-root-of-unity"


def classify_unit_a(a: PolarRationalAngle) -> UnitRootClassification:
    """Classify a unimodular a as 1, a primitive n-th root of 1, or neither."""
    if abs(a.modulus - 1.0) > 1e-12:
        raise HypothesisViolation(f"classification needs |a| = 1, got {a.modulus}")
    if not a.is_exact:
        return UnitRootClassification(
            UnitRootClassification.NOT_ROOT_OF_UNITY, None, False
        )
    if a.pi_num == 0:
        return UnitRootClassification(UnitRootClassification.ONE, 1, True)
    # a^n = 1 iff n * (p/q) is an even integer; the smallest such n
    p, q = a.pi_num, a.pi_den
    n = 2 * q // math.gcd(p, 2 * q)
    return UnitRootClassification(UnitRootClassification.ROOT_OF_UNITY, n, True)


# ---------------------------------------------------------------------------
# region constructors


class EllipseMode(Enum):
    """Which foci the compression ellipse uses.

    LITERAL takes the published foci a^n, a^{n+m}, which presume a unit
    leading coefficient; CORRECTED scales them by q_hat_0 and is the exact
    elliptical range of the 2x2 compression.  Both are reported side by side.
    """

    LITERAL = "literal"
    CORRECTED = "corrected"


def _axis_ratio(n: int, m: int) -> float:
    # sqrt((n+m)!/(n! m!)) via an exact binomial
    return math.sqrt(float(math.comb(n + m, n)))


def prop21_ellipse(
    data: ConjugationData,
    a: PolarRationalAngle,
    n: int,
    m: int,
    mode: EllipseMode = EllipseMode.CORRECTED,
) -> PredictedRegion:
    """Compression ellipse on span{e_n, e_{n+m}} for a nonvanishing weight."""
    if m < 1:
        raise ValueError("m must be >= 1")
    if len(data.qhat) <= m:
        raise ValueError(f"need q coefficients through index {m}")
    q0, qm = data.qhat[0], data.qhat[m]
    if abs(q0) <= 1e-12:
        raise HypothesisViolation(
            "weight vanishes at the fixed point; the compression is nilpotent "
            "(use thm23_disk)"
        )
    an, anm = a.power(n), a.power(n + m)
    minor = abs(qm * an) * _axis_ratio(n, m)
    if mode is EllipseMode.LITERAL:
        f1, f2 = an, anm
        prov = f"P2.1-lit(n={n},m={m})"
    else:
        f1, f2 = q0 * an, q0 * anm
        prov = f"P2.1-corr(n={n},m={m})"
    if minor == 0.0:
        return SegmentRegion(f1, f2, provenance=prov)
    major = math.hypot(abs(f1 - f2), minor)
    return EllipseRegion(f1, f2, major=major, minor=minor, provenance=prov)


def thm23_disk(
    data: ConjugationData, a: PolarRationalAngle, n: int, m: int
) -> DiskRegion:
    """Centered disk from the nilpotent compression when the weight kills p."""
    if m < 1:
        raise ValueError("m must be >= 1")
    if len(data.qhat) <= m:
        raise ValueError(f"need q coefficients through index {m}")
    if abs(data.qhat[0]) > 1e-12:
        raise HypothesisViolation(
            "weight does not vanish at the fixed point; use prop21_ellipse"
        )
    radius = 0.5 * abs(data.qhat[m] * a.power(n)) * _axis_ratio(n, m)
    return DiskRegion(0j, radius, open_disk=False, provenance=f"T2.3(n={n},m={m})")


# ---------------------------------------------------------------------------
# zero witnesses


@dataclass(frozen=True)
class ZeroWitness:
    """Hull certificate that 0 lies among the eigenvalue orbit points."""

    case: str
    vertices: tuple[complex, ...]
    exponents: tuple[int, ...]
    contains_zero: bool

    QUADRANT_POINTS = "quadrant-points"
    ROOT_OF_UNITY_POLYGON = "root-of-unity-polygon"
    REAL_SEGMENT = "real-segment"

    def to_json_dict(self) -> dict:
        return {
            "case": self.case,
            "vertices": [[v.real, v.imag] for v in self.vertices],
            "exponents": list(self.exponents),
            "contains_zero": self.contains_zero,
        }


def _hull_contains_zero(vertices) -> bool:
    pts = np.asarray(vertices, dtype=np.complex128)
    hull = geometry.convex_hull(pts)
    if hull.size <= 2:
        return geometry.point_on_segment(0j, hull[0], hull[-1], tol=1e-12)
    return geometry.hull_membership_certificate(hull, 0j) is not None


def _quadrant(w: complex) -> int | None:
    if w.real > 0 and w.imag > 0:
        return 0
    if w.real < 0 and w.imag > 0:
        return 1
    if w.real < 0 and w.imag < 0:
        return 2
    if w.real > 0 and w.imag < 0:
        return 3
    return None


def thm22_zero_witness(
    psi_at_p, a: PolarRationalAngle, max_exponent: int = 10000
) -> ZeroWitness:
    """Orbit points certifying that 0 lies in the hull of psi(p) a^k.

    Three shapes: a negative real gives a segment through 0; an exact angle
    of order n > 2 gives the n-gon on psi(p) a^k; a declared-irrational
    angle is searched for one orbit point per open quadrant.  A positive
    real a violates the hypothesis, and an exhausted search is reported as
    an error rather than a fabricated hull.
    """
    psi_at_p = complex(psi_at_p)
    if not 0.0 < a.modulus < 1.0:
        raise HypothesisViolation(f"witness needs 0 < |a| < 1, got {a.modulus}")
    if psi_at_p == 0:
        raise HypothesisViolation("weight vanishes at the fixed point")
    a_val = a.value()
    if a_val.imag == 0.0 and a_val.real > 0.0:
        raise HypothesisViolation("a is a positive real; the orbit stays in a ray")
    if a.is_exact:
        order = 2 * a.pi_den // math.gcd(a.pi_num, 2 * a.pi_den)
        if order == 2:
            vertices = (psi_at_p * a_val, psi_at_p)
            return ZeroWitness(
                ZeroWitness.REAL_SEGMENT,
                vertices,
                (1, 0),
                geometry.point_on_segment(0j, vertices[0], vertices[1], tol=1e-12),
            )
        vertices = tuple(psi_at_p * a.power(k) for k in range(order))
        return ZeroWitness(
            ZeroWitness.ROOT_OF_UNITY_POLYGON,
            vertices,
            tuple(range(order)),
            _hull_contains_zero(vertices),
        )
    found: dict[int, tuple[int, complex]] = {}
    w = 1.0 + 0j
    for k in range(1, max_exponent + 1):
        w = w * a_val
        quad = _quadrant(w)
        if quad is not None and quad not in found:
            found[quad] = (k, w)
            if len(found) == 4:
                break
    if len(found) < 4:
        raise SearchExhausted(
            f"no orbit point in {4 - len(found)} quadrant(s) within "
            f"max_exponent = {max_exponent}"
        )
    ordered = [found[quad] for quad in range(4)]
    vertices = tuple(psi_at_p * w for _, w in ordered)
    return ZeroWitness(
        ZeroWitness.QUADRANT_POINTS,
        vertices,
        tuple(k for k, _ in ordered),
        _hull_contains_zero(vertices),
    )


# ---------------------------------------------------------------------------
# rank-one trichotomy for constant composition symbol


def remark24_rankone(psi: EntireSymbol, b) -> PredictedRegion:
    """Range of f -> psi * f(b): rank-one, so an ellipse with focus 0.

    The second focus is psi(b); the minor axis comes from the norms.  The
    ellipse collapses to the segment [0, psi(b)] when psi is parallel to
    the kernel at b and fattens to a centered disk when psi(b) = 0.
    """
    if psi.is_zero:
        raise HypothesisViolation("weight must be nonzero")
    b = complex(b)
    g = evaluate(psi, b)
    norm2 = inner_product(psi, psi).real
    kb_norm2 = math.exp(abs(b) ** 2)
    scale_sq = norm2 * kb_norm2
    minor_sq = max(scale_sq - abs(g) ** 2, 0.0)
    minor = math.sqrt(minor_sq)
    # Cauchy-Schwarz defect below 1e-13 of the Frobenius scale is roundoff
    # from the series sums, not a genuine axis; same cutoff for psi(b) = 0.
    if abs(g) ** 2 <= 1e-13 * scale_sq:
        radius = 0.5 * math.sqrt(scale_sq)
        return DiskRegion(0j, radius, open_disk=False, provenance="R2.4(b)")
    if minor_sq <= 1e-13 * scale_sq:
        return SegmentRegion(0j, g, provenance="R2.4(a)")
    major = math.hypot(abs(g), minor)
    return EllipseRegion(0j, g, major=major, minor=minor, provenance="R2.4(c)")


# ---------------------------------------------------------------------------
# exact ranges for |a| = 1


def structural_unit_form(psi: EntireSymbol, phi: AffineMap, tol: float = 1e-10) -> bool:
    """True when psi is a single kernel term psi(0) K_{-conj(a) b}."""
    if len(psi.terms) != 1:
        return False
    term = psi.terms[0]
    if term.k != 0 or term.alpha == 0:
        return False
    target = -phi.a_value.conjugate() * phi.b
    return abs(term.c - target) <= tol


def thm31_region(psi: EntireSymbol, phi: AffineMap) -> PredictedRegion:
    """Exact range for |a| = 1 and the structurally bounded weight form.

    The scale is s = psi(0) e^{a|b|^2/(a-1)} for a != 1.  A primitive root
    of order n gives s times the hull of the n-th roots of unity (a segment
    at n = 2); a non-root gives the open disk of radius |s| plus the orbit
    s a^m on its circle; a = 1 gives the open centered disk of radius
    |psi(0)| e^{|b|^2/2}.
    """
    if abs(phi.a.modulus - 1.0) > 1e-12:
        raise HypothesisViolation(f"exact ranges need |a| = 1, got {phi.a.modulus}")
    if not structural_unit_form(psi, phi):
        raise HypothesisViolation(
            "weight is not psi(0) K_{-conj(a) b}: the operator is unbounded "
            "and no exact range applies"
        )
    psi0 = evaluate(psi, 0j)
    b = phi.b
    cls = classify_unit_a(phi.a)
    if cls.kind == UnitRootClassification.ONE:
        radius = abs(psi0) * math.exp(0.5 * abs(b) ** 2)
        phase = psi0 * math.exp(0.5 * abs(b) ** 2)
        return DiskRegion(
            0j,
            radius,
            open_disk=True,
            provenance=f"T3.1c(phase=[{phase.real!r},{phase.imag!r}])",
        )
    a_val = phi.a_value
    s = psi0 * cmath.exp(a_val * abs(b) ** 2 / (a_val - 1.0))
    if cls.kind == UnitRootClassification.ROOT_OF_UNITY:
        vertices = [s * phi.a.power(k) for k in range(cls.order)]
        if cls.order == 2:
            return SegmentRegion(vertices[0], vertices[1], provenance="T3.1a(order=2)")
        return PolygonHullRegion.from_points(
            vertices, provenance=f"T3.1a(order={cls.order})"
        )
    return DiskPlusOrbitRegion(s, phi.a, provenance="T3.1b")
