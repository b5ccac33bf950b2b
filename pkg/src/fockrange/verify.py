"""Cross-checks between swept numerical ranges and predicted regions.

Containment is decided through support functions, which are exact for
convex sets: a convex region lies inside a convex polygon iff its support
stays below the edge offsets at the edge-normal directions, and a polygon
lies inside a convex region iff every vertex has nonnegative signed margin.
Both tests are finite and free of sampling gaps, so the reported worst
margins are meaningful down to solver noise.

Verdict vocabulary.  Sweeps inner-approximate the true numerical range
(every polished boundary sample is a genuine Rayleigh value), so the two
check directions carry different strengths: a predicted region inside the
swept hull is Verified outright, while a failure only means the truncation
is too small (Ambiguous); a swept hull inside a predicted region is
Verified at this truncation, while a failure exhibits genuine range points
outside the prediction (Refuted-at-truncation).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import geometry
from .errors import HypothesisViolation, SearchExhausted
from .numrange import FieldOfValues, MembershipVerdict, membership, sweep
from .regions import (
    EllipseMode,
    PredictedRegion,
    ZeroWitness,
    prop21_ellipse,
    remark24_rankone,
    thm22_zero_witness,
    thm23_disk,
    thm31_region,
)
from .symbols import (
    AffineMap,
    EntireSymbol,
    PolarRationalAngle,
    conjugate_to_q,
    evaluate,
    map_to_json,
    weight_to_json,
)
from .truncation import TruncatedOperator, build_truncation, qform_truncation

STATUS_VERIFIED = "Verified"
STATUS_REFUTED = "Refuted-at-truncation"
STATUS_AMBIGUOUS = "Ambiguous"


@dataclass(frozen=True)
class ContainmentResult:
    """Outcome of one support-function containment check."""

    direction: str
    contained: bool
    worst_margin: float
    worst_angle: float
    status: str

    def to_json_dict(self) -> dict:
        return {
            "direction": self.direction,
            "contained": self.contained,
            "worst_margin": self.worst_margin,
            "worst_angle": self.worst_angle,
            "status": self.status,
        }


def _hull_edge_planes(vertices: np.ndarray):
    """Outward normal angles and offsets of a CCW convex polygon."""
    rolled = np.roll(vertices, -1)
    tangents = rolled - vertices
    normals = -1j * tangents
    angles = np.angle(normals)
    offsets = np.real(np.exp(-1j * angles) * vertices)
    return angles, offsets


def region_in_hull(
    fov: FieldOfValues, region: PredictedRegion, tol: float = 1e-9
) -> ContainmentResult:
    """Is the predicted region inside the swept hull?

    Exact up to tol for convex regions: tested on the hull's own edge
    half-planes.  Hulls degenerated to a segment or a point are handled by
    sampling the region boundary against them.
    """
    hull = fov.hull_vertices
    if len(hull) >= 3:
        angles, offsets = _hull_edge_planes(hull)
        margins = offsets - region.support(angles)
        j = int(np.argmin(margins))
        worst, worst_angle = float(margins[j]), float(angles[j])
    else:
        samples = region.boundary_points(512)
        margins = np.array([geometry.hull_signed_margin(hull, w) for w in samples])
        j = int(np.argmin(margins))
        worst, worst_angle = float(margins[j]), float(np.angle(samples[j] + 0j))
    contained = worst >= -tol
    status = STATUS_VERIFIED if contained else STATUS_AMBIGUOUS
    return ContainmentResult("region-in-hull", contained, worst, worst_angle, status)


def hull_in_region(
    fov: FieldOfValues, region: PredictedRegion, tol: float = 1e-8
) -> ContainmentResult:
    """Is the swept hull inside the (closure of the) predicted region?"""
    hull = fov.hull_vertices
    margins = np.array([region.signed_margin(v) for v in hull])
    j = int(np.argmin(margins))
    worst = float(margins[j])
    contained = worst >= -tol
    status = STATUS_VERIFIED if contained else STATUS_REFUTED
    return ContainmentResult(
        "hull-in-region", contained, worst, float(np.angle(hull[j] + 0j)), status
    )


def boundary_correspondence(fov: FieldOfValues, region: PredictedRegion) -> float:
    """max_j |p_j - touch point of the region at angle theta_j|.

    For a matrix whose range equals the region exactly (2x2 compressions),
    every polished boundary sample must coincide with the region's unique
    supporting point at the same angle; this is the sampling-free analogue
    of a boundary Hausdorff distance.
    """
    worst = 0.0
    for theta, p in zip(fov.angles, fov.boundary):
        worst = max(worst, abs(p - region.touch_point(float(theta))))
    return worst


def convex_hausdorff(
    fov: FieldOfValues, region: PredictedRegion, grid: int = 1 << 17
) -> float:
    """Hausdorff distance between the swept hull and the region."""
    return geometry.hausdorff_support(fov.support_at, region.support, grid)


def convergence_curve(op: TruncatedOperator, dims, K: int = 144) -> dict:
    """Support growth of nested leading blocks on a shared angle grid.

    Blocks of one built matrix nest exactly, and polished support values
    are Rayleigh quotients of the larger block too, so the computed curve
    is nondecreasing up to the top eigenpair's quadratic residual.
    """
    dims = sorted(set(int(n) for n in dims))
    if dims[0] < 1 or dims[-1] > op.dim:
        raise ValueError(f"block dims must lie in 1..{op.dim}")
    supports = []
    for n in dims:
        supports.append(sweep(op.leading_block(n).entries, K).support)
    min_step = math.inf
    for lo, hi in zip(supports, supports[1:]):
        min_step = min(min_step, float(np.min(hi - lo)))
    return {
        "dims": dims,
        "max_support": [float(np.max(h)) for h in supports],
        "min_step_margin": min_step if len(dims) > 1 else 0.0,
    }


# --- claim registry ---------------------------------------------------------

CLAIMS = {
    "P2.1-lit": "printed compression ellipse: foci a^n, a^(n+m), minor axis "
    "|qhat_m| |a|^n sqrt(C(n+m,n)), leading coefficient normalized to 1",
    "P2.1-corr": "exact 2x2 compression ellipse: foci qhat_0 a^n, qhat_0 a^(n+m), "
    "minor axis |qhat_m| |a|^n sqrt(C(n+m,n))",
    "T2.2": "for 0 < |a| < 1 and a not positive real, 0 lies in the closure of "
    "the range, certified by a finite orbit hull psi(p) a^k",
    "T2.3": "when qhat_0 = 0 with first nonzero qhat_m, the closed disk of "
    "radius |qhat_m a^n| sqrt(C(n+m,n))/2 about 0 lies in the range",
    "R2.4": "a = 0 gives a rank-one operator; the range is the elliptical disk "
    "with foci 0 and psi(b), minor sqrt(|psi|^2 e^(|b|^2) - |psi(b)|^2)",
    "T3.1a": "|a| = 1, a a primitive root of unity of order n, weight "
    "psi(0) K_(-conj(a) b): the range is the hull of s a^k, k < n",
    "T3.1b": "|a| = 1, a not a root of unity: the range is the closed disk of "
    "radius |s| (orbit of s dense in the circle)",
    "T3.1c": "a = 1, b != 0: the range is the open disk of radius "
    "|psi(0)| e^(|b|^2/2)",
    "E2.5a": "a = 1/2, b = 1/2, psi = K_1: qhat_j = e/(2^j sqrt(j!)); 0 lies "
    "inside the printed ellipse but outside the exact compression ellipse",
    "E2.5b": "a = 1/2, b = -1/2, psi = K_1 - 1/e: qhat_0 = 0, qhat_1 = 1/e; "
    "the closed disk of radius 1/(2e) lies in the range",
    "E3.2a": "psi = K_(3i), phi = iz + 3: the range is the square hull of "
    "s{1, i, -1, -i} with s = e^((9-9i)/2)",
    "E3.2b": "psi = K_(-2 e^(-i sqrt 3)), phi = e^(i sqrt 3) z + 2: the range "
    "is the closed disk of radius e^2",
    "E3.2c": "psi = K_(-2), phi = z + 2: the range is the open disk of "
    "radius e^2",
}


def _verdict(claim_id: str, check: ContainmentResult, note: str) -> dict:
    if claim_id not in CLAIMS:
        raise KeyError(f"unregistered claim id {claim_id!r}")
    return {
        "claim": claim_id,
        "status": check.status,
        "margin": check.worst_margin,
        "note": note,
    }


# --- example registry -------------------------------------------------------


@dataclass(frozen=True)
class ExampleCase:
    example_id: str
    description: str
    psi: EntireSymbol
    phi: AffineMap
    claim_ids: tuple[str, ...]
    corrections: tuple[str, ...] = ()


def _examples() -> dict[str, ExampleCase]:
    half = PolarRationalAngle.exact(0.5, 0, 1)
    return {
        "2.5a": ExampleCase(
            "2.5a",
            "contractive map with kernel weight K_1; dual ellipse readings",
            EntireSymbol.kernel(1.0 + 0j),
            AffineMap(half, 0.5 + 0j),
            ("P2.1-corr", "P2.1-lit", "E2.5a"),
            (
                "constant term of the map taken as +1/2: the printed -1/2 "
                "contradicts the stated fixed point 1 and the coefficients "
                "e/(2^j sqrt(j!))",
                "the printed ellipse normalizes the compression's leading "
                "coefficient to 1 (foci 1/2, 1/4); the exact compression "
                "carries qhat_0 = e (foci e/2, e/4); both are reported",
            ),
        ),
        "2.5b": ExampleCase(
            "2.5b",
            "weight vanishing at the fixed point; nilpotent compression disk",
            EntireSymbol.kernel(1.0 + 0j) - EntireSymbol.constant(1.0 / math.e),
            AffineMap(half, -0.5 + 0j),
            ("T2.3", "E2.5b"),
            (
                "the disk radius follows the nilpotent 2x2 compression, "
                "|qhat_m a^n| sqrt(C(n+m,n))/2, with the factor 2 in the "
                "denominator",
            ),
        ),
        "3.2a": ExampleCase(
            "3.2a",
            "quarter-turn rotation: square range",
            EntireSymbol.kernel(3j),
            AffineMap(PolarRationalAngle.exact(1.0, 1, 2), 3.0 + 0j),
            ("T3.1a", "E3.2a"),
        ),
        "3.2b": ExampleCase(
            "3.2b",
            "irrational rotation: disk range with dense boundary orbit",
            EntireSymbol.kernel(-2.0 * complex(math.cos(-math.sqrt(3.0)), math.sin(-math.sqrt(3.0)))),
            AffineMap(PolarRationalAngle.inexact(1.0, math.sqrt(3.0)), 2.0 + 0j),
            ("T3.1b", "E3.2b"),
        ),
        "3.2c": ExampleCase(
            "3.2c",
            "pure translation: open disk range",
            EntireSymbol.kernel(-2.0 + 0j),
            AffineMap(PolarRationalAngle.exact(1.0, 0, 1), 2.0 + 0j),
            ("T3.1c", "E3.2c"),
        ),
    }


EXAMPLES = _examples()


# --- prediction dispatch ----------------------------------------------------


@dataclass(frozen=True)
class Prediction:
    """Predicted regions for one symbol pair, with check directions."""

    regions: tuple[tuple[str, PredictedRegion, str], ...]  # (claim, region, direction)
    witness: Optional[ZeroWitness]
    notes: tuple[str, ...]


def _first_nonzero_index(qhat, tol: float = 1e-12) -> Optional[int]:
    for i, q in enumerate(qhat):
        if abs(q) > tol:
            return i
    return None


def predict_regions(
    psi: EntireSymbol,
    phi: AffineMap,
    mode: str = "both",
    n: int = 0,
    m: int = 1,
    count: int = 16,
) -> Prediction:
    """Region predictions for the operator h -> psi (h o phi).

    Dispatch on |a|: 0 gives the rank-one region (checked in both
    directions), modulus below 1 gives compression ellipses or the
    vanishing-weight disk plus a zero witness, modulus 1 gives the exact
    rotation/translation region (checked hull-in-region).
    """
    if mode not in ("literal", "corrected", "both"):
        raise ValueError(f"mode must be literal, corrected or both, got {mode!r}")
    mod = phi.a.modulus
    notes: list[str] = []
    if mod == 0.0:
        region = remark24_rankone(psi, phi.b)
        return Prediction((("R2.4", region, "both"),), None, ())
    if abs(mod - 1.0) <= 1e-12:
        region = thm31_region(psi, phi)
        claim = {
            "T3.1a(": "T3.1a",
            "T3.1b(": "T3.1b",
            "T3.1c(": "T3.1c",
        }[region.provenance[:6]]
        return Prediction(((claim, region, "hull-in-region"),), None, ())
    data = conjugate_to_q(psi, phi, count=count)
    regions: list[tuple[str, PredictedRegion, str]] = []
    if abs(data.qhat[0]) <= 1e-12:
        m_eff = _first_nonzero_index(data.qhat)
        if m_eff is None:
            raise HypothesisViolation(
                f"all {count} recentred coefficients vanish; no disk prediction"
            )
        regions.append(("T2.3", thm23_disk(data, phi.a, n, m_eff), "region-in-hull"))
        notes.append(f"weight vanishes at the fixed point; first nonzero index {m_eff}")
    else:
        if mode in ("corrected", "both"):
            regions.append(
                (
                    "P2.1-corr",
                    prop21_ellipse(data, phi.a, n, m, EllipseMode.CORRECTED),
                    "region-in-hull",
                )
            )
        if mode in ("literal", "both"):
            regions.append(
                (
                    "P2.1-lit",
                    prop21_ellipse(data, phi.a, n, m, EllipseMode.LITERAL),
                    "region-in-hull",
                )
            )
    witness = None
    psi_at_p = evaluate(psi, data.p)
    try:
        witness = thm22_zero_witness(psi_at_p, phi.a)
    except HypothesisViolation as exc:
        notes.append(f"no zero witness: {exc}")
    except SearchExhausted as exc:
        notes.append(f"zero-witness search exhausted: {exc}")
    return Prediction(tuple(regions), witness, tuple(notes))


# --- run reports ------------------------------------------------------------


@dataclass(frozen=True)
class RunReport:
    """One example pipeline run: inputs, regions, sweep, verdicts, notes."""

    example_id: str
    inputs: dict
    regions: tuple[PredictedRegion, ...]
    fov: FieldOfValues
    sweep_summary: dict
    verdicts: tuple[dict, ...] = ()
    discrepancies: tuple[str, ...] = ()
    witness: Optional[ZeroWitness] = None

    def to_json_dict(self) -> dict:
        out = {
            "example": self.example_id,
            "inputs": self.inputs,
            "regions": [r.to_json_dict() for r in self.regions],
            "sweep": self.sweep_summary,
            "verdicts": list(self.verdicts),
            "discrepancies": list(self.discrepancies),
        }
        if self.witness is not None:
            out["witness"] = self.witness.to_json_dict()
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True, indent=2) + "\n"


def _membership_dict(verdict: MembershipVerdict) -> dict:
    return {"status": verdict.status, "margin": verdict.margin}


def _sweep_summary(fov: FieldOfValues, zero: MembershipVerdict) -> dict:
    return {
        "dim": fov.dim,
        "angles": len(fov),
        "area": fov.area,
        "max_support": float(np.max(fov.support)),
        "hull_vertex_count": int(len(fov.hull_vertices)),
        "membership_zero": _membership_dict(zero),
    }


def run_example(example_id: str, N: int = 64, K: int = 720) -> RunReport:
    """Full pipeline on one registered example.

    Contractive cases sweep the recentred (lower-triangular) truncation so
    compressions are leading blocks of the matrix being swept; unimodular
    cases sweep the direct truncation and record a nested convergence curve.
    """
    if example_id not in EXAMPLES:
        raise KeyError(f"unknown example {example_id!r}; have {sorted(EXAMPLES)}")
    case = EXAMPLES[example_id]
    psi, phi = case.psi, case.phi
    inputs = {
        "example": example_id,
        "psi": weight_to_json(psi),
        "phi": map_to_json(phi),
        "dim": N,
        "angles": K,
    }
    verdicts: list[dict] = []
    regions: list[PredictedRegion] = []
    witness = None
    notes = list(case.corrections)

    if example_id in ("2.5a", "2.5b"):
        data = conjugate_to_q(psi, phi, count=16)
        op = qform_truncation(data, phi.a, N)
        fov = sweep(op.entries, K)
        if example_id == "2.5a":
            ell_corr = prop21_ellipse(data, phi.a, 1, 1, EllipseMode.CORRECTED)
            ell_lit = prop21_ellipse(data, phi.a, 1, 1, EllipseMode.LITERAL)
            regions += [ell_corr, ell_lit]
            verdicts.append(
                _verdict(
                    "P2.1-corr",
                    region_in_hull(fov, ell_corr, tol=1e-9),
                    "exact compression ellipse inside the swept hull",
                )
            )
            verdicts.append(
                _verdict(
                    "P2.1-lit",
                    region_in_hull(fov, ell_lit, tol=1e-6),
                    "printed ellipse against the swept hull, at this truncation",
                )
            )
            zero_outside_corr = not ell_corr.contains(0j)
            zero_inside_lit = ell_lit.contains(0j)
            facts = ContainmentResult(
                "region-in-hull",
                zero_outside_corr and zero_inside_lit,
                ell_corr.signed_margin(0j),
                math.pi,
                STATUS_VERIFIED
                if (zero_outside_corr and zero_inside_lit)
                else STATUS_REFUTED,
            )
            verdicts.append(
                _verdict(
                    "E2.5a",
                    facts,
                    f"0 is {'Outside' if zero_outside_corr else 'Inside'} the exact "
                    f"compression ellipse and "
                    f"{'Inside' if zero_inside_lit else 'Outside'} the printed one",
                )
            )
        else:
            disk = thm23_disk(data, phi.a, 0, 1)
            regions.append(disk)
            check = region_in_hull(fov, disk, tol=1e-6)
            verdicts.append(_verdict("T2.3", check, "predicted disk inside the swept hull"))
            verdicts.append(
                _verdict("E2.5b", check, f"disk radius {disk.radius!r} = 1/(2e)")
            )
        zero = membership(fov, 0j, tol=1e-12)
        summary = _sweep_summary(fov, zero)
    else:
        op = build_truncation(psi, phi, N)
        fov = sweep(op.entries, K)
        region = thm31_region(psi, phi)
        regions.append(region)
        check = hull_in_region(fov, region, tol=1e-8)
        theorem_claim = case.claim_ids[0]
        example_claim = case.claim_ids[1]
        verdicts.append(
            _verdict(theorem_claim, check, "swept hull inside the predicted region")
        )
        verdicts.append(
            _verdict(example_claim, check, f"region kind {region.kind}, dim {N}")
        )
        zero = membership(fov, 0j, tol=1e-12)
        summary = _sweep_summary(fov, zero)
        dims = [n for n in (16, 32, 48, 64) if n <= N] or [N]
        summary["convergence"] = convergence_curve(op, dims, K=144)
        if op.notes:
            notes.extend(op.notes)

    return RunReport(
        example_id,
        inputs,
        tuple(regions),
        fov,
        summary,
        tuple(verdicts),
        tuple(notes),
        witness,
    )


def run_all_examples(N: int = 64, K: int = 720) -> list[RunReport]:
    return [run_example(eid, N=N, K=K) for eid in sorted(EXAMPLES)]


# --- free-form verification (CLI `verify`) ----------------------------------


def verify_pipeline(
    psi: EntireSymbol,
    phi: AffineMap,
    N: int = 64,
    K: int = 720,
    mode: str = "both",
    tol: float = 1e-8,
) -> dict:
    """Build, sweep, predict and cross-check one symbol pair.

    Returns {contained, worst_margin, discrepancies, checks}; contained
    reflects every predicted region in its proper check direction.
    """
    prediction = predict_regions(psi, phi, mode=mode)
    mod = phi.a.modulus
    if 0.0 < mod < 1.0 - 1e-12:
        data = conjugate_to_q(psi, phi, count=16)
        op = qform_truncation(data, phi.a, N)
    else:
        op = build_truncation(psi, phi, N)
    fov = sweep(op.entries, K)
    checks = []
    discrepancies = list(prediction.notes)
    worst = math.inf
    contained = True
    for claim, region, direction in prediction.regions:
        results = []
        if direction in ("region-in-hull", "both"):
            results.append(region_in_hull(fov, region, tol=tol))
        if direction in ("hull-in-region", "both"):
            results.append(hull_in_region(fov, region, tol=tol))
        for res in results:
            worst = min(worst, res.worst_margin)
            contained = contained and res.contained
            checks.append(
                {"claim": claim, "region": region.to_json_dict(), **res.to_json_dict()}
            )
            if not res.contained:
                discrepancies.append(
                    f"{claim}: {res.direction} margin {res.worst_margin:.3e} "
                    f"at angle {res.worst_angle:.6f} ({res.status})"
                )
    out = {
        "contained": contained,
        "worst_margin": worst if checks else 0.0,
        "discrepancies": discrepancies,
        "checks": checks,
        "dim": N,
        "angles": K,
    }
    if prediction.witness is not None:
        out["witness"] = prediction.witness.to_json_dict()
    return out
