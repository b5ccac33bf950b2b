"""Deterministic SVG rendering of sweeps and predicted regions.

Output is assembled from formatted strings only (no timestamps, no dict
iteration of unordered inputs), so identical reports render to identical
bytes.  Coordinates use mathematical orientation: the vertical axis grows
upward, which means one explicit sign flip when mapping to SVG pixels.
"""

from __future__ import annotations

import numpy as np

from .numrange import FieldOfValues
from .regions import DiskPlusOrbitRegion, PredictedRegion, SegmentRegion

_PALETTE = ("#d62728", "#2ca02c", "#9467bd", "#8c564b", "#e377c2")
_DASHES = ("", "6 3", "2 3", "8 3 2 3", "4 2")
_HULL_COLOR = "#1f77b4"


class _Frame:
    """Similarity transform from math coordinates to pixel coordinates."""

    def __init__(self, points: np.ndarray, size: int, pad: float):
        xs, ys = points.real, points.imag
        xmin, xmax = float(np.min(xs)), float(np.max(xs))
        ymin, ymax = float(np.min(ys)), float(np.max(ys))
        span = max(xmax - xmin, ymax - ymin, 1e-9)
        pad_abs = pad * span
        span += 2 * pad_abs
        self.scale = size / span
        self.x0 = 0.5 * (xmin + xmax) - 0.5 * span
        self.y1 = 0.5 * (ymin + ymax) + 0.5 * span
        self.size = size

    def to_px(self, w: complex) -> tuple[float, float]:
        return ((w.real - self.x0) * self.scale, (self.y1 - w.imag) * self.scale)

    def fmt(self, w: complex) -> str:
        x, y = self.to_px(w)
        return f"{x:.6f},{y:.6f}"


def _polygon(frame: _Frame, points, style: str) -> str:
    coords = " ".join(frame.fmt(complex(p)) for p in points)
    return f'<polygon points="{coords}" {style}/>'


def _polyline_closed(frame: _Frame, points, style: str) -> str:
    coords = " ".join(frame.fmt(complex(p)) for p in points)
    return f'<polygon points="{coords}" fill="none" {style}/>'


def _region_element(frame: _Frame, region: PredictedRegion, color: str, dash: str) -> list[str]:
    stroke = f'stroke="{color}" stroke-width="1.5"'
    if dash:
        stroke += f' stroke-dasharray="{dash}"'
    out = []
    if isinstance(region, SegmentRegion):
        a, b = frame.to_px(region.z_from), frame.to_px(region.z_to)
        out.append(
            f'<line x1="{a[0]:.6f}" y1="{a[1]:.6f}" x2="{b[0]:.6f}" y2="{b[1]:.6f}" {stroke}/>'
        )
    else:
        out.append(_polyline_closed(frame, region.boundary_points(256), stroke))
    if isinstance(region, DiskPlusOrbitRegion):
        for p in region.orbit_points(12):
            x, y = frame.to_px(complex(p))
            out.append(f'<circle cx="{x:.6f}" cy="{y:.6f}" r="2.5" fill="{color}"/>')
    return out


def _axes(frame: _Frame) -> list[str]:
    out = []
    style = 'stroke="#cccccc" stroke-width="0.75"'
    x0, _ = frame.to_px(0j)
    if 0.0 <= x0 <= frame.size:
        out.append(f'<line x1="{x0:.6f}" y1="0" x2="{x0:.6f}" y2="{frame.size}" {style}/>')
    _, y0 = frame.to_px(0j)
    if 0.0 <= y0 <= frame.size:
        out.append(f'<line x1="0" y1="{y0:.6f}" x2="{frame.size}" y2="{y0:.6f}" {style}/>')
    return out


def _origin_marker(frame: _Frame) -> list[str]:
    x, y = frame.to_px(0j)
    s = 5.0
    style = 'stroke="#000000" stroke-width="1.25"'
    return [
        f'<line x1="{x - s:.6f}" y1="{y:.6f}" x2="{x + s:.6f}" y2="{y:.6f}" {style}/>',
        f'<line x1="{x:.6f}" y1="{y - s:.6f}" x2="{x:.6f}" y2="{y + s:.6f}" {style}/>',
        f'<circle cx="{x:.6f}" cy="{y:.6f}" r="2.0" fill="none" {style}/>',
    ]


def render_svg(
    fov: FieldOfValues,
    regions=(),
    labels=(),
    size: int = 640,
    pad: float = 0.08,
) -> str:
    """SVG of the swept hull, predicted regions, and the origin.

    Raises ValueError on an empty sweep.  Regions get distinct stroke
    colors and dash patterns in input order; labels (one per region plus
    an optional title first) print as a monospace legend.
    """
    if len(fov) == 0 or fov.hull_vertices.size == 0:
        raise ValueError("empty sweep: nothing to render")
    cloud = [np.asarray(fov.hull_vertices, dtype=np.complex128), np.zeros(1, np.complex128)]
    for region in regions:
        cloud.append(np.asarray(region.boundary_points(64), dtype=np.complex128))
    frame = _Frame(np.concatenate(cloud), size, pad)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {size} {size}" '
        f'width="{size}" height="{size}">',
        f'<rect x="0" y="0" width="{size}" height="{size}" fill="#ffffff"/>',
    ]
    parts.extend(_axes(frame))
    hull_style = (
        f'fill="{_HULL_COLOR}" fill-opacity="0.12" stroke="{_HULL_COLOR}" stroke-width="1.5"'
    )
    parts.append(_polygon(frame, fov.hull_vertices, hull_style))
    for i, region in enumerate(regions):
        color = _PALETTE[i % len(_PALETTE)]
        dash = _DASHES[i % len(_DASHES)]
        parts.extend(_region_element(frame, region, color, dash))
    parts.extend(_origin_marker(frame))
    y_text = 16
    for i, label in enumerate(labels):
        color = "#000000" if i == 0 and len(labels) > len(regions) else None
        if color is None:
            j = i - (len(labels) - len(regions))
            color = _PALETTE[j % len(_PALETTE)] if 0 <= j < len(regions) else "#000000"
        parts.append(
            f'<text x="8" y="{y_text}" font-family="monospace" font-size="12" '
            f'fill="{color}">{_escape(label)}</text>'
        )
        y_text += 16
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _escape(text: str) -> str:
    return (
        text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
    )


def render_report(report, size: int = 640) -> str:
    """Render a RunReport: hull, all predicted regions, legend of provenance."""
    labels = [f"example {report.example_id}: dim {report.fov.dim}, {len(report.fov)} angles"]
    labels += [r.provenance or r.kind for r in report.regions]
    return render_svg(report.fov, report.regions, labels, size=size)
