"""Deterministic SVG rendering of plane-curve scenes.

A Scene is a flat list of drawable elements over a rational bounding
box: curve segments and rays (weight-styled strokes, weight labels when
the weight exceeds 1), divisor chips (filled for positive, hollow for
negative, integer label when |coeff| != 1) and tangency markers.  Rays
are truncated exactly at the bounding box before they reach the
serializer, so the emitted coordinates stay finite.  All geometry is
exact until the final write, where coordinates are fixed to six
decimals; identical scenes serialize byte-identically.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .plane_curve import PlaneCurve, vadd, smul

Vec2 = Tuple[Fraction, Fraction]

STYLES: Dict[str, str] = {
    "curve": "stroke:#1a1a8c;fill:none;stroke-linecap:round",
    "overlay": "stroke:#c23b22;fill:none;stroke-linecap:round",
    "chip+": "fill:#111111;stroke:none",
    "chip-": "fill:#ffffff;stroke:#111111;stroke-width:1.5",
    "marker": "fill:none;stroke:#2e8b57;stroke-width:2",
    "label": "font-family:monospace;font-size:10px;fill:#333333",
}


@dataclass
class Scene:
    """Drawable elements over a rational bounding box (xlo, xhi, ylo, yhi)."""

    bbox: Tuple[Fraction, Fraction, Fraction, Fraction]
    elements: List[tuple] = field(default_factory=list)
    scale: int = 40

    def add_segment(self, p: Vec2, q: Vec2, weight: int = 1, style: str = "curve"):
        self.elements.append(("seg", p, q, int(weight), style))

    def add_ray(self, p: Vec2, d, weight: int = 1, style: str = "curve"):
        q = _clip_ray(p, d, self.bbox)
        if q is not None and q != p:
            self.elements.append(("seg", p, q, int(weight), style))

    def add_chip(self, p: Vec2, coeff: int):
        self.elements.append(("chip", p, int(coeff)))

    def add_marker(self, p: Vec2):
        self.elements.append(("marker", p))


def _clip_ray(p: Vec2, d, bbox) -> Optional[Vec2]:
    """Largest t >= 0 with p + t d inside bbox; None if p is outside."""
    xlo, xhi, ylo, yhi = bbox
    if not (xlo <= p[0] <= xhi and ylo <= p[1] <= yhi):
        return None
    t_max: Optional[Fraction] = None
    for coord, delta, lo, hi in ((p[0], d[0], xlo, xhi), (p[1], d[1], ylo, yhi)):
        if delta == 0:
            continue
        wall = hi if delta > 0 else lo
        t = Fraction(wall - coord, delta)
        t_max = t if t_max is None else min(t_max, t)
    if t_max is None or t_max <= 0:
        return None
    return vadd(p, smul(t_max, d))


def scene_of_curve(
    C: PlaneCurve,
    margin: Fraction = Fraction(1),
    bbox=None,
    style: str = "curve",
    scene: Optional[Scene] = None,
) -> Scene:
    """Scene of a curve; pass an existing scene to overlay."""
    if scene is None:
        if bbox is None:
            xs = [v[0] for v in C.vertices] or [Fraction(0)]
            ys = [v[1] for v in C.vertices] or [Fraction(0)]
            bbox = (
                min(xs) - margin,
                max(xs) + margin,
                min(ys) - margin,
                max(ys) + margin,
            )
        scene = Scene(bbox)
    for e in sorted(C.edges, key=lambda e: (e.kind, e.p, e.d)):
        if e.kind == "segment":
            scene.add_segment(e.p, vadd(e.p, smul(e.length, e.d)), e.weight, style)
        else:
            scene.add_ray(e.p, e.d, e.weight, style)
    return scene


def _fmt(v, sx=1, ox=0) -> str:
    return f"{float(v) * sx + ox:.6f}"


def render_svg(scene: Scene) -> str:
    """Serialize a scene; output is a pure function of the scene."""
    xlo, xhi, ylo, yhi = scene.bbox
    s = scene.scale
    w = float((xhi - xlo) * s)
    h = float((yhi - ylo) * s)

    def X(p) -> str:
        return _fmt((p[0] - xlo) * s)

    def Y(p) -> str:
        # svg y grows downward
        return _fmt((yhi - p[1]) * s)

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w:.6f}"'
        f' height="{h:.6f}" viewBox="0 0 {w:.6f} {h:.6f}">',
    ]
    for el in scene.elements:
        if el[0] == "seg":
            _, p, q, weight, style = el
            sw = 1.5 + 0.9 * (weight - 1)
            out.append(
                f'<line x1="{X(p)}" y1="{Y(p)}" x2="{X(q)}" y2="{Y(q)}"'
                f' style="{STYLES[style]};stroke-width:{sw:.6f}"/>'
            )
            if weight > 1:
                mid = smul(Fraction(1, 2), vadd(p, q))
                out.append(
                    f'<text x="{X(mid)}" y="{Y(mid)}" dx="4" dy="-4"'
                    f' style="{STYLES["label"]}">{weight}</text>'
                )
        elif el[0] == "chip":
            _, p, coeff = el
            style = STYLES["chip+"] if coeff > 0 else STYLES["chip-"]
            out.append(
                f'<circle cx="{X(p)}" cy="{Y(p)}" r="4" style="{style}"/>'
            )
            if abs(coeff) != 1:
                out.append(
                    f'<text x="{X(p)}" y="{Y(p)}" dx="6" dy="-6"'
                    f' style="{STYLES["label"]}">{coeff}</text>'
                )
        elif el[0] == "marker":
            _, p = el
            out.append(
                f'<circle cx="{X(p)}" cy="{Y(p)}" r="7" style="{STYLES["marker"]}"/>'
            )
    out.append("</svg>")
    return "\n".join(out) + "\n"
