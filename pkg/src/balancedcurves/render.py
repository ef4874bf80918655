"""Deterministic SVG and DOT emission.

Coordinates are rendered as exact integer microunits of the viewBox, so
the same input always produces byte-identical output.  Faces are shaded
by area with bigons highlighted; dual trees mark the central vertex.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional

from .arrangement import Arrangement, DualTree
from .curveio import format_fraction
from .geometry import PolyCurve, RatPoint

SCALE = 1000


def _micro(x: Fraction) -> str:
    v = int(x * SCALE * 1000)
    whole, frac = divmod(v, 1000)
    return f"{whole}.{frac:03d}"


def _poly_path(points) -> str:
    parts = []
    for i, p in enumerate(points):
        cmd = "M" if i == 0 else "L"
        parts.append(f"{cmd}{_micro(p.x)},{_micro(p.y)}")
    parts.append("Z")
    return " ".join(parts)


def _gray(area: Fraction) -> str:
    # darker for smaller faces, clamped to a readable band
    level = 235 - int(min(Fraction(1), area * 2) * 110)
    return f"rgb({level},{level},{level})"


def render_arrangement_svg(arr: Arrangement, highlight_bigons: bool = True) -> str:
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {SCALE} {SCALE}">',
        f'<rect x="0" y="0" width="{SCALE}" height="{SCALE}" fill="white"/>',
    ]
    for f in sorted(arr.faces, key=lambda f: (-f.area, f.id)):
        if f.contains_infinity:
            continue
        fill = _gray(f.area)
        stroke = "#cc3333" if (highlight_bigons and f.is_bigon()) else "none"
        for ci, cyc in enumerate(f.cycles):
            pts = arr.cycle_points(cyc)
            lines.append(f'<path d="{_poly_path(pts)}" fill="{fill}" '
                         f'stroke="{stroke}" stroke-width="2" fill-rule="evenodd"/>')
        rep = arr.representative_point(f)
        lines.append(f'<text x="{_micro(rep.x)}" y="{_micro(rep.y)}" font-size="18" '
                     f'text-anchor="middle">{format_fraction(f.area)}</text>')
    for h in range(0, len(arr.he_origin), 2):
        a = arr.node_points[arr.he_origin[h]]
        b = arr.node_points[arr.he_head[h]]
        color = "#000000" if arr.he_label[h] == "A" else "#2244bb"
        lines.append(f'<line x1="{_micro(a.x)}" y1="{_micro(a.y)}" '
                     f'x2="{_micro(b.x)}" y2="{_micro(b.y)}" '
                     f'stroke="{color}" stroke-width="1.5"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def render_curves_svg(curves, labels: Optional[list[str]] = None) -> str:
    palette = ["#000000", "#2244bb", "#cc3333", "#118833"]
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {SCALE} {SCALE}">',
        f'<rect x="0" y="0" width="{SCALE}" height="{SCALE}" fill="white"/>',
    ]
    for i, c in enumerate(curves):
        color = palette[i % len(palette)]
        lines.append(f'<path d="{_poly_path(c.points)}" fill="none" '
                     f'stroke="{color}" stroke-width="2"/>')
        if labels and i < len(labels):
            p0 = c.points[0]
            lines.append(f'<text x="{_micro(p0.x)}" y="{_micro(p0.y)}" '
                         f'font-size="18">{labels[i]}</text>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def render_witness_svg(w) -> str:
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {SCALE} {SCALE}">',
        f'<rect x="0" y="0" width="{SCALE}" height="{SCALE}" fill="white"/>',
    ]
    for i, h in enumerate(w.holes):
        lines.append(f'<path d="{_poly_path(h.points)}" fill="#dddddd" '
                     f'stroke="#000000" stroke-width="2"/>')
        c = w.hole_point(i)
        lines.append(f'<text x="{_micro(c.x)}" y="{_micro(c.y)}" font-size="20" '
                     f'text-anchor="middle">A{i + 1} ({format_fraction(w.holes[i].area)})</text>')
    for cut in w.cut_arcs:
        a, b = cut.points[0], cut.points[-1]
        lines.append(f'<line x1="{_micro(a.x)}" y1="{_micro(a.y)}" '
                     f'x2="{_micro(b.x)}" y2="{_micro(b.y)}" '
                     f'stroke="#cc3333" stroke-width="2" stroke-dasharray="8,4"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def render_dual_tree_dot(t: DualTree, arr: Optional[Arrangement] = None) -> str:
    lines = ["digraph dualtree {"]
    for v in sorted(t.vertices):
        attrs = []
        if arr is not None:
            attrs.append(f'label="f{v} ({format_fraction(arr.faces[v].area)})"')
        if t.central == v:
            attrs.append("shape=doublecircle")
        lines.append(f'  n{v} [{", ".join(attrs)}];' if attrs else f"  n{v};")
    for i, (a, b, comp) in enumerate(t.edges):
        if i in t.directions:
            u, v = t.directions[i]
            lines.append(f'  n{u} -> n{v} [label="b{comp}"];')
        else:
            lines.append(f'  n{a} -> n{b} [dir=none, label="b{comp}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
