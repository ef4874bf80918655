"""Exact piecewise-linear Dehn twists on rectangular annuli.

The annulus between two concentric axis rectangles is split into 8
concentric bands of 16 triangles each; band j shears its inner ring by
j/8 of a full turn along the ring's perimeter parameter, so the inner
boundary returns to the identity after a full turn.  Every triangle maps
affinely with rational coefficients, giving an exact area-preserving-up-
to-isotopy model of a Dehn twist for acting on rational polygons.
"""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple, Optional, Sequence

from .geometry import (
    GeometryError,
    PolyCurve,
    RatPoint,
    orient,
    segment_crossing,
    validate_curve,
)

RINGS = 8
SIDE_PTS = 8    # perimeter parameter grid: eighths of a turn


class _Affine(NamedTuple):
    m00: Fraction
    m01: Fraction
    m10: Fraction
    m11: Fraction
    tx: Fraction
    ty: Fraction

    def apply(self, p: RatPoint) -> RatPoint:
        return RatPoint(self.m00 * p.x + self.m01 * p.y + self.tx,
                        self.m10 * p.x + self.m11 * p.y + self.ty)


def _affine_from_triangles(src, dst) -> _Affine:
    (p0, p1, p2), (q0, q1, q2) = src, dst
    ax, ay = p1.x - p0.x, p1.y - p0.y
    bx, by = p2.x - p0.x, p2.y - p0.y
    det = ax * by - ay * bx
    if det == 0:
        raise GeometryError("degenerate source triangle")
    cx, cy = q1.x - q0.x, q1.y - q0.y
    dx, dy = q2.x - q0.x, q2.y - q0.y
    # M = [c d] [a b]^{-1}
    m00 = (cx * by - dx * ay) / det
    m01 = (dx * ax - cx * bx) / det
    m10 = (cy * by - dy * ay) / det
    m11 = (dy * ax - cy * bx) / det
    tx = q0.x - (m00 * p0.x + m01 * p0.y)
    ty = q0.y - (m10 * p0.x + m11 * p0.y)
    return _Affine(m00, m01, m10, m11, tx, ty)


def _rect_point(cx: Fraction, cy: Fraction, wx: Fraction, wy: Fraction,
                t: Fraction) -> RatPoint:
    """Point on the axis rectangle of half-widths (wx, wy) at parameter t in [0,1)."""
    t = t % 1
    s = 4 * t
    k = int(s)
    f = s - k
    if k == 0:
        return RatPoint(cx - wx + 2 * wx * f, cy - wy)
    if k == 1:
        return RatPoint(cx + wx, cy - wy + 2 * wy * f)
    if k == 2:
        return RatPoint(cx + wx - 2 * wx * f, cy + wy)
    return RatPoint(cx - wx, cy + wy - 2 * wy * f)


class PLTwist:
    """One full Dehn twist supported on the annulus between two rectangles."""

    def __init__(self, center: RatPoint, inner: tuple[Fraction, Fraction],
                 outer: tuple[Fraction, Fraction], direction: int = 1):
        if direction not in (1, -1):
            raise ValueError("direction must be +-1")
        self.center = center
        self.inner = inner
        self.outer = outer
        self.direction = direction
        cx, cy = center.x, center.y
        self._rings: list[list[RatPoint]] = []
        for j in range(RINGS + 1):
            lam = Fraction(j, RINGS)
            wx = outer[0] + (inner[0] - outer[0]) * lam
            wy = outer[1] + (inner[1] - outer[1]) * lam
            ring = [_rect_point(cx, cy, wx, wy, Fraction(m, SIDE_PTS))
                    for m in range(SIDE_PTS)]
            self._rings.append(ring)
        self._ring_dims = []
        for j in range(RINGS + 1):
            lam = Fraction(j, RINGS)
            self._ring_dims.append((outer[0] + (inner[0] - outer[0]) * lam,
                                    outer[1] + (inner[1] - outer[1]) * lam))
        self._cells: list[tuple[tuple[RatPoint, RatPoint, RatPoint], _Affine]] = []
        for j in range(RINGS):
            a = self._rings[j]
            b = self._rings[j + 1]
            wxa, wya = self._ring_dims[j]
            wxb, wyb = self._ring_dims[j + 1]
            for m in range(SIDE_PTS):
                t_m = Fraction(m, SIDE_PTS)
                t_m1 = Fraction(m + 1, SIDE_PTS)
                shift_a = Fraction(direction * j, SIDE_PTS)
                shift_b = Fraction(direction * (j + 1), SIDE_PTS)
                ia = lambda t, s=shift_a, wx=wxa, wy=wya: _rect_point(cx, cy, wx, wy, t + s)
                ib = lambda t, s=shift_b, wx=wxb, wy=wyb: _rect_point(cx, cy, wx, wy, t + s)
                # the quad diagonal must map to a radial edge, which depends
                # on the shear direction
                if direction > 0:
                    tris = (((a[m], a[(m + 1) % SIDE_PTS], b[m]),
                             (ia(t_m), ia(t_m1), ib(t_m))),
                            ((a[(m + 1) % SIDE_PTS], b[(m + 1) % SIDE_PTS], b[m]),
                             (ia(t_m1), ib(t_m1), ib(t_m))))
                else:
                    tris = (((a[m], a[(m + 1) % SIDE_PTS], b[(m + 1) % SIDE_PTS]),
                             (ia(t_m), ia(t_m1), ib(t_m1))),
                            ((a[m], b[(m + 1) % SIDE_PTS], b[m]),
                             (ia(t_m), ib(t_m1), ib(t_m))))
                for src, dst in tris:
                    self._cells.append((src, _affine_from_triangles(src, dst)))
        self._grid_segs = self._collect_grid_segments()

    def _collect_grid_segments(self):
        segs = set()
        for tri, _ in self._cells:
            for i in range(3):
                a, b = tri[i], tri[(i + 1) % 3]
                segs.add((a, b) if (a.x, a.y) <= (b.x, b.y) else (b, a))
        return list(segs)

    def _inside_annulus_strict(self, p: RatPoint) -> Optional[int]:
        """Index of the cell containing p strictly inside the annulus, else None."""
        dx, dy = abs(p.x - self.center.x), abs(p.y - self.center.y)
        # quick reject: inside inner rectangle or outside outer rectangle
        if dx <= self.inner[0] and dy <= self.inner[1]:
            return None
        if dx >= self.outer[0] or dy >= self.outer[1]:
            return None
        for i, (tri, _) in enumerate(self._cells):
            if _in_triangle(p, tri):
                return i
        return None

    def apply_point(self, p: RatPoint) -> RatPoint:
        i = self._inside_annulus_strict(p)
        if i is None:
            return p
        return self._cells[i][1].apply(p)

    def apply_curve(self, c: PolyCurve) -> PolyCurve:
        """Exact image of a polygon; edges are split at all cell boundaries."""
        from .geometry import point_on_segment
        grid_points = {p for seg in self._grid_segs for p in seg}
        out: list[RatPoint] = []
        for (p, q) in c.edges():
            cuts = [Fraction(0), Fraction(1)]
            for (u, v) in self._grid_segs:
                x = _crossing_param(p, q, u, v)
                if x is not None:
                    cuts.append(x)
            # edges collinear with grid segments must split at grid vertices
            for g in grid_points:
                if point_on_segment(g, p, q):
                    if q.x != p.x:
                        cuts.append((g.x - p.x) / (q.x - p.x))
                    else:
                        cuts.append((g.y - p.y) / (q.y - p.y))
            cuts = sorted(set(cuts))
            for k in range(len(cuts) - 1):
                t0, t1 = cuts[k], cuts[k + 1]
                mid = RatPoint(p.x + (t0 + t1) / 2 * (q.x - p.x),
                               p.y + (t0 + t1) / 2 * (q.y - p.y))
                a = RatPoint(p.x + t0 * (q.x - p.x), p.y + t0 * (q.y - p.y))
                cell = self._inside_annulus_strict(mid)
                img = a if cell is None else self._cells[cell][1].apply(a)
                if not out or out[-1] != img:
                    out.append(img)
        cleaned = _clean_cycle(out)
        return validate_curve(cleaned)

    def inverse(self) -> "PLTwist":
        return PLTwist(self.center, self.inner, self.outer, -self.direction)


def _in_triangle(p: RatPoint, tri) -> bool:
    a, b, c = tri
    s = orient(a, b, c)
    if s == 0:
        return False
    return (orient(a, b, p) * s >= 0 and orient(b, c, p) * s >= 0
            and orient(c, a, p) * s >= 0)


def _crossing_param(p, q, u, v) -> Optional[Fraction]:
    """Parameter of [p,q] at its crossing with [u,v]; endpoint touches included."""
    d1 = (q.x - p.x) * (v.y - u.y) - (q.y - p.y) * (v.x - u.x)
    if d1 == 0:
        return None
    t = ((u.x - p.x) * (v.y - u.y) - (u.y - p.y) * (v.x - u.x)) / d1
    if not (0 <= t <= 1):
        return None
    if v.x != u.x:
        s = ((p.x + t * (q.x - p.x)) - u.x) / (v.x - u.x)
    else:
        s = ((p.y + t * (q.y - p.y)) - u.y) / (v.y - u.y)
    if not (0 <= s <= 1):
        return None
    return t


def _clean_cycle(pts: list[RatPoint]) -> list[RatPoint]:
    out = []
    for p in pts:
        if not out or out[-1] != p:
            out.append(p)
    while len(out) > 1 and out[0] == out[-1]:
        out.pop()
    i = 0
    while len(out) > 3 and i < len(out):
        n = len(out)
        if orient(out[(i - 1) % n], out[i], out[(i + 1) % n]) == 0:
            del out[i]
            i = max(i - 1, 0)
        else:
            i += 1
    return out
