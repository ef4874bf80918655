"""Exact rational plane geometry on the measured-sphere model.

The sphere is the one-point compactification of the open unit square
(0,1)^2 with Lebesgue measure; the point at infinity carries no mass and
no curve may touch the square boundary.  All coordinates are
``fractions.Fraction``; every predicate is exact and deterministic.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, NamedTuple, Optional, Sequence, Union


class GeometryError(Exception):
    """Base class for geometric domain errors."""


class NotSimple(GeometryError):
    """A polyline or polygon intersects itself; carries a witness segment pair."""


class DegenerateVertex(GeometryError):
    """Repeated point or collinear consecutive triple."""


class OutOfDomain(GeometryError):
    """A point does not lie strictly inside the unit square."""


class InvalidLocator(GeometryError):
    """An arc locator is out of range or the two locators coincide."""


class NonGenericInput(GeometryError):
    """Configuration is not generic (tangency, overlap or shared vertex)."""


class RatPoint(NamedTuple):
    x: Fraction
    y: Fraction


def pt(x, y) -> RatPoint:
    return RatPoint(Fraction(x), Fraction(y))


ZERO = Fraction(0)
ONE = Fraction(1)
HALF = Fraction(1, 2)


def orient(a: RatPoint, b: RatPoint, c: RatPoint) -> int:
    """Sign of the signed area of triangle (a, b, c): +1 ccw, -1 cw, 0 collinear.

    A float filter decides clear cases; near-degenerate ones fall back to
    exact rational arithmetic.  The error threshold is sound for the
    coordinate range used here (unit square with small excursions).
    """
    ax, ay = float(a.x), float(a.y)
    det = ((float(b.x) - ax) * (float(c.y) - ay)
           - (float(b.y) - ay) * (float(c.x) - ax))
    if det > 1e-12:
        return 1
    if det < -1e-12:
        return -1
    d = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
    if d > 0:
        return 1
    if d < 0:
        return -1
    return 0


def cross(o: RatPoint, a: RatPoint, b: RatPoint) -> Fraction:
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)


def point_on_segment(p: RatPoint, a: RatPoint, b: RatPoint) -> bool:
    """True iff p lies on the closed segment [a, b]."""
    px, py = float(p.x), float(p.y)
    if (px + 1e-9 < min(float(a.x), float(b.x)) or px - 1e-9 > max(float(a.x), float(b.x))
            or py + 1e-9 < min(float(a.y), float(b.y)) or py - 1e-9 > max(float(a.y), float(b.y))):
        return False
    if orient(a, b, p) != 0:
        return False
    return (min(a.x, b.x) <= p.x <= max(a.x, b.x)
            and min(a.y, b.y) <= p.y <= max(a.y, b.y))


def segment_crossing(p1: RatPoint, p2: RatPoint, q1: RatPoint, q2: RatPoint) -> Optional[RatPoint]:
    """Proper interior crossing point of two segments, or None.

    Raises NonGenericInput on any incidence that is not a proper crossing
    (endpoint on the other segment, collinear overlap).
    """
    # float bounding-box rejection (with margin) before the exact predicates
    p1x, p1y, p2x, p2y = float(p1.x), float(p1.y), float(p2.x), float(p2.y)
    q1x, q1y, q2x, q2y = float(q1.x), float(q1.y), float(q2.x), float(q2.y)
    eps = 1e-9
    if (max(p1x, p2x) + eps < min(q1x, q2x) or max(q1x, q2x) + eps < min(p1x, p2x)
            or max(p1y, p2y) + eps < min(q1y, q2y) or max(q1y, q2y) + eps < min(p1y, p2y)):
        return None
    o1 = orient(p1, p2, q1)
    o2 = orient(p1, p2, q2)
    o3 = orient(q1, q2, p1)
    o4 = orient(q1, q2, p2)
    if o1 != 0 and o2 != 0 and o3 != 0 and o4 != 0:
        if o1 != o2 and o3 != o4:
            # Solve p1 + t (p2-p1) on the supporting line of q.
            denom = (p2.x - p1.x) * (q2.y - q1.y) - (p2.y - p1.y) * (q2.x - q1.x)
            t = ((q1.x - p1.x) * (q2.y - q1.y) - (q1.y - p1.y) * (q2.x - q1.x)) / denom
            return RatPoint(p1.x + t * (p2.x - p1.x), p1.y + t * (p2.y - p1.y))
        return None
    # Some orientation vanished: decide whether the degeneracy is real.
    for p, a, b in ((q1, p1, p2), (q2, p1, p2), (p1, q1, q2), (p2, q1, q2)):
        if point_on_segment(p, a, b):
            raise NonGenericInput(f"point {p} lies on segment [{a}, {b}]")
    return None


def shoelace_twice(points: Sequence[RatPoint]) -> Fraction:
    """Twice the signed area of the closed polygon through `points`."""
    total = ZERO
    n = len(points)
    for i in range(n):
        a = points[i]
        b = points[(i + 1) % n]
        total += a.x * b.y - b.x * a.y
    return total


def _check_interior(points: Iterable[RatPoint]) -> None:
    for p in points:
        if not (ZERO < p.x < ONE and ZERO < p.y < ONE):
            raise OutOfDomain(f"point {p} not strictly inside the unit square")


def _check_simple_chain(points: Sequence[RatPoint], closed: bool) -> None:
    """Raise NotSimple on any improper contact between chain segments."""
    n = len(points)
    m = n if closed else n - 1
    segs = [(points[i], points[(i + 1) % n]) for i in range(m)]
    boxes = seg_boxes(segs)
    for i in range(m):
        bi = boxes[i]
        for j in range(i + 1, m):
            adjacent = (j == i + 1) or (closed and i == 0 and j == m - 1)
            bj = boxes[j]
            if not adjacent and (bi[0] > bj[1] or bi[1] < bj[0]
                                 or bi[2] > bj[3] or bi[3] < bj[2]):
                continue
            a, b = segs[i]
            c, d = segs[j]
            if adjacent:
                # Consecutive segments share one endpoint; they double back
                # exactly when a far endpoint lands on the other segment.
                if j == i + 1:
                    far1, seg1, far2, seg2 = d, (a, b), a, (c, d)
                else:
                    far1, seg1, far2, seg2 = c, (a, b), b, (c, d)
                if point_on_segment(far1, *seg1) or point_on_segment(far2, *seg2):
                    raise NotSimple(f"segments {i} and {j} double back")
                continue
            try:
                x = segment_crossing(a, b, c, d)
            except NonGenericInput:
                raise NotSimple(f"segments {i} and {j} touch") from None
            if x is not None:
                raise NotSimple(f"segments {i} and {j} cross at {x}")


class PolyCurve:
    """Simple closed PL curve with rational vertices, positively oriented."""

    __slots__ = ("points", "_area2")

    def __init__(self, points: Sequence[RatPoint], _area2: Optional[Fraction] = None):
        self.points = tuple(points)
        self._area2 = shoelace_twice(self.points) if _area2 is None else _area2

    def __len__(self) -> int:
        return len(self.points)

    def __eq__(self, other) -> bool:
        return isinstance(other, PolyCurve) and self.points == other.points

    def __hash__(self) -> int:
        return hash(self.points)

    def __repr__(self) -> str:
        return f"PolyCurve({len(self.points)} vertices, area {self.area})"

    @property
    def area(self) -> Fraction:
        return self._area2 / 2

    def edges(self) -> Iterator[tuple[RatPoint, RatPoint]]:
        pts = self.points
        n = len(pts)
        for i in range(n):
            yield pts[i], pts[(i + 1) % n]

    def edge(self, i: int) -> tuple[RatPoint, RatPoint]:
        pts = self.points
        return pts[i % len(pts)], pts[(i + 1) % len(pts)]

    def contains_point(self, q: RatPoint) -> bool:
        """Strict interior test by crossing parity; q must not lie on the curve."""
        return point_in_polygon(q, self.points)


class ArcLocator(NamedTuple):
    """Position on a host curve: a point on edge `edge_index` at `parameter` in [0,1)."""
    edge_index: int
    parameter: Fraction


class PolyArc:
    """Simple open PL arc; optionally hosted on a curve between two locators."""

    __slots__ = ("points", "host")

    def __init__(self, points: Sequence[RatPoint],
                 host: Optional[tuple[PolyCurve, ArcLocator, ArcLocator]] = None,
                 _skip_check: bool = False):
        pts = tuple(points)
        if len(pts) < 2:
            raise DegenerateVertex("an arc needs at least 2 points")
        if not _skip_check:
            if len(set(pts)) != len(pts):
                raise DegenerateVertex("repeated point in arc")
            _check_simple_chain(pts, closed=False)
        self.points = pts
        self.host = host

    def __len__(self) -> int:
        return len(self.points)

    def __eq__(self, other) -> bool:
        return isinstance(other, PolyArc) and self.points == other.points

    def __hash__(self) -> int:
        return hash(self.points)

    def __repr__(self) -> str:
        return f"PolyArc({len(self.points)} vertices)"

    def edges(self) -> Iterator[tuple[RatPoint, RatPoint]]:
        pts = self.points
        for i in range(len(pts) - 1):
            yield pts[i], pts[i + 1]

    @property
    def endpoints(self) -> tuple[RatPoint, RatPoint]:
        return self.points[0], self.points[-1]


CurveOrArc = Union[PolyCurve, PolyArc]


def validate_curve(points: Sequence[RatPoint]) -> PolyCurve:
    """Build a PolyCurve, reorienting to positive orientation if needed.

    Raises NotSimple, DegenerateVertex or OutOfDomain.
    """
    pts = [RatPoint(Fraction(p[0]), Fraction(p[1])) for p in points]
    if len(pts) < 3:
        raise DegenerateVertex("a curve needs at least 3 points")
    if len(set(pts)) != len(pts):
        raise DegenerateVertex("repeated point")
    _check_interior(pts)
    n = len(pts)
    for i in range(n):
        if orient(pts[i - 1], pts[i], pts[(i + 1) % n]) == 0:
            raise DegenerateVertex(f"collinear triple at vertex {i}")
    _check_simple_chain(pts, closed=True)
    a2 = shoelace_twice(pts)
    if a2 < 0:
        pts.reverse()
        a2 = -a2
    return PolyCurve(pts, _area2=a2)


def enclosed_area(c: PolyCurve) -> Fraction:
    """Exact area of the bounded complementary component of the curve."""
    return c.area


def point_in_polygon(q: RatPoint, poly: Sequence[RatPoint]) -> bool:
    """Crossing-parity interior test; exact, q assumed off the boundary."""
    inside = False
    n = len(poly)
    for i in range(n):
        a = poly[i]
        b = poly[(i + 1) % n]
        if (a.y > q.y) != (b.y > q.y):
            # x coordinate of the edge at height q.y
            xq = a.x + (q.y - a.y) * (b.x - a.x) / (b.y - a.y)
            if q.x < xq:
                inside = not inside
    return inside


_BOX_MARGIN = 1e-9


def seg_boxes(segs: Sequence[tuple[RatPoint, RatPoint]]) -> list[tuple[float, float, float, float]]:
    """Conservative float bounding boxes for a segment list.

    The margin absorbs float conversion error, so a reject is always
    sound; survivors go through the exact predicates.
    """
    out = []
    for (a, b) in segs:
        ax, ay, bx, by = float(a.x), float(a.y), float(b.x), float(b.y)
        out.append((min(ax, bx) - _BOX_MARGIN, max(ax, bx) + _BOX_MARGIN,
                    min(ay, by) - _BOX_MARGIN, max(ay, by) + _BOX_MARGIN))
    return out


def crossings_between(segs_a: Sequence[tuple[RatPoint, RatPoint]],
                      segs_b: Sequence[tuple[RatPoint, RatPoint]]) -> list[RatPoint]:
    """All proper crossings between two segment families (exact).

    Raises NonGenericInput on improper contact.  Uses a float box
    prefilter before the exact tests.
    """
    boxes_b = seg_boxes(segs_b)
    pts: list[RatPoint] = []
    for (p1, p2) in segs_a:
        ax, ay, bx, by = float(p1.x), float(p1.y), float(p2.x), float(p2.y)
        qx0, qx1 = min(ax, bx) - _BOX_MARGIN, max(ax, bx) + _BOX_MARGIN
        qy0, qy1 = min(ay, by) - _BOX_MARGIN, max(ay, by) + _BOX_MARGIN
        for (box, (q1, q2)) in zip(boxes_b, segs_b):
            if box[0] > qx1 or box[1] < qx0 or box[2] > qy1 or box[3] < qy0:
                continue
            x = segment_crossing(p1, p2, q1, q2)
            if x is not None:
                pts.append(x)
    return pts


class PairStatus(NamedTuple):
    """Transversality status of a pair of curves/arcs.

    kind is one of "disjoint", "transverse", "nongeneric".  For
    "transverse", `points` holds the proper interior crossings sorted by
    coordinates; for "nongeneric", `witness` describes the first
    degeneracy found.
    """
    kind: str
    points: tuple[RatPoint, ...] = ()
    witness: Optional[str] = None

    @property
    def generic(self) -> bool:
        return self.kind in ("disjoint", "transverse")


def _segments_of(obj: CurveOrArc) -> list[tuple[RatPoint, RatPoint]]:
    return list(obj.edges())


def pair_status(a: CurveOrArc, b: CurveOrArc) -> PairStatus:
    """Classify a pair as disjoint, transverse (with crossings), or non-generic."""
    try:
        pts = crossings_between(_segments_of(a), _segments_of(b))
    except NonGenericInput as e:
        return PairStatus("nongeneric", witness=str(e))
    if not pts:
        return PairStatus("disjoint")
    uniq = sorted(set(pts))
    if len(uniq) != len(pts):
        # A crossing shared by two segment pairs means a vertex hit.
        return PairStatus("nongeneric", witness="coincident crossing points")
    return PairStatus("transverse", points=tuple(uniq))


def locator_point(c: PolyCurve, loc: ArcLocator) -> RatPoint:
    n = len(c.points)
    if not (0 <= loc.edge_index < n):
        raise InvalidLocator(f"edge index {loc.edge_index} out of range")
    t = Fraction(loc.parameter)
    if not (ZERO <= t < ONE):
        raise InvalidLocator(f"parameter {t} not in [0,1)")
    p, q = c.edge(loc.edge_index)
    return RatPoint(p.x + t * (q.x - p.x), p.y + t * (q.y - p.y))


def subarc(c: PolyCurve, start: ArcLocator, end: ArcLocator) -> PolyArc:
    """Hosted arc traversing c positively from `start` to `end`."""
    p0 = locator_point(c, start)
    p1 = locator_point(c, end)
    if p0 == p1:
        raise InvalidLocator("locators coincide")
    n = len(c.points)
    pts = [p0]
    if start.edge_index == end.edge_index and start.parameter < end.parameter:
        pts.append(p1)
    else:
        i = (start.edge_index + 1) % n
        # walk vertices positively until the edge carrying `end`
        while True:
            v = c.points[i]
            if v != pts[-1]:
                pts.append(v)
            if i == end.edge_index:
                break
            i = (i + 1) % n
        if p1 != pts[-1]:
            pts.append(p1)
    return PolyArc(pts, host=(c, start, end), _skip_check=True)


def squared_distance(p: RatPoint, q: RatPoint) -> Fraction:
    dx = p.x - q.x
    dy = p.y - q.y
    return dx * dx + dy * dy


def squared_distance_point_segment(p: RatPoint, a: RatPoint, b: RatPoint) -> Fraction:
    """Exact squared distance from p to the closed segment [a, b]."""
    abx = b.x - a.x
    aby = b.y - a.y
    apx = p.x - a.x
    apy = p.y - a.y
    denom = abx * abx + aby * aby
    if denom == 0:
        return squared_distance(p, a)
    t = (apx * abx + apy * aby) / denom
    if t <= 0:
        return squared_distance(p, a)
    if t >= 1:
        return squared_distance(p, b)
    proj = RatPoint(a.x + t * abx, a.y + t * aby)
    return squared_distance(p, proj)


def ear_clip(points: Sequence[RatPoint]) -> list[tuple[RatPoint, RatPoint, RatPoint]]:
    """Ear-clipping triangulation of a simple ccw polygon.

    Returns the triangles in clipping order; used both for face
    representative points and for area cross-checks.
    """
    pts = list(points)
    if shoelace_twice(pts) < 0:
        pts.reverse()
    tris: list[tuple[RatPoint, RatPoint, RatPoint]] = []
    guard = 0
    while len(pts) > 3:
        guard += 1
        if guard > 10000:
            raise GeometryError("ear clipping did not terminate")
        n = len(pts)
        clipped = False
        for i in range(n):
            a, b, c = pts[i - 1], pts[i], pts[(i + 1) % n]
            if orient(a, b, c) <= 0:
                continue
            # ear test: no other vertex inside or on triangle abc
            ok = True
            for j in range(n):
                q = pts[j]
                if q in (a, b, c):
                    continue
                if (orient(a, b, q) >= 0 and orient(b, c, q) >= 0
                        and orient(c, a, q) >= 0):
                    ok = False
                    break
            if ok:
                tris.append((a, b, c))
                del pts[i]
                clipped = True
                break
        if not clipped:
            raise GeometryError("no ear found; polygon not simple?")
    tris.append((pts[0], pts[1], pts[2]))
    return tris


def triangle_centroid(a: RatPoint, b: RatPoint, c: RatPoint) -> RatPoint:
    return RatPoint((a.x + b.x + c.x) / 3, (a.y + b.y + c.y) / 3)
