"""Offset tubes around skeleton graphs, and exact area adjustment fingers.

A skeleton is a plane tree of straight segments (plus optional convex
"bulge" polygons at its nodes).  `tube_boundary` produces the closed
polygon bounding a thin neighborhood of the skeleton: two parallel wall
copies per edge, caps at leaves, bulge arcs at fat nodes.  All output
coordinates are rational; no step needs square roots because wall offsets
are scaled by max-coordinate rather than Euclidean length.

Exact area dialing is done with rectangular "fingers" attached through
(or excised from) a single edge of a curve; a finger's area is linear in
its rational height, so any rational target is hit exactly.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Optional, Sequence

from .geometry import (
    GeometryError,
    NonGenericInput,
    PolyCurve,
    RatPoint,
    orient,
    pair_status,
    point_on_segment,
    seg_boxes,
    segment_crossing,
    validate_curve,
)


class TubeFailed(GeometryError):
    pass


class NoSlack(GeometryError):
    """No usable face for an area finger."""


Seg = tuple[RatPoint, RatPoint]


def _rot90(dx: Fraction, dy: Fraction) -> tuple[Fraction, Fraction]:
    return -dy, dx


def _offset_vec(a: RatPoint, b: RatPoint, delta: Fraction) -> tuple[Fraction, Fraction]:
    """Left-normal offset of magnitude between delta and delta*sqrt(2)."""
    dx, dy = b.x - a.x, b.y - a.y
    m = max(abs(dx), abs(dy))
    nx, ny = _rot90(dx, dy)
    return nx * delta / m, ny * delta / m


def _line_intersect(p: RatPoint, d: tuple[Fraction, Fraction],
                    q: RatPoint, e: tuple[Fraction, Fraction]) -> Optional[RatPoint]:
    denom = d[0] * e[1] - d[1] * e[0]
    if denom == 0:
        return None
    t = ((q.x - p.x) * e[1] - (q.y - p.y) * e[0]) / denom
    return RatPoint(p.x + t * d[0], p.y + t * d[1])


class Skeleton:
    """Plane tree with straight edges and optional convex node bulges."""

    def __init__(self):
        self.points: list[RatPoint] = []
        self.bulges: dict[int, list[RatPoint]] = {}
        self.adj: dict[int, list[int]] = {}
        self._ids: dict[RatPoint, int] = {}

    def node(self, p: RatPoint, bulge: Optional[list[RatPoint]] = None) -> int:
        i = self._ids.get(p)
        if i is None:
            i = len(self.points)
            self._ids[p] = i
            self.points.append(p)
            self.adj[i] = []
        if bulge is not None:
            self.bulges[i] = bulge
        return i

    def edge(self, i: int, j: int) -> None:
        if j not in self.adj[i]:
            self.adj[i].append(j)
            self.adj[j].append(i)

    def add_chain(self, pts: Sequence[RatPoint]) -> None:
        ids = [self.node(p) for p in pts]
        for a, b in zip(ids, ids[1:]):
            self.edge(a, b)

    def segments(self) -> list[Seg]:
        out = []
        for i, nbrs in self.adj.items():
            for j in nbrs:
                if i < j:
                    out.append((self.points[i], self.points[j]))
        return out

    def n_edges(self) -> int:
        return sum(len(v) for v in self.adj.values()) // 2


def _rotation_order(sk: Skeleton) -> dict[int, list[int]]:
    import functools

    def angle_cmp(u, v):
        def half(w):
            return 0 if (w[1] > 0 or (w[1] == 0 and w[0] > 0)) else 1
        hu, hv = half(u), half(v)
        if hu != hv:
            return -1 if hu < hv else 1
        c = u[0] * v[1] - u[1] * v[0]
        return -1 if c > 0 else (1 if c < 0 else 0)

    order: dict[int, list[int]] = {}
    for i, nbrs in sk.adj.items():
        def key(j, i=i):
            return (sk.points[j].x - sk.points[i].x, sk.points[j].y - sk.points[i].y)
        order[i] = sorted(nbrs, key=functools.cmp_to_key(
            lambda a, b: angle_cmp(key(a), key(b))))
    return order


def _all_walks(sk: Skeleton) -> list[list[tuple[int, int]]]:
    """Face walks of the plane graph: each directed edge in exactly one orbit."""
    order = _rotation_order(sk)
    seen: set[tuple[int, int]] = set()
    walks = []
    for i, nbrs in sk.adj.items():
        for j in nbrs:
            if (i, j) in seen:
                continue
            walk = []
            cur = (i, j)
            while cur not in seen:
                seen.add(cur)
                walk.append(cur)
                u, v = cur
                nb = order[v]
                k = nb.index(u)
                cur = (v, nb[(k - 1) % len(nb)])
            walks.append(walk)
    return walks


def _walk_area2(sk: Skeleton, walk) -> Fraction:
    tot = Fraction(0)
    for (i, j) in walk:
        a, b = sk.points[i], sk.points[j]
        tot += a.x * b.y - b.x * a.y
    return tot


def _walk(sk: Skeleton) -> list[tuple[int, int]]:
    """The tree boundary walk, or the outer face walk of a plane graph."""
    walks = _all_walks(sk)
    if not walks:
        return []
    if len(walks) == 1:
        return walks[0]
    return min(walks, key=lambda w: _walk_area2(sk, w))


def _convex_clip_entry(poly: Sequence[RatPoint], p: RatPoint,
                       d: tuple[Fraction, Fraction], want: str) -> tuple[RatPoint, int]:
    """Intersection of the line p + t*d with convex polygon boundary.

    Returns (`point`, edge index).  `want` is "first" (smallest t) or
    "last" (largest t).
    """
    hits: list[tuple[Fraction, RatPoint, int]] = []
    n = len(poly)
    for i in range(n):
        a, b = poly[i], poly[(i + 1) % n]
        e = (b.x - a.x, b.y - a.y)
        x = _line_intersect(p, d, a, e)
        if x is None:
            continue
        # param along polygon edge
        if e[0] != 0:
            u = (x.x - a.x) / e[0]
        else:
            u = (x.y - a.y) / e[1]
        if not (0 <= u <= 1):
            continue
        if d[0] != 0:
            t = (x.x - p.x) / d[0]
        else:
            t = (x.y - p.y) / d[1]
        hits.append((t, x, i))
    if len(hits) < 2:
        raise TubeFailed("offset wall misses bulge polygon")
    hits.sort(key=lambda h: h[0])
    if want == "first":
        return hits[0][1], hits[0][2]
    return hits[-1][1], hits[-1][2]


def tube_boundary(sk: Skeleton, delta: Fraction) -> list[RatPoint]:
    """Closed polygon around the skeleton at wall offset ~delta."""
    if sk.n_edges() == 0:
        # single fat node: the bulge itself is the tube
        if len(sk.points) != 1 or 0 not in sk.bulges:
            raise TubeFailed("empty skeleton without bulge")
        return list(sk.bulges[0])
    walk = _walk(sk)
    out: list[RatPoint] = []
    m = len(walk)
    for k in range(m):
        i, j = walk[k]
        j2, l = walk[(k + 1) % m]
        assert j2 == j
        a, b, c = sk.points[i], sk.points[j], sk.points[l]
        v1 = _offset_vec(a, b, delta)
        v2 = _offset_vec(b, c, delta)
        bulge = sk.bulges.get(j)
        if bulge is not None:
            d1 = (b.x - a.x, b.y - a.y)
            d2 = (c.x - b.x, c.y - b.y)
            p_in = RatPoint(a.x + v1[0], a.y + v1[1])
            p_out = RatPoint(b.x + v2[0], b.y + v2[1])
            entry, ei = _convex_clip_entry(bulge, p_in, d1, "first")
            exitp, xi = _convex_clip_entry(bulge, p_out, d2, "last")
            out.append(entry)
            # walk the bulge clockwise (reverse of ccw order) from entry to exit
            n = len(bulge)
            idx = ei  # entry lies on edge ei = (bulge[ei], bulge[ei+1])
            guard = 0
            while idx != xi:
                out.append(bulge[idx])
                idx = (idx - 1) % n
                guard += 1
                if guard > n + 1:
                    raise TubeFailed("bulge walk did not terminate")
            out.append(exitp)
        elif l == i:
            # leaf cap
            dx, dy = b.x - a.x, b.y - a.y
            mm = max(abs(dx), abs(dy))
            ex, ey = dx * delta / mm, dy * delta / mm
            out.append(RatPoint(b.x + v1[0] + ex, b.y + v1[1] + ey))
            out.append(RatPoint(b.x + v2[0] + ex, b.y + v2[1] + ey))
        else:
            d1 = (b.x - a.x, b.y - a.y)
            d2 = (c.x - b.x, c.y - b.y)
            crossdir = d1[0] * d2[1] - d1[1] * d2[0]
            if crossdir == 0:
                out.append(RatPoint(b.x + v1[0], b.y + v1[1]))
                if v1 != v2:
                    out.append(RatPoint(b.x + v2[0], b.y + v2[1]))
            else:
                p1 = RatPoint(a.x + v1[0], a.y + v1[1])
                p2 = RatPoint(b.x + v2[0], b.y + v2[1])
                x = _line_intersect(p1, d1, p2, d2)
                if x is None:
                    raise TubeFailed("miter failed")
                out.append(x)
    return _cleanup(out)


def _cleanup(pts: list[RatPoint]) -> list[RatPoint]:
    """Drop duplicate and collinear-middle points (cyclically)."""
    changed = True
    while changed and len(pts) > 3:
        changed = False
        n = len(pts)
        keep = []
        i = 0
        for i in range(n):
            if pts[i] == pts[(i + 1) % n]:
                changed = True
                continue
            keep.append(pts[i])
        pts = keep
        n = len(pts)
        if n <= 3:
            break
        keep = []
        for i in range(n):
            if orient(pts[i - 1], pts[i], pts[(i + 1) % n]) == 0:
                changed = True
                continue
            keep.append(pts[i])
        pts = keep
    return pts


def offset_closed(c: PolyCurve, delta: Fraction, side: str) -> list[RatPoint]:
    """Miter offset of a closed curve; side 'in' (enclosed) or 'out'."""
    pts = c.points
    n = len(pts)
    sign = Fraction(1) if side == "in" else Fraction(-1)
    out = []
    for i in range(n):
        a, b, cc = pts[i - 1], pts[i], pts[(i + 1) % n]
        v1 = _offset_vec(a, b, delta * sign)
        v2 = _offset_vec(b, cc, delta * sign)
        d1 = (b.x - a.x, b.y - a.y)
        d2 = (cc.x - b.x, cc.y - b.y)
        p1 = RatPoint(a.x + v1[0], a.y + v1[1])
        p2 = RatPoint(b.x + v2[0], b.y + v2[1])
        x = _line_intersect(p1, d1, p2, d2)
        if x is None:
            x = RatPoint(b.x + v1[0], b.y + v1[1])
        out.append(x)
    return _cleanup(out)


def segment_conflicts(p: RatPoint, q: RatPoint, obstacles: Sequence[Seg],
                      skip: Sequence[Seg] = (),
                      boxes: Optional[Sequence] = None) -> bool:
    """True if [p,q] meets any obstacle segment (crossing or touching)."""
    skipset = set()
    for a, b in skip:
        skipset.add((a, b))
        skipset.add((b, a))
    if boxes is None:
        boxes = seg_boxes(obstacles)
    px, py, qx, qy = float(p.x), float(p.y), float(q.x), float(q.y)
    x0, x1 = min(px, qx) - 1e-9, max(px, qx) + 1e-9
    y0, y1 = min(py, qy) - 1e-9, max(py, qy) + 1e-9
    for (box, (a, b)) in zip(boxes, obstacles):
        if box[0] > x1 or box[1] < x0 or box[2] > y1 or box[3] < y0:
            continue
        if (a, b) in skipset:
            continue
        try:
            if segment_crossing(p, q, a, b) is not None:
                return True
        except NonGenericInput:
            return True
    return False


# -- exact area fingers ---------------------------------------------------


def crossing_signature(c: PolyCurve, objs: Sequence) -> list[tuple[str, tuple]]:
    sig = []
    for o in objs:
        st = pair_status(c, o)
        sig.append((st.kind, st.points))
    return sig


def _finger_points(pts: Sequence[RatPoint], edge_i: int, frac: Fraction,
                   height: Fraction, outward: bool) -> tuple[RatPoint, ...]:
    """Corners (p1, p2, q2, q1) of a rectangle through edge edge_i."""
    n = len(pts)
    p, q = pts[edge_i], pts[(edge_i + 1) % n]
    lo = Fraction(1, 2) - frac / 2
    hi = Fraction(1, 2) + frac / 2
    p1 = RatPoint(p.x + lo * (q.x - p.x), p.y + lo * (q.y - p.y))
    q1 = RatPoint(p.x + hi * (q.x - p.x), p.y + hi * (q.y - p.y))
    dx, dy = q.x - p.x, q.y - p.y
    # outward = right of the ccw-oriented edge, inward = left
    nx, ny = (dy, -dx) if outward else (-dy, dx)
    p2 = RatPoint(p1.x + height * nx, p1.y + height * ny)
    q2 = RatPoint(q1.x + height * nx, q1.y + height * ny)
    return p1, p2, q2, q1


def _finger_valid(pts: Sequence[RatPoint], edge_i: int,
                  corners: tuple[RatPoint, ...],
                  obstacle_segs: Sequence[Seg], obstacle_boxes,
                  curve_boxes) -> bool:
    """Incremental validity: only the three new sides can create contact.

    The base sub-segments lie on the host edge, which was already clear,
    so simplicity and crossing patterns are preserved iff the new sides
    miss every old curve segment (host edge excluded) and every obstacle,
    and no obstacle crossed the removed base interval.
    """
    p1, p2, q2, q1 = corners
    for c in (p2, q2):
        if not (0 < c.x < 1 and 0 < c.y < 1):
            return False
    n = len(pts)
    host = (pts[edge_i], pts[(edge_i + 1) % n])
    curve_segs = [(pts[k], pts[(k + 1) % n]) for k in range(n)]
    for (u, v) in ((p1, p2), (p2, q2), (q2, q1)):
        if segment_conflicts(u, v, curve_segs, skip=[host], boxes=curve_boxes):
            return False
        if segment_conflicts(u, v, obstacle_segs, boxes=obstacle_boxes):
            return False
    if segment_conflicts(p1, q1, obstacle_segs, boxes=obstacle_boxes):
        return False
    return True


def _splice(pts: Sequence[RatPoint], edge_i: int,
            corners: tuple[RatPoint, ...]) -> list[RatPoint]:
    return list(pts[:edge_i + 1]) + list(corners) + list(pts[edge_i + 1:])


def _obstacle_segments(keep_clear: Sequence) -> list[Seg]:
    segs: list[Seg] = []
    for o in keep_clear:
        segs.extend(o.edges())
    return segs


class _FloatSegs:
    """Float shadow of a segment family for fast certain-conflict tests."""

    __slots__ = ("segs",)

    def __init__(self, segs: Sequence[Seg]):
        self.segs = [(float(a.x), float(a.y), float(b.x), float(b.y)) for a, b in segs]

    def certainly_conflicts(self, ux, uy, vx, vy) -> bool:
        """True only when a proper crossing or contact is certain in floats.

        Used to discard candidates cheaply; the exact gate still decides
        acceptance, so a false negative here costs time, never soundness.
        """
        eps = 1e-12
        x0, x1 = (ux, vx) if ux <= vx else (vx, ux)
        y0, y1 = (uy, vy) if uy <= vy else (vy, uy)
        for (ax, ay, bx, by) in self.segs:
            if (max(ax, bx) < x0 - 1e-9 or min(ax, bx) > x1 + 1e-9
                    or max(ay, by) < y0 - 1e-9 or min(ay, by) > y1 + 1e-9):
                continue
            d1 = (vx - ux) * (ay - uy) - (vy - uy) * (ax - ux)
            d2 = (vx - ux) * (by - uy) - (vy - uy) * (bx - ux)
            if d1 > eps and d2 > eps:
                continue
            if d1 < -eps and d2 < -eps:
                continue
            d3 = (bx - ax) * (uy - ay) - (by - ay) * (ux - ax)
            d4 = (bx - ax) * (vy - ay) - (by - ay) * (vx - ax)
            if d3 > eps and d4 > eps:
                continue
            if d3 < -eps and d4 < -eps:
                continue
            if (abs(d1) > eps and abs(d2) > eps and abs(d3) > eps
                    and abs(d4) > eps):
                return True     # certain proper crossing
            return True         # uncertain: treat as conflict for pruning
        return False


def _best_finger(pts: list[RatPoint], need: Fraction,
                 obstacle_segs: Sequence[Seg], obstacle_boxes,
                 fobs: _FloatSegs,
                 scan_edges: int = 12, halvings: int = 12) -> Optional[tuple[list[RatPoint], Fraction]]:
    """Largest validating finger (up to `need`); returns (new_pts, absorbed).

    Candidates are pruned with float tests; acceptance always passes the
    exact incremental validity gate.
    """
    n = len(pts)
    outward = need > 0
    goal = abs(need)
    curve_segs = [(pts[k], pts[(k + 1) % n]) for k in range(n)]
    curve_boxes = seg_boxes(curve_segs)
    fpts = [(float(p.x), float(p.y)) for p in pts]

    def flen2(i):
        (px, py), (qx, qy) = fpts[i], fpts[(i + 1) % n]
        return (qx - px) ** 2 + (qy - py) ** 2

    order = sorted(range(n), key=flen2, reverse=True)[:scan_edges]
    best = None
    best_gain = ZERO_F
    for ei in order:
        p, q = pts[ei], pts[(ei + 1) % n]
        len2 = (q.x - p.x) ** 2 + (q.y - p.y) ** 2
        fcurve = _FloatSegs([s for k, s in enumerate(curve_segs) if k != ei])
        for frac in (Fraction(1, 2), Fraction(1, 4)):
            h = goal / (frac * len2)
            for _ in range(halvings):
                gain = frac * h * len2
                if gain <= best_gain:
                    break
                if _float_finger_ok(fpts, ei, float(frac), float(h), outward,
                                    fobs, fcurve):
                    corners = _finger_points(pts, ei, frac, h, outward)
                    if _finger_valid(pts, ei, corners, obstacle_segs,
                                     obstacle_boxes, curve_boxes):
                        best = _splice(pts, ei, corners)
                        best_gain = gain
                        break
                h = h / 2
        if best_gain == goal:
            break
    if best is None:
        return None
    return best, (best_gain if outward else -best_gain)


def _float_finger_ok(fpts, ei, ffrac, fh, outward, fobs: _FloatSegs,
                     fcurve: _FloatSegs) -> bool:
    n = len(fpts)
    (px, py), (qx, qy) = fpts[ei], fpts[(ei + 1) % n]
    lo = 0.5 - ffrac / 2
    hi = 0.5 + ffrac / 2
    p1 = (px + lo * (qx - px), py + lo * (qy - py))
    q1 = (px + hi * (qx - px), py + hi * (qy - py))
    dx, dy = qx - px, qy - py
    nx, ny = (dy, -dx) if outward else (-dy, dx)
    p2 = (p1[0] + fh * nx, p1[1] + fh * ny)
    q2 = (q1[0] + fh * nx, q1[1] + fh * ny)
    margin = 1e-9
    for (cx, cy) in (p2, q2):
        if not (margin < cx < 1 - margin and margin < cy < 1 - margin):
            return False
    for (u, v) in ((p1, p2), (p2, q2), (q2, q1)):
        if fcurve.certainly_conflicts(u[0], u[1], v[0], v[1]):
            return False
        if fobs.certainly_conflicts(u[0], u[1], v[0], v[1]):
            return False
    if fobs.certainly_conflicts(p1[0], p1[1], q1[0], q1[1]):
        return False
    return True


ZERO_F = Fraction(0)


def single_finger_exact(curve: PolyCurve, target: Fraction,
                        keep_clear: Sequence) -> Optional[PolyCurve]:
    """One rectangle finger moving the area exactly to `target`, or None."""
    need = target - curve.area
    if need == 0:
        return curve
    base_sig = crossing_signature(curve, keep_clear)
    obstacle_segs = _obstacle_segments(keep_clear)
    obstacle_boxes = seg_boxes(obstacle_segs)
    pts = list(curve.points)
    n = len(pts)
    outward = need > 0
    curve_boxes = seg_boxes([(pts[k], pts[(k + 1) % n]) for k in range(n)])

    def length2(i):
        p, q = pts[i], pts[(i + 1) % n]
        return (q.x - p.x) ** 2 + (q.y - p.y) ** 2

    for ei in sorted(range(n), key=length2, reverse=True):
        len2 = length2(ei)
        for frac in (Fraction(1, 2), Fraction(1, 4), Fraction(1, 8)):
            h = abs(need) / (frac * len2)
            corners = _finger_points(pts, ei, frac, h, outward)
            if _finger_valid(pts, ei, corners, obstacle_segs,
                             obstacle_boxes, curve_boxes):
                out = validate_curve(_splice(pts, ei, corners))
                if out.area == target and crossing_signature(out, keep_clear) == base_sig:
                    return out
    return None


def pump_to_area(curve: PolyCurve, target: Fraction, keep_clear: Sequence,
                 max_fingers: int = 200) -> PolyCurve:
    """Grow/shrink the enclosed area to exactly `target` with finger moves.

    Finger validity is checked incrementally; the final curve is fully
    re-validated and its crossing pattern against every keep_clear object
    is confirmed unchanged.
    """
    base_sig = crossing_signature(curve, keep_clear)
    obstacle_segs = _obstacle_segments(keep_clear)
    obstacle_boxes = seg_boxes(obstacle_segs)
    fobs = _FloatSegs(obstacle_segs)
    pts = list(curve.points)
    area = curve.area
    for _ in range(max_fingers):
        need = target - area
        if need == 0:
            break
        got = _best_finger(pts, need, obstacle_segs, obstacle_boxes, fobs)
        if got is None:
            raise NoSlack(f"pump stalled at area {area}, target {target}")
        pts, absorbed = got
        area += absorbed
    if area != target:
        raise NoSlack(f"pump exceeded {max_fingers} fingers")
    out = validate_curve(pts)
    if out.area != target:
        raise GeometryError("area accounting mismatch")
    if crossing_signature(out, keep_clear) != base_sig:
        raise GeometryError("crossing pattern changed during pump")
    return out
