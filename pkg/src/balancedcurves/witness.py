"""Witness subsurfaces and subsurface projections.

A witness is the complement of n >= 4 disjoint rational rectangles
("holes") in the measured sphere, with a standardized cut system of
n - 1 horizontal connector arcs.  Curves project to curve classes of the
witness via arc surgery; classes are reduced cyclic crossing words
against the cut system, and for n = 4 they coordinatize as Farey slopes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Optional, Sequence

from .arrangement import Arrangement
from .certificates import BoundCertificate
from .curveio import format_fraction, parse_curve, serialize_curve
from .farey import Slope, farey_distance, slope
from .geometry import (
    GeometryError,
    HALF,
    NonGenericInput,
    PolyArc,
    PolyCurve,
    RatPoint,
    crossings_between,
    pair_status,
    point_in_polygon,
    point_on_segment,
    segment_crossing,
    validate_curve,
)
from .tubes import Skeleton, tube_boundary


class InfeasibleParameters(GeometryError):
    pass


class DoesNotCut(GeometryError):
    pass


class NotFourHoled(GeometryError):
    pass


class WitnessFails(GeometryError):
    pass


@dataclass
class Witness:
    """n-holed sphere with exact hole areas and a standardized cut system."""
    holes: list[PolyCurve]
    cut_arcs: list[PolyArc]
    eps1_boundary: Optional[int] = None     # index of the distinguished hole, if any

    @property
    def n(self) -> int:
        return len(self.holes)

    @property
    def area(self) -> Fraction:
        return 1 - sum(h.area for h in self.holes)

    def hole_point(self, i: int) -> RatPoint:
        pts = self.holes[i].points
        cx = sum(p.x for p in pts) / len(pts)
        cy = sum(p.y for p in pts) / len(pts)
        return RatPoint(cx, cy)


def make_witness(eps, n: int, profile: str = "uniform",
                 eps1=None) -> Witness:
    """Witness with exact hole areas in a single row layout.

    `uniform` gives every hole area 1/(n+1); `skewed` gives the first
    hole area eps1 and splits the rest evenly between the other holes
    and the witness itself.
    """
    e = Fraction(eps)
    if n < 4:
        raise InfeasibleParameters("need at least 4 holes")
    if profile == "uniform":
        areas = [Fraction(1, n + 1)] * n
        w_area = Fraction(1, n + 1)
        if not Fraction(2, n + 1) < e:
            raise InfeasibleParameters(f"2/(n+1) = {Fraction(2, n + 1)} >= eps = {e}")
        eps1_idx = None
    elif profile == "skewed":
        e1 = Fraction(eps1)
        if not e1 < e:
            raise InfeasibleParameters(f"eps1 = {e1} >= eps = {e}")
        rest = (1 - e1) / n
        if not e1 + rest < e:
            raise InfeasibleParameters(f"eps1 + (1-eps1)/n = {e1 + rest} >= eps = {e}")
        if not 2 * rest < e:
            raise InfeasibleParameters(f"2(1-eps1)/n = {2 * rest} >= eps = {e}")
        areas = [e1] + [rest] * (n - 1)
        w_area = rest
        eps1_idx = 0
    else:
        raise ValueError(f"unknown profile {profile!r}")
    w = _row_layout(areas, w_area)
    w.eps1_boundary = eps1_idx
    ok, bad = witness_check(w, e)
    if not ok:
        raise InfeasibleParameters(f"layout failed the witness predicate at hole {bad}")
    return w


def _row_layout(areas: Sequence[Fraction], w_area: Fraction) -> Witness:
    """Disjoint rectangles in a row, each with its exact target area."""
    total = sum(areas)
    assert total + w_area == 1
    h_row = 1 - w_area / 2          # row height < 1, leaving rational margins
    widths = [a / h_row for a in areas]
    slack = 1 - sum(widths)
    gap = slack / (len(areas) + 1)
    y0 = (1 - h_row) / 2
    y1 = y0 + h_row
    holes = []
    x = gap
    rights = []
    lefts = []
    for wdt in widths:
        lefts.append(x)
        holes.append(validate_curve([
            RatPoint(x, y0), RatPoint(x + wdt, y0),
            RatPoint(x + wdt, y1), RatPoint(x, y1)]))
        rights.append(x + wdt)
        x += wdt + gap
    cuts = []
    for i in range(len(areas) - 1):
        cuts.append(PolyArc([RatPoint(rights[i], HALF),
                             RatPoint(lefts[i + 1], HALF)]))
    return Witness(holes=holes, cut_arcs=cuts)


def witness_check(w: Witness, eps) -> tuple[bool, Optional[int]]:
    """Strict sufficient condition: area(hole_i) + area(W) < eps for all i."""
    e = Fraction(eps)
    wa = w.area
    for i, h in enumerate(w.holes):
        if not h.area + wa < e:
            return False, i
    return True, None


class CutClassification(NamedTuple):
    closed_components: list[tuple[PolyCurve, str]]   # kind: inessential|peripheral|essential
    arc_components: list[tuple[list[RatPoint], int, int, bool]]  # pts, hole_in, hole_out, essential
    cuts: bool


def _hole_sides(c: PolyCurve, w: Witness) -> tuple[list[int], list[int]]:
    inside, outside = [], []
    for i in range(w.n):
        if point_in_polygon(w.hole_point(i), c.points):
            inside.append(i)
        else:
            outside.append(i)
    return inside, outside


def cuts_witness(c: PolyCurve, w: Witness) -> CutClassification:
    """Classify the components of the curve's intersection with the witness."""
    crossings: list[tuple[int, int]] = []   # (curve edge index, hole index) per point
    per_hole: dict[int, list[RatPoint]] = {}
    all_points: list[tuple[Fraction, Fraction, int, RatPoint]] = []
    for hi, hole in enumerate(w.holes):
        st = pair_status(c, hole)
        if st.kind == "nongeneric":
            raise NonGenericInput(f"curve touches hole {hi}: {st.witness}")
        for x in st.points:
            per_hole.setdefault(hi, []).append(x)
    # order all crossings along the curve
    marks = []
    for hi, pts in per_hole.items():
        for x in pts:
            loc = _locate_on_curve(c, x)
            marks.append((loc, hi, x))
    marks.sort(key=lambda m: m[0])
    if not marks:
        # the whole curve misses every hole boundary
        if any(point_in_polygon(c.points[0], h.points) for h in w.holes):
            return CutClassification([], [], False)
        inside, outside = _hole_sides(c, w)
        if not inside or not outside:
            kind = "inessential"
        elif min(len(inside), len(outside)) == 1:
            kind = "peripheral"
        else:
            kind = "essential"
        return CutClassification([(c, kind)], [], kind == "essential")
    # split the curve at the crossing marks into arcs
    arcs = []
    k = len(marks)
    for i in range(k):
        (loc1, h1, x1) = marks[i]
        (loc2, h2, x2) = marks[(i + 1) % k]
        pts = _curve_piece(c, loc1, loc2, x1, x2)
        mid = _piece_midpoint(pts)
        in_hole = None
        for hi, hole in enumerate(w.holes):
            if point_in_polygon(mid, hole.points):
                in_hole = hi
                break
        if in_hole is None:
            arcs.append((pts, h1, h2))
    arc_components = []
    cuts = False
    for pts, h1, h2 in arcs:
        if h1 != h2:
            essential = True
        else:
            essential = _same_hole_arc_essential(pts, h1, w)
        arc_components.append((pts, h1, h2, essential))
        if essential:
            cuts = True
    return CutClassification([], arc_components, cuts)


def _locate_on_curve(c: PolyCurve, x: RatPoint) -> tuple[int, Fraction]:
    for i, (p, q) in enumerate(c.edges()):
        if point_on_segment(x, p, q) and x != q:
            if q.x != p.x:
                t = (x.x - p.x) / (q.x - p.x)
            else:
                t = (x.y - p.y) / (q.y - p.y)
            return (i, t)
    raise NonGenericInput(f"crossing {x} not on the curve")


def _curve_piece(c: PolyCurve, loc1, loc2, x1: RatPoint, x2: RatPoint) -> list[RatPoint]:
    n = len(c.points)
    pts = [x1]
    i = loc1[0]
    if loc1 == loc2:
        return [x1, x2]
    if loc1[0] == loc2[0] and loc2[1] > loc1[1]:
        return [x1, x2]
    i = (loc1[0] + 1) % n
    while True:
        v = c.points[i]
        if v != pts[-1]:
            pts.append(v)
        if i == loc2[0]:
            break
        i = (i + 1) % n
    if x2 != pts[-1]:
        pts.append(x2)
    return pts


def _piece_midpoint(pts: list[RatPoint]) -> RatPoint:
    if len(pts) == 2:
        return RatPoint((pts[0].x + pts[1].x) / 2, (pts[0].y + pts[1].y) / 2)
    return pts[len(pts) // 2]


def _same_hole_arc_essential(pts: list[RatPoint], hole_i: int, w: Witness) -> bool:
    """Arc with both endpoints on one hole: essential iff both complementary
    pieces of the witness contain another hole."""
    hole = w.holes[hole_i]
    jordan = _close_arc_through_hole(pts, hole)
    side1, side2 = [], []
    for i in range(w.n):
        if i == hole_i:
            continue
        if point_in_polygon(w.hole_point(i), jordan):
            side1.append(i)
        else:
            side2.append(i)
    return bool(side1) and bool(side2)


def _close_arc_through_hole(pts: list[RatPoint], hole: PolyCurve) -> list[RatPoint]:
    """Close an arc with endpoints on the hole boundary along that boundary."""
    a, b = pts[0], pts[-1]
    ia, ta = _locate_on_curve(hole, a)
    ib, tb = _locate_on_curve(hole, b)
    n = len(hole.points)
    walk = [b]
    if (ib, tb) != (ia, ta):
        if ib == ia and ta > tb:
            pass
        else:
            i = (ib + 1) % n
            while True:
                walk.append(hole.points[i])
                if i == ia:
                    break
                i = (i + 1) % n
    closed = list(pts) + [p for p in walk[1:] if p != pts[-1]]
    if closed[-1] == closed[0]:
        closed.pop()
    return closed


class CurveClassInW(NamedTuple):
    """Reduced cyclic word of signed cut-arc crossings, plus the hole split."""
    word: tuple[tuple[int, int], ...]        # (cut index, sign)
    hole_partition: tuple[frozenset, frozenset]
    representative: Optional[PolyCurve] = None

    def canonical(self) -> tuple:
        return _canonical_word(self.word)

    def same_class(self, other: "CurveClassInW") -> bool:
        return (self.canonical() == other.canonical()
                and {self.hole_partition[0], self.hole_partition[1]}
                == {other.hole_partition[0], other.hole_partition[1]})


def _reduce_word(word: list[tuple[int, int]]) -> list[tuple[int, int]]:
    changed = True
    w = list(word)
    while changed and w:
        changed = False
        out = []
        i = 0
        while i < len(w):
            if i + 1 < len(w) and w[i][0] == w[i + 1][0] and w[i][1] == -w[i + 1][1]:
                i += 2
                changed = True
            else:
                out.append(w[i])
                i += 1
        # cyclic cancellation
        while len(out) >= 2 and out[0][0] == out[-1][0] and out[0][1] == -out[-1][1]:
            out = out[1:-1]
            changed = True
        w = out
    return w


def _canonical_word(word) -> tuple:
    w = list(word)
    if not w:
        return ()
    best = None
    for rev in (False, True):
        seq = [(i, -s) for (i, s) in reversed(w)] if rev else w
        for r in range(len(seq)):
            rot = tuple(seq[r:] + seq[:r])
            if best is None or rot < best:
                best = rot
    return best


def curve_word(c: PolyCurve, w: Witness) -> list[tuple[int, int]]:
    """Signed crossing word of a curve against the cut system, reduced."""
    marks = []
    for ci, cut in enumerate(w.cut_arcs):
        for (u, v) in cut.edges():
            for ei, (p, q) in enumerate(c.edges()):
                x = segment_crossing(p, q, u, v)
                if x is not None:
                    loc = _locate_on_curve(c, x)
                    sign = 1 if (q.y - p.y) > 0 else -1
                    marks.append((loc, ci, sign))
    marks.sort(key=lambda m: m[0])
    return _reduce_word([(ci, sg) for (_, ci, sg) in marks])


def project_to_witness(c: PolyCurve, w: Witness) -> list[CurveClassInW]:
    """Masur-Minsky style projection: surger essential arcs to curves of W.

    Returns the classes of the surgered curves (peripheral and
    inessential results are discarded); if the intersection already
    contains an essential closed component, its class alone is returned.
    """
    cls = cuts_witness(c, w)
    if not cls.cuts:
        raise DoesNotCut("curve does not cut the witness")
    if cls.closed_components:
        curve, kind = cls.closed_components[0]
        assert kind == "essential"
        return [_class_of_curve(curve, w)]
    out: list[CurveClassInW] = []
    for pts, h1, h2, essential in cls.arc_components:
        if not essential:
            continue
        for cand in _surger_arc(pts, h1, h2, w):
            klass = _class_of_curve(cand, w)
            if _is_peripheral_partition(klass.hole_partition):
                continue
            if not any(klass.same_class(o) for o in out):
                out.append(klass)
    if not out:
        # every surgery came out peripheral; report the arc data instead
        raise DoesNotCut("all surgered curves were peripheral")
    return out


def _is_peripheral_partition(partition) -> bool:
    return min(len(partition[0]), len(partition[1])) <= 1


def _class_of_curve(c: PolyCurve, w: Witness) -> CurveClassInW:
    word = tuple(curve_word(c, w))
    inside, outside = _hole_sides(c, w)
    return CurveClassInW(word=word,
                         hole_partition=(frozenset(inside), frozenset(outside)),
                         representative=c)


def _surger_arc(pts: list[RatPoint], h1: int, h2: int, w: Witness) -> list[PolyCurve]:
    """Boundary curves of a neighborhood of arc + touched hole boundaries."""
    for delta_k in range(7, 16):
        delta = Fraction(1, 2 ** delta_k)
        cands: list[PolyCurve] = []
        if h1 != h2:
            try:
                cands.append(_dumbbell_boundary(w.holes[h1], pts, w.holes[h2], delta))
            except GeometryError:
                pass
        else:
            for jordan in _both_closures(pts, w.holes[h1]):
                for side in ("out", "in"):
                    try:
                        cands.append(validate_curve(_push_off(jordan, delta, side)))
                    except GeometryError:
                        continue
        good = []
        for cand in cands:
            if any(pair_status(cand, h).kind != "disjoint" for h in w.holes):
                continue
            if any(point_in_polygon(w.hole_point(i), cand.points)
                   and pair_status(cand, w.holes[i]).kind != "disjoint"
                   for i in range(w.n)):
                continue
            good.append(cand)
        if good:
            return good
    return []


def _dumbbell_boundary(hole1: PolyCurve, arc_pts: list[RatPoint],
                       hole2: PolyCurve, delta: Fraction) -> PolyCurve:
    """Outer boundary of a neighborhood of hole1 + arc + hole2."""
    sk = Skeleton()
    for hole, endpoint in ((hole1, arc_pts[0]), (hole2, arc_pts[-1])):
        cyc = _insert_on_boundary(hole, endpoint)
        sk.add_chain(cyc + [cyc[0]])
    sk.add_chain(arc_pts)
    return validate_curve(tube_boundary(sk, delta))


def _insert_on_boundary(hole: PolyCurve, x: RatPoint) -> list[RatPoint]:
    pts = list(hole.points)
    if x in pts:
        return pts
    i, _ = _locate_on_curve(hole, x)
    return pts[:i + 1] + [x] + pts[i + 1:]


def _both_closures(pts: list[RatPoint], hole: PolyCurve) -> list[list[RatPoint]]:
    j1 = _close_arc_through_hole(pts, hole)
    j2 = _close_arc_through_hole(list(reversed(pts)), hole)
    out = []
    for j in (j1, j2):
        try:
            validate_curve(j)
            out.append(j)
        except GeometryError:
            continue
    return out


def _push_off(jordan: list[RatPoint], delta: Fraction, side: str) -> list[RatPoint]:
    from .tubes import offset_closed
    c = validate_curve(jordan)
    return offset_closed(c, delta, side)


def slope_of(cls: CurveClassInW, w: Witness) -> Slope:
    """Farey coordinate of a curve class of a 4-holed witness.

    The standard curves separating holes {1,2} and {2,3} map to 0/1 and
    1/0; |p| and |q| count reduced crossings with the first two cut arcs,
    and the third cut arc fixes the sign: a curve of signed slope (p, q)
    meets it |p + q| times under the orientation convention used here.
    """
    if w.n != 4:
        raise NotFourHoled(f"witness has {w.n} holes")
    word = list(cls.word)
    p = sum(1 for (i, _) in word if i == 0)
    q = sum(1 for (i, _) in word if i == 1)
    r = sum(1 for (i, _) in word if i == 2)
    if p == 0 and q == 0:
        raise DoesNotCut("class misses both coordinate cut arcs")
    if p == 0 or q == 0:
        return slope(p, q)
    if r == p + q:
        return slope(p, q)
    if r == abs(p - q):
        return slope(p, -q)
    raise DoesNotCut(f"crossing counts ({p},{q},{r}) are not in minimal position")


def standard_twists(w: Witness):
    """PL Dehn twists along the 0/1 and 1/0 curves of a 4-holed witness.

    Returns ((twist1, matrix1), (twist2, matrix2)); twist k is supported
    on a rectangular annulus around holes {k-1, k} (0-based), and its
    matrix is the induced action on Farey slopes.  The annulus center is
    nudged off the cut-arc height so twisted polygons stay generic.
    """
    from .pltwist import PLTwist
    if w.n != 4:
        raise NotFourHoled(f"witness has {w.n} holes")
    nudge = Fraction(1, 997)
    out = []
    for k in (0, 1):
        left = min(p.x for p in w.holes[k].points)
        right = max(p.x for p in w.holes[k + 1].points)
        prev_right = (max(p.x for p in w.holes[k - 1].points)
                      if k >= 1 else Fraction(0))
        next_left = (min(p.x for p in w.holes[k + 2].points)
                     if k + 2 < w.n else Fraction(1))
        y_high = max(p.y for p in w.holes[k].points)
        cx = (left + right) / 2 + nudge / 7
        cy = HALF + nudge
        gap_l = left - prev_right
        gap_r = next_left - right
        wx_in = max(right - cx, cx - left) + min(gap_l, gap_r) / 4
        wx_out = max(right - cx, cx - left) + min(gap_l, gap_r) / 2
        room = 1 - y_high
        wy_in = (y_high - cy) + room / 4
        wy_out = (y_high - cy) + room / 2
        tw = PLTwist(RatPoint(cx, cy), (wx_in, wy_in), (wx_out, wy_out), +1)
        matrix = (((1, 0), (-2, 1)) if k == 0 else ((1, -2), (0, 1)))
        out.append((tw, matrix))
    return tuple(out)


def lower_bound_distance(a: PolyCurve, b: PolyCurve, w: Witness, eps) -> BoundCertificate:
    """Certified lower bound from the witness projection.

    For n = 4 the bound is ceil(max(0, d - 2) / 4) with d the Farey
    distance between chosen projection slopes (image diameter 2, per-edge
    movement 4).  For n > 4 only the coarse {0,1} classifier applies.
    """
    e = Fraction(eps)
    ok, bad = witness_check(w, e)
    if not ok:
        raise WitnessFails(f"hole {bad} violates the witness predicate")
    pa = project_to_witness(a, w)
    pb = project_to_witness(b, w)
    ca = min(pa, key=lambda k: k.canonical())
    cb = min(pb, key=lambda k: k.canonical())
    extra = {
        "witness_holes": [serialize_curve(h) for h in w.holes],
    }
    if w.n == 4:
        sa, sb = slope_of(ca, w), slope_of(cb, w)
        d = farey_distance(sa, sb)
        value = max(0, -(-max(0, d - 2) // 4))
        extra.update({"slope_a": repr(sa), "slope_b": repr(sb),
                      "farey_distance": d, "coarse": False})
    else:
        same = any(ka.same_class(kb) for ka in pa for kb in pb)
        value = 0 if same else 1
        extra.update({"coarse": True,
                      "word_a": list(map(list, ca.word)),
                      "word_b": list(map(list, cb.word))})
    return BoundCertificate(kind="lower", value=value, epsilon=e,
                            alpha=serialize_curve(a), beta=serialize_curve(b),
                            extra=extra)


def verify_lower_certificate(cert: BoundCertificate, a: PolyCurve, b: PolyCurve, eps) -> bool:
    try:
        if parse_curve(cert.alpha) != a or parse_curve(cert.beta) != b:
            return False
        holes = [parse_curve(t) for t in cert.extra["witness_holes"]]
        w = _witness_from_holes(holes)
        fresh = lower_bound_distance(a, b, w, eps)
        if fresh.value != cert.value:
            return False
        if cert.extra.get("coarse") != fresh.extra.get("coarse"):
            return False
        if not cert.extra.get("coarse"):
            if int(cert.extra["farey_distance"]) != int(fresh.extra["farey_distance"]):
                return False
        return True
    except Exception:
        return False


def _witness_from_holes(holes: list[PolyCurve]) -> Witness:
    """Rebuild the standardized cut system for a row of hole rectangles."""
    order = sorted(range(len(holes)), key=lambda i: min(p.x for p in holes[i].points))
    holes = [holes[i] for i in order]
    cuts = []
    for i in range(len(holes) - 1):
        right = max(p.x for p in holes[i].points)
        left = min(p.x for p in holes[i + 1].points)
        cuts.append(PolyArc([RatPoint(right, HALF), RatPoint(left, HALF)]))
    return Witness(holes=holes, cut_arcs=cuts)
