import random
from fractions import Fraction

import pytest

from balancedcurves.geometry import (
    ArcLocator,
    DegenerateVertex,
    InvalidLocator,
    NonGenericInput,
    NotSimple,
    OutOfDomain,
    PolyArc,
    RatPoint,
    enclosed_area,
    pair_status,
    point_in_polygon,
    pt,
    segment_crossing,
    subarc,
    validate_curve,
)
from helpers import random_curve, star_polygon

SQUARE = [pt("1/4", "1/4"), pt("3/4", "1/4"), pt("3/4", "3/4"), pt("1/4", "3/4")]


def test_validate_square():
    c = validate_curve(SQUARE)
    assert c.area == Fraction(1, 4)


def test_validate_bowtie_not_simple():
    with pytest.raises(NotSimple):
        validate_curve([pt("1/4", "1/4"), pt("3/4", "3/4"),
                        pt("3/4", "1/4"), pt("1/4", "3/4")])


def test_validate_boundary_point_out_of_domain():
    with pytest.raises(OutOfDomain):
        validate_curve([pt(0, "1/4"), pt("3/4", "1/4"), pt("1/2", "3/4")])


def test_validate_collinear_triple():
    with pytest.raises(DegenerateVertex):
        validate_curve([pt("1/4", "1/4"), pt("1/2", "1/4"),
                        pt("3/4", "1/4"), pt("1/2", "3/4")])


def test_validate_reorients():
    c = validate_curve(list(reversed(SQUARE)))
    assert c.area == Fraction(1, 4)


def test_enclosed_area_rectangle():
    r = validate_curve([pt("1/8", "1/8"), pt("7/8", "1/8"),
                        pt("7/8", "5/8"), pt("1/8", "5/8")])
    assert enclosed_area(r) == Fraction(3, 8)


def _ear_clip_oracle(points):
    """Independent triangulation-based area: fresh ear clipper."""
    pts = list(points)

    def cross(o, a, b):
        return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)

    if sum(p.x * q.y - q.x * p.y
           for p, q in zip(pts, pts[1:] + pts[:1])) < 0:
        pts.reverse()
    total = Fraction(0)
    while len(pts) > 2:
        n = len(pts)
        for i in range(n):
            a, b, c = pts[i - 1], pts[i], pts[(i + 1) % n]
            if cross(a, b, c) <= 0:
                continue
            ok = True
            for q in pts:
                if q in (a, b, c):
                    continue
                if (cross(a, b, q) >= 0 and cross(b, c, q) >= 0
                        and cross(c, a, q) >= 0):
                    ok = False
                    break
            if ok:
                total += cross(a, b, c) / 2
                del pts[i]
                break
        else:
            raise AssertionError("oracle found no ear")
    return total


def test_area_matches_triangulation_oracle_random_12gons():
    rng = random.Random(11)
    for _ in range(25):
        c = star_polygon(rng, k=12)
        assert c.area == _ear_clip_oracle(c.points)


def test_pair_status_disjoint_nested():
    outer = validate_curve(SQUARE)
    inner = validate_curve([pt("3/8", "3/8"), pt("5/8", "3/8"),
                            pt("5/8", "5/8"), pt("3/8", "5/8")])
    assert pair_status(outer, inner).kind == "disjoint"


def test_pair_status_transverse_four_points():
    sq = validate_curve(SQUARE)
    rect = validate_curve([pt("1/8", "3/8"), pt("7/8", "3/8"),
                           pt("7/8", "5/8"), pt("1/8", "5/8")])
    st = pair_status(sq, rect)
    assert st.kind == "transverse"
    assert len(st.points) == 4
    # brute-force oracle over all segment pairs
    brute = set()
    for sa in sq.edges():
        for sb in rect.edges():
            x = segment_crossing(*sa, *sb)
            if x is not None:
                brute.add(x)
    assert set(st.points) == brute


def test_pair_status_shared_edge_nongeneric():
    a = validate_curve(SQUARE)
    b = validate_curve([pt("1/4", "1/4"), pt("3/4", "1/4"),
                        pt("3/4", "1/8"), pt("1/4", "1/8")])
    assert pair_status(a, b).kind == "nongeneric"


def test_pair_status_symmetric():
    rng = random.Random(3)
    for _ in range(10):
        a = random_curve(rng, k=8)
        b = random_curve(rng, k=8)
        s1 = pair_status(a, b)
        s2 = pair_status(b, a)
        assert s1.kind == s2.kind
        assert set(s1.points) == set(s2.points)


def test_transverse_count_even_for_closed_curves():
    rng = random.Random(4)
    found = 0
    while found < 12:
        a = random_curve(rng, k=8)
        b = random_curve(rng, k=8)
        st = pair_status(a, b)
        if st.kind == "transverse":
            found += 1
            assert len(st.points) % 2 == 0


def test_subarc_full_minus_point():
    c = validate_curve(SQUARE)
    a = subarc(c, ArcLocator(0, Fraction(1, 4)), ArcLocator(0, Fraction(1, 8)))
    assert len(a.points) == len(c.points) + 2


def test_subarc_same_edge_short():
    c = validate_curve(SQUARE)
    a = subarc(c, ArcLocator(0, Fraction(1, 8)), ArcLocator(0, Fraction(1, 4)))
    assert len(a.points) == 2


def test_subarc_same_locator_invalid():
    c = validate_curve(SQUARE)
    with pytest.raises(InvalidLocator):
        subarc(c, ArcLocator(0, Fraction(1, 8)), ArcLocator(0, Fraction(1, 8)))


def test_subarc_composition_covers_every_edge_once():
    c = validate_curve(SQUARE)
    p = ArcLocator(0, Fraction(1, 3))
    q = ArcLocator(2, Fraction(2, 5))
    a1 = subarc(c, p, q)
    a2 = subarc(c, q, p)

    def lengths(arc):
        return sum(abs(u.x - v.x) + abs(u.y - v.y) for u, v in arc.edges())

    perimeter = sum(abs(u.x - v.x) + abs(u.y - v.y) for u, v in c.edges())
    assert lengths(a1) + lengths(a2) == perimeter


def test_point_in_polygon():
    c = validate_curve(SQUARE)
    assert point_in_polygon(pt("1/2", "1/2"), c.points)
    assert not point_in_polygon(pt("1/10", "1/2"), c.points)


def test_arc_simplicity_enforced():
    with pytest.raises(NotSimple):
        PolyArc([pt("1/4", "1/2"), pt("3/4", "1/2"),
                 pt("1/2", "1/4"), pt("1/2", "3/4")])
