import random
from fractions import Fraction

import pytest

from balancedcurves.arrangement import (
    CentralityViolation,
    NotATree,
    bigon_faces,
    build_arrangement,
    direct_and_center,
    dual_tree,
)
from balancedcurves.geometry import (
    ArcLocator,
    NonGenericInput,
    PolyArc,
    point_in_polygon,
    pt,
    subarc,
    validate_curve,
)
from helpers import crossing_star_pair, generic_pair, random_subarc, star_polygon

SQ = validate_curve([pt("1/4", "1/4"), pt("3/4", "1/4"), pt("3/4", "3/4"), pt("1/4", "3/4")])
RECT = validate_curve([pt("1/8", "3/8"), pt("7/8", "3/8"), pt("7/8", "5/8"), pt("1/8", "5/8")])
INNER = validate_curve([pt("3/8", "3/8"), pt("5/8", "3/8"), pt("5/8", "5/8"), pt("3/8", "5/8")])


def test_single_curve_two_faces():
    arr = build_arrangement(SQ)
    assert len(arr.faces) == 2
    assert sorted(f.area for f in arr.faces) == [Fraction(1, 4), Fraction(3, 4)]
    assert sum(f.contains_infinity for f in arr.faces) == 1


def test_disjoint_nested_three_faces():
    arr = build_arrangement(SQ, INNER)
    assert len(arr.faces) == 3
    assert sum(f.area for f in arr.faces) == 1
    assert sorted(f.area for f in arr.faces) == [
        Fraction(1, 16), Fraction(3, 16), Fraction(3, 4)]


def test_euler_formula():
    # V - E + F = 1 + number of connected components on the sphere
    arr1 = build_arrangement(SQ, RECT)
    assert arr1.euler_characteristic() == 2
    arr2 = build_arrangement(SQ, INNER)
    assert arr2.euler_characteristic() == 3


def test_four_crossing_pair_faces_and_grid_oracle():
    arr = build_arrangement(SQ, RECT)
    # two closed curves crossing I times have I + 2 complementary faces
    assert len(arr.faces) == 6
    assert sum(f.area for f in arr.faces) == 1
    # grid point-location oracle: every sample lands in the face whose
    # side signature (parity against each curve) matches
    for i in range(1, 17):
        for j in range(1, 17):
            q = pt(Fraction(i, 17), Fraction(j, 17))
            f = arr.locate(q)
            if f is None:
                continue
            rep = arr.representative_point(f)
            assert point_in_polygon(q, SQ.points) == point_in_polygon(rep, SQ.points)
            assert point_in_polygon(q, RECT.points) == point_in_polygon(rep, RECT.points)


def test_face_area_sums_random_pairs():
    rng = random.Random(8)
    for _ in range(20):
        a, b = generic_pair(rng, k=8)
        arr = build_arrangement(a, b)
        assert sum(f.area for f in arr.faces) == 1


def test_bigons_disjoint_empty():
    arr = build_arrangement(SQ, INNER)
    assert bigon_faces(arr) == []


def test_bigons_two_crossings():
    rng = random.Random(9)
    a, b = crossing_star_pair(rng, 2)
    arr = build_arrangement(a, b)
    assert len(arr.faces) == 4
    assert len(bigon_faces(arr)) == 4  # every two-sided face, per side count


def test_ten_crossing_flower_has_ten_bigons():
    rng = random.Random(10)
    a, b = crossing_star_pair(rng, 10, k=20)
    arr = build_arrangement(a, b)
    bigons = bigon_faces(arr)
    assert len(arr.faces) == 12
    assert len(bigons) == 10
    assert sum(1 for f in arr.faces if not f.is_bigon()) == 2


def test_nongeneric_input_rejected():
    shifted = validate_curve([pt("1/4", "1/8"), pt("3/4", "1/8"),
                              pt("3/4", "1/4"), pt("1/8", "1/4")])
    with pytest.raises(NonGenericInput):
        build_arrangement(SQ, shifted)


def test_dual_tree_free_endpoints_single_vertex():
    a1 = PolyArc([pt("3/10", "1/2"), pt("7/10", "1/2")])
    b1 = PolyArc([pt("1/2", "3/10"), pt("1/2", "7/10")])
    t, arr = dual_tree(a1, b1)
    assert len(t.vertices) == 1
    assert t.edges == []


def test_dual_tree_closed_beta_two_crossings_path():
    # subarc through the full left edge of the square, crossing RECT twice
    al = subarc(SQ, ArcLocator(2, Fraction(1, 2)), ArcLocator(0, Fraction(1, 2)))
    t, arr = dual_tree(al, RECT)
    assert len(arr.faces) == 3
    assert len(t.edges) == 2
    degs = sorted(len(t.neighbors(v)) for v in t.vertices)
    assert degs == [1, 1, 2]


def test_dual_tree_closed_alpha_needs_side():
    with pytest.raises(ValueError):
        dual_tree(SQ, RECT)


def test_dual_tree_degree_law_closed_pair():
    # vertex degree equals half the face side count, per side
    for side in ("inside", "outside"):
        t, arr = dual_tree(SQ, RECT, side=side)
        for v in t.vertices:
            assert len(t.neighbors(v)) == arr.faces[v].side_count // 2


def test_direct_and_center_path_tree():
    al = subarc(SQ, ArcLocator(2, Fraction(1, 2)), ArcLocator(0, Fraction(1, 2)))
    t, arr = dual_tree(al, RECT)
    td = direct_and_center(t, arr)
    assert td.central is not None
    # middle vertex of the path is the sink: both edges point to it
    heads = {v for (_, v) in td.directions.values()}
    assert td.central in heads
    assert all(len(td.split_by_edge(i)) == 2 for i in range(len(td.edges)))


def test_direct_and_center_zero_edges():
    a1 = PolyArc([pt("3/10", "1/2"), pt("7/10", "1/2")])
    b1 = PolyArc([pt("1/2", "3/10"), pt("1/2", "7/10")])
    t, arr = dual_tree(a1, b1)
    td = direct_and_center(t, arr)
    assert td.central == t.vertices[0]


def test_central_vertex_unique_on_random_pairs():
    rng = random.Random(12)
    done = 0
    while done < 30:
        a, b = generic_pair(rng, k=8)
        try:
            ap = random_subarc(rng, a)
            bp = random_subarc(rng, b)
        except RuntimeError:
            continue
        from balancedcurves.geometry import pair_status
        if not pair_status(ap, bp).generic:
            continue
        try:
            t, arr = dual_tree(ap, bp)
        except (NonGenericInput, NotATree):
            continue
        td = direct_and_center(t, arr)
        assert td.central is not None
        done += 1


def test_star_tree_hub_central():
    # four-crossing flower: each side tree is a star with a heavy hub
    rng = random.Random(13)
    a, b = crossing_star_pair(rng, 4)
    for side in ("inside", "outside"):
        t, arr = dual_tree(a, b, side=side)
        td = direct_and_center(t, arr)
        if len(t.edges) >= 2:
            hub = max(t.vertices, key=lambda v: len(t.neighbors(v)))
            assert td.central == hub


def test_representative_points_inside_their_faces():
    arr = build_arrangement(SQ, RECT)
    for f in arr.faces:
        rep = arr.representative_point(f)
        assert arr.locate(rep) is f
