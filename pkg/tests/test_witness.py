import random
from fractions import Fraction

import pytest

from balancedcurves.farey import farey_distance, mat_mul, mcg_action, slope
from balancedcurves.geometry import PolyArc, pair_status, pt, validate_curve
from balancedcurves.witness import (
    CurveClassInW,
    DoesNotCut,
    InfeasibleParameters,
    NotFourHoled,
    Witness,
    WitnessFails,
    _class_of_curve,
    cuts_witness,
    lower_bound_distance,
    make_witness,
    project_to_witness,
    slope_of,
    standard_twists,
    witness_check,
)
from balancedcurves.balanced import verify_certificate
from helpers import balanced_curve


def test_make_witness_uniform_areas():
    w = make_witness(Fraction(1, 2), 4, "uniform")
    assert [h.area for h in w.holes] == [Fraction(1, 5)] * 4
    assert w.area == Fraction(1, 5)
    assert len(w.cut_arcs) == 3


def test_make_witness_uniform_infeasible():
    with pytest.raises(InfeasibleParameters):
        make_witness(Fraction(1, 10), 4, "uniform")


def test_make_witness_skewed_example():
    w = make_witness(Fraction(1, 2), 12, "skewed", eps1=Fraction(1, 3))
    assert w.holes[0].area == Fraction(1, 3)
    assert w.area == Fraction(1, 18)
    assert witness_check(w, Fraction(1, 2))[0]


def test_make_witness_skewed_infeasible():
    with pytest.raises(InfeasibleParameters):
        make_witness(Fraction(1, 3), 4, "skewed", eps1=Fraction(1, 4))


def test_witness_check_boundary_strict():
    w = make_witness(Fraction(1, 2), 4, "uniform")
    # area(A_i) + area(W) = 2/5 exactly: strict inequality fails
    ok, bad = witness_check(w, Fraction(2, 5))
    assert not ok and bad == 0


def test_witness_check_oversized_hole():
    w = make_witness(Fraction(1, 2), 5, "uniform")
    ok, bad = witness_check(w, Fraction(1, 2))
    assert ok
    # fake an oversized hole by checking a smaller epsilon
    ok2, bad2 = witness_check(w, Fraction(1, 4))
    assert not ok2


def test_cuts_curve_inside_hole():
    w = make_witness(Fraction(1, 2), 4, "uniform")
    h0 = w.holes[0]
    xs = sorted(p.x for p in h0.points)
    ys = sorted(p.y for p in h0.points)
    mx, my = (xs[0] + xs[-1]) / 2, (ys[0] + ys[-1]) / 2
    wd, ht = (xs[-1] - xs[0]) / 8, (ys[-1] - ys[0]) / 8
    inside = validate_curve([pt(mx - wd, my - ht), pt(mx + wd, my - ht),
                             pt(mx + wd, my + ht), pt(mx - wd, my + ht)])
    r = cuts_witness(inside, w)
    assert not r.cuts
    assert r.closed_components == [] and r.arc_components == []


def test_cuts_peripheral_parallel_curve():
    w = make_witness(Fraction(1, 2), 4, "uniform")
    h0 = w.holes[0]
    xs = sorted(p.x for p in h0.points)
    ys = sorted(p.y for p in h0.points)
    m = Fraction(1, 200)
    around = validate_curve([pt(xs[0] - m, ys[0] - m), pt(xs[-1] + m, ys[0] - m),
                             pt(xs[-1] + m, ys[-1] + m), pt(xs[0] - m, ys[-1] + m)])
    r = cuts_witness(around, w)
    assert not r.cuts
    assert len(r.closed_components) == 1
    assert r.closed_components[0][1] == "peripheral"


def test_cuts_separating_curve_essential():
    w = make_witness(Fraction(1, 2), 4, "uniform")
    sep = validate_curve([pt("1/64", "1/64"), pt("1/2", "1/64"),
                          pt("1/2", "63/64"), pt("1/64", "63/64")])
    # adjust so it separates holes {0,1} from {2,3}: x=1/2 lies in the gap?
    r = cuts_witness(sep, w)
    assert r.cuts


def test_balanced_curves_cut_passing_witness():
    w = make_witness(Fraction(1, 2), 4, "uniform")
    rng = random.Random(31)
    done = 0
    while done < 25:
        c = balanced_curve(rng, Fraction(1, 2), k=10)
        try:
            r = cuts_witness(c, w)
        except Exception:
            continue
        assert r.cuts
        done += 1


def test_project_separating_curve_classes():
    w = make_witness(Fraction(1, 2), 4, "uniform")
    sep = validate_curve([pt("1/64", "1/64"), pt("1/2", "1/64"),
                          pt("1/2", "63/64"), pt("1/64", "63/64")])
    cls = project_to_witness(sep, w)
    assert len(cls) == 1
    assert slope_of(cls[0], w) == slope(0, 1)
    parts = sorted(len(s) for s in cls[0].hole_partition)
    assert parts == [2, 2]


def test_project_band_through_all_holes():
    w = make_witness(Fraction(1, 2), 4, "uniform")
    band = validate_curve([pt("1/32", "29/64"), pt("31/32", "29/64"),
                           pt("31/32", "35/64"), pt("1/32", "35/64")])
    cls = project_to_witness(band, w)
    assert 1 <= len(cls) <= 4
    slopes = {slope_of(k, w) for k in cls}
    assert slope(0, 1) in slopes
    # classes pairwise within one Farey step (image diameter <= 2)
    for k1 in cls:
        for k2 in cls:
            s1, s2 = slope_of(k1, w), slope_of(k2, w)
            assert farey_distance(s1, s2) <= 1


def test_project_arcs_unlinked_pairs_same_class():
    # a curve meeting the witness in arcs over unlinked hole pairs gives
    # matching surgered classes
    w = make_witness(Fraction(1, 2), 4, "uniform")
    band = validate_curve([pt("1/32", "29/64"), pt("31/32", "29/64"),
                           pt("31/32", "35/64"), pt("1/32", "35/64")])
    cls = project_to_witness(band, w)
    reps = [k.representative for k in cls if k.representative is not None]
    for r in reps:
        for hole in w.holes:
            assert pair_status(r, hole).kind == "disjoint"


def test_standard_curve_normalizations():
    w = make_witness(Fraction(1, 2), 4, "uniform")
    holes = w.holes
    x1_left = min(p.x for p in holes[1].points)
    x2_right = max(p.x for p in holes[2].points)
    x3_left = min(p.x for p in holes[3].points)
    g = x1_left - max(p.x for p in holes[0].points)
    oval23 = validate_curve([pt(x1_left - g / 2, "1/32"),
                             pt(x2_right + (x3_left - x2_right) / 2, "1/32"),
                             pt(x2_right + (x3_left - x2_right) / 2, "31/32"),
                             pt(x1_left - g / 2, "31/32")])
    assert slope_of(_class_of_curve(oval23, w), w) == slope(1, 0)


def test_slope_requires_four_holes():
    w = make_witness(Fraction(1, 2), 5, "uniform")
    k = CurveClassInW(word=((0, 1),), hole_partition=(frozenset([0]), frozenset([1, 2, 3, 4])))
    with pytest.raises(NotFourHoled):
        slope_of(k, w)


def test_twists_match_matrix_action():
    w = make_witness(Fraction(1, 2), 4, "uniform")
    (t1, m1), (t2, m2) = standard_twists(w)
    holes = w.holes
    x1_left = min(p.x for p in holes[1].points)
    x2_right = max(p.x for p in holes[2].points)
    x3_left = min(p.x for p in holes[3].points)
    g = x1_left - max(p.x for p in holes[0].points)
    base = validate_curve([pt(x1_left - g / 2, "1/32"),
                           pt(x2_right + (x3_left - x2_right) / 2, "1/32"),
                           pt(x2_right + (x3_left - x2_right) / 2, "31/32"),
                           pt(x1_left - g / 2, "31/32")])
    s0 = slope_of(_class_of_curve(base, w), w)
    rng = random.Random(40)
    matched = 0
    for _ in range(20):
        word = [rng.choice([(t1, m1, 1), (t1, m1, -1), (t2, m2, 1), (t2, m2, -1)])
                for _ in range(rng.randrange(1, 4))]
        cur = base
        mexp = ((1, 0), (0, 1))
        for (tw, m, sgn) in word:
            cur = (tw if sgn > 0 else tw.inverse()).apply_curve(cur)
            minv = ((m[0][0], -m[0][1]), (-m[1][0], m[1][1]))
            mexp = mat_mul(m if sgn > 0 else minv, mexp)
        assert slope_of(_class_of_curve(cur, w), w) == mcg_action(mexp, s0)
        matched += 1
    assert matched == 20


def test_lower_bound_same_projection_zero():
    w = make_witness(Fraction(1, 2), 4, "uniform")
    sep = validate_curve([pt("1/64", "1/64"), pt("1/2", "1/64"),
                          pt("1/2", "63/64"), pt("1/64", "63/64")])
    sep2 = validate_curve([pt("1/50", "1/50"), pt("99/200", "1/50"),
                           pt("99/200", "49/50"), pt("1/50", "49/50")])
    cert = lower_bound_distance(sep, sep2, w, Fraction(1, 2))
    assert cert.value == 0
    assert verify_certificate(cert, sep, sep2, Fraction(1, 2))


def test_lower_bound_formula():
    from balancedcurves.experiments import lower_value_from_distance
    assert lower_value_from_distance(10) == 2
    assert lower_value_from_distance(2) == 0
    assert lower_value_from_distance(0) == 0
    assert lower_value_from_distance(7) == 2
    assert lower_value_from_distance(12) == 3


def test_lower_bound_witness_fails():
    w = make_witness(Fraction(1, 2), 4, "uniform")
    sep = validate_curve([pt("1/64", "1/64"), pt("1/2", "1/64"),
                          pt("1/2", "63/64"), pt("1/64", "63/64")])
    with pytest.raises(WitnessFails):
        lower_bound_distance(sep, sep, w, Fraction(1, 5))


def test_lower_bound_coarse_n_gt_4():
    w = make_witness(Fraction(1, 2), 5, "uniform")
    sep = validate_curve([pt("1/64", "1/64"), pt("1/2", "1/64"),
                          pt("1/2", "63/64"), pt("1/64", "63/64")])
    cert = lower_bound_distance(sep, sep, w, Fraction(1, 2))
    assert cert.extra["coarse"] is True
    assert cert.value in (0, 1)
