import random
from fractions import Fraction

import pytest

from balancedcurves.balanced import (
    AdmissibilityLost,
    Inadmissible,
    NotBalancedInput,
    TooManyNonBigons,
    adjacent,
    admissible,
    balance_area,
    construct_projection_equator,
    is_balanced,
    is_minimal_pair,
    minimal_pair,
    projection_membership,
    shrink_chain,
    two_nonbigon_certificate,
    upper_bound_distance,
    verify_certificate,
)
from balancedcurves.certificates import BoundCertificate
from balancedcurves.geometry import (
    ArcLocator,
    PolyArc,
    pair_status,
    pt,
    subarc,
    validate_curve,
)
from balancedcurves.tubes import NoSlack
from helpers import braided_pair, crossing_star_pair, generic_pair, star_polygon

SQ = validate_curve([pt("1/4", "1/4"), pt("3/4", "1/4"), pt("3/4", "3/4"), pt("1/4", "3/4")])
RECT = validate_curve([pt("1/8", "3/8"), pt("7/8", "3/8"), pt("7/8", "5/8"), pt("1/8", "5/8")])
EQUATOR = validate_curve([pt("1/8", "1/8"), pt("7/8", "1/8"),
                          pt("7/8", "19/24"), pt("1/8", "19/24")])


def test_equator_area():
    assert EQUATOR.area == Fraction(1, 2)


def test_is_balanced_equator_any_eps():
    for eps in (Fraction(1, 10), Fraction(1, 4), Fraction(1, 2)):
        assert is_balanced(EQUATOR, eps)


def test_is_balanced_quarter_square():
    assert not is_balanced(SQ, Fraction(1, 2))
    assert is_balanced(SQ, Fraction(1, 4))  # non-strict boundary case


def test_is_balanced_eps_monotone():
    rng = random.Random(1)
    for _ in range(10):
        c = star_polygon(rng)
        if is_balanced(c, Fraction(1, 4)):
            assert is_balanced(c, Fraction(1, 8))


def test_adjacent_disjoint_nested_balanced():
    # two distinct equators are never disjoint (the region between two
    # nested curves has positive area), so the disjoint-edge case is
    # exercised with nested eps-balanced curves below the 1/2 scale
    outer = validate_curve([pt("1/8", "1/8"), pt("7/8", "1/8"),
                            pt("7/8", "7/8"), pt("1/8", "7/8")])
    inner = validate_curve([pt("1/4", "1/4"), pt("3/4", "1/4"),
                            pt("3/4", "3/4"), pt("1/4", "3/4")])
    st = adjacent(outer, inner, Fraction(1, 4))
    assert st.kind == "disjoint"
    assert st.adjacent


def test_adjacent_four_crossings_not_adjacent():
    assert is_balanced(RECT, Fraction(1, 8))
    sq2 = validate_curve([pt("5/16", "1/16"), pt("11/16", "1/16"),
                          pt("11/16", "15/16"), pt("5/16", "15/16")])
    st = adjacent(RECT, sq2, Fraction(1, 8))
    assert st.kind == "not_adjacent"
    assert len(st.points) == 4


def test_adjacent_two_crossings():
    rng = random.Random(2)
    a, b = crossing_star_pair(rng, 2)
    st = adjacent(a, b, Fraction(1, 4))
    assert st.kind == "two_transverse"
    assert len(st.points) == 2


def test_adjacent_requires_balanced():
    small = validate_curve([pt("1/2", "1/2"), pt("5/8", "1/2"), pt("5/8", "5/8"), pt("1/2", "5/8")])
    with pytest.raises(NotBalancedInput):
        adjacent(small, EQUATOR, Fraction(1, 4))


def test_adjacency_is_eps_independent():
    rng = random.Random(3)
    a, b = crossing_star_pair(rng, 2)
    kinds = {adjacent(a, b, e).kind for e in (Fraction(1, 8), Fraction(1, 4))}
    assert len(kinds) == 1


def test_admissible_two_crossing_equators():
    # two equators crossing twice: all faces well below 1 - eps for eps = 1/4
    rng = random.Random(4)
    a, b = crossing_star_pair(rng, 2)
    ok, off = admissible(a, b, Fraction(1, 32))
    assert ok and off is None


def test_inadmissible_tiny_pieces():
    a = PolyArc([pt("45/100", "45/100"), pt("55/100", "45/100")])
    b = PolyArc([pt("45/100", "55/100"), pt("55/100", "55/100")])
    ok, face = admissible(a, b, Fraction(1, 4))
    assert not ok
    assert face.contains_infinity
    assert face.area > Fraction(3, 4)


def test_inadmissible_disjoint_nested_annulus():
    # a big middle annulus face exceeds 1 - eps; note that this forces
    # the inner curve to be unbalanced (a balanced disjoint pair always
    # leaves every face at most 1 - eps)
    outer = validate_curve([pt("1/16", "1/16"), pt("15/16", "1/16"),
                            pt("15/16", "15/16"), pt("1/16", "15/16")])
    inner = validate_curve([pt("15/32", "15/32"), pt("17/32", "15/32"),
                            pt("17/32", "17/32"), pt("15/32", "17/32")])
    ok, face = admissible(outer, inner, Fraction(1, 4))
    assert not ok
    assert face.area > Fraction(3, 4)


def test_projection_membership_disjoint_vacuous():
    arc_a = PolyArc([pt("5/16", "29/32"), pt("11/16", "29/32")])
    arc_b = PolyArc([pt("5/16", "31/32"), pt("11/16", "31/32")])
    got = projection_membership(EQUATOR, arc_a, arc_b)
    assert got.ok


def test_projection_membership_equator_condition():
    arc_a = PolyArc([pt("5/16", "29/32"), pt("11/16", "29/32")])
    arc_b = PolyArc([pt("5/16", "31/32"), pt("11/16", "31/32")])
    got = projection_membership(SQ, arc_a, arc_b)
    assert not got.ok
    assert got.condition == "equator"


def test_projection_membership_component_count():
    # gamma crossing one component four times fails condition 3
    gamma = validate_curve([pt("1/8", "1/8"), pt("7/8", "1/8"),
                            pt("7/8", "19/24"), pt("1/8", "19/24")])
    beta = PolyArc([pt("1/16", "1/2"), pt("15/16", "1/2"),
                    pt("15/16", "2/3"), pt("1/16", "2/3")])
    alpha = PolyArc([pt("1/16", "31/32"), pt("15/16", "31/32")])
    st = pair_status(gamma, beta)
    assert st.kind == "transverse" and len(st.points) == 4
    got = projection_membership(gamma, alpha, beta)
    assert not got.ok
    assert got.condition == "component-crossings"


def test_balance_area_to_half():
    # note: a centered 1/4-area square cannot reach 1/2 with one
    # rectangular finger inside the unit square (side + height >= 1), so
    # the single-finger example uses a wide rectangle with headroom
    c = validate_curve([pt("1/32", "1/8"), pt("31/32", "1/8"),
                        pt("31/32", "1/2"), pt("1/32", "1/2")])
    out = balance_area(c, Fraction(1, 2))
    assert out.area == Fraction(1, 2)
    assert len(out.points) == len(c.points) + 4


def test_balance_area_identity():
    assert balance_area(SQ, SQ.area) is SQ


def test_balance_area_blocked_no_slack():
    ring = validate_curve([pt("3/16", "3/16"), pt("13/16", "3/16"),
                           pt("13/16", "13/16"), pt("3/16", "13/16")])
    with pytest.raises(NoSlack):
        balance_area(SQ, Fraction("7/10"), keep_clear=[ring])


def test_balance_area_keeps_crossing_pattern():
    out = balance_area(SQ, Fraction(9, 32), keep_clear=[RECT])
    assert out.area == Fraction(9, 32)
    assert set(pair_status(out, RECT).points) == set(pair_status(SQ, RECT).points)


def test_construct_projection_equator_disjoint_case():
    arc_a = PolyArc([pt("3/10", "9/10"), pt("7/10", "9/10")])
    got = construct_projection_equator(arc_a, RECT, Fraction(1, 8))
    assert got.area == Fraction(1, 2)
    assert projection_membership(got, arc_a, RECT).ok


def test_construct_projection_equator_two_crossings():
    al = subarc(SQ, ArcLocator(2, Fraction(1, 2)), ArcLocator(0, Fraction(1, 2)))
    got = construct_projection_equator(al, RECT, Fraction(1, 8))
    assert projection_membership(got, al, RECT).ok


def test_construct_projection_equator_inadmissible():
    a = PolyArc([pt("45/100", "45/100"), pt("55/100", "45/100")])
    b = PolyArc([pt("45/100", "55/100"), pt("55/100", "55/100")])
    with pytest.raises(Inadmissible):
        construct_projection_equator(a, b, Fraction(1, 4))


def test_membership_monotone_under_beta_shrink():
    rng = random.Random(6)
    done = 0
    while done < 6:
        a, b = generic_pair(rng, k=8)
        st = pair_status(a, b)
        if st.kind != "transverse" or len(st.points) < 2:
            continue
        try:
            from helpers import random_subarc
            ap = random_subarc(rng, a)
            bp = random_subarc(rng, b)
            if not pair_status(ap, bp).generic:
                continue
            ok, _ = admissible(ap, bp, Fraction(1, 16))
            if not ok:
                continue
            g = construct_projection_equator(ap, bp, Fraction(1, 16))
        except Exception:
            continue
        # beta sub-subarc: members of the projection of (a', b') are
        # members of the projection of (a', b'')
        bpp = _shrink_arc_slightly(bp)
        if bpp is None or not pair_status(ap, bpp).generic:
            continue
        if not pair_status(g, bpp).generic:
            continue
        assert projection_membership(g, ap, bpp).ok
        done += 1


def _shrink_arc_slightly(arc: PolyArc):
    pts = list(arc.points)
    if len(pts) < 3:
        mid = pt((pts[0].x + pts[1].x) / 2, (pts[0].y + pts[1].y) / 2)
        try:
            return PolyArc([pts[0], mid])
        except Exception:
            return None
    try:
        return PolyArc(pts[:-1])
    except Exception:
        return None


def test_two_nonbigon_disjoint_pair():
    inner = validate_curve([pt("5/16", "5/16"), pt("11/16", "5/16"),
                            pt("11/16", "11/16"), pt("5/16", "11/16")])
    outer = validate_curve([pt("1/8", "1/8"), pt("7/8", "1/8"),
                            pt("7/8", "7/8"), pt("1/8", "7/8")])
    mid, cert = two_nonbigon_certificate(inner, outer, Fraction(9, 64))
    assert mid.area == Fraction(1, 2)
    assert adjacent(inner, mid, Fraction(9, 64)).adjacent
    assert adjacent(outer, mid, Fraction(9, 64)).adjacent
    assert cert.value == 2
    assert verify_certificate(cert, inner, outer, Fraction(9, 64))


def test_two_nonbigon_two_crossings():
    rng = random.Random(7)
    a, b = crossing_star_pair(rng, 2)
    mid, cert = two_nonbigon_certificate(a, b, Fraction(1, 4))
    assert adjacent(a, mid, Fraction(1, 4)).adjacent
    assert adjacent(b, mid, Fraction(1, 4)).adjacent
    assert verify_certificate(cert, a, b, Fraction(1, 4))


def test_two_nonbigon_flower_four_crossings():
    rng = random.Random(8)
    a, b = crossing_star_pair(rng, 4)
    mid, cert = two_nonbigon_certificate(a, b, Fraction(1, 4))
    for c in (a, b):
        st = pair_status(mid, c)
        assert st.generic and len(st.points) in (0, 2)
    assert verify_certificate(cert, a, b, Fraction(1, 4))


def test_two_nonbigon_rejects_braided():
    rng = random.Random(400)
    a, b = braided_pair(rng)
    with pytest.raises(TooManyNonBigons):
        two_nonbigon_certificate(a, b, Fraction(1, 16))


def test_shrink_chain_counts():
    rng = random.Random(9)
    a, b = crossing_star_pair(rng, 6, k=14)
    chain = shrink_chain(a, b, Fraction(1, 4))
    counts = [len(pair_status(arc, b).points) for arc in chain]
    assert counts == [6, 5, 4, 3, 2, 1, 0]


def test_shrink_chain_two_crossings():
    rng = random.Random(10)
    a, b = crossing_star_pair(rng, 2)
    chain = shrink_chain(a, b, Fraction(1, 4))
    counts = [len(pair_status(arc, b).points) for arc in chain]
    assert counts == [2, 1, 0]


def test_shrink_chain_admissibility_lost_with_unbalanced_companion():
    # a tiny companion curve leaves a huge complementary face
    a = validate_curve([pt("1/4", "1/4"), pt("3/4", "1/4"), pt("3/4", "3/4"), pt("1/4", "3/4")])
    tiny = validate_curve([pt("23/32", "15/32"), pt("25/32", "15/32"),
                           pt("25/32", "17/32"), pt("23/32", "17/32")])
    st = pair_status(a, tiny)
    assert st.kind == "transverse" and len(st.points) == 2
    with pytest.raises(AdmissibilityLost) as exc:
        shrink_chain(a, tiny, Fraction(1, 4))
    assert exc.value.index == 0


def test_upper_bound_identical():
    cert = upper_bound_distance(EQUATOR, EQUATOR, Fraction(1, 4))
    assert cert.value == 0
    assert verify_certificate(cert, EQUATOR, EQUATOR, Fraction(1, 4))


def test_upper_bound_adjacent_pair():
    rng = random.Random(11)
    a, b = crossing_star_pair(rng, 2)
    cert = upper_bound_distance(a, b, Fraction(1, 4))
    assert cert.value == 1
    assert cert.chain == []
    assert verify_certificate(cert, a, b, Fraction(1, 4))


def test_upper_bound_two_nonbigon_pair():
    rng = random.Random(12)
    a, b = crossing_star_pair(rng, 4)
    cert = upper_bound_distance(a, b, Fraction(1, 4))
    assert cert.value == 2
    assert verify_certificate(cert, a, b, Fraction(1, 4))


def test_upper_bound_braided_chain():
    rng = random.Random(401)
    a, b = braided_pair(rng)
    eps = Fraction(1, 16)
    cert = upper_bound_distance(a, b, eps)
    crossings = len(pair_status(a, b).points)
    assert cert.value <= 2 + 8 * crossings
    assert verify_certificate(cert, a, b, eps)
    # every chain member is an exact equator
    from balancedcurves.curveio import parse_curve
    for text in cert.chain:
        assert parse_curve(text).area == Fraction(1, 2)


def test_certificate_tampering_detected():
    rng = random.Random(13)
    a, b = crossing_star_pair(rng, 4)
    eps = Fraction(1, 4)
    cert = upper_bound_distance(a, b, eps)
    assert verify_certificate(cert, a, b, eps)
    # tamper: value
    t1 = BoundCertificate.from_json(cert.to_json())
    t1.value += 1
    assert not verify_certificate(t1, a, b, eps)
    # tamper: hop weight
    t2 = BoundCertificate.from_json(cert.to_json())
    t2.hops[0]["weight"] = 7
    assert not verify_certificate(t2, a, b, eps)
    # tamper: drop a chain member
    if cert.chain:
        t3 = BoundCertificate.from_json(cert.to_json())
        t3.chain = t3.chain[1:]
        assert not verify_certificate(t3, a, b, eps)
    # tamper: perturb an equator vertex (area leaves 1/2)
    if cert.chain:
        t4 = BoundCertificate.from_json(cert.to_json())
        lines = t4.chain[0].splitlines()
        x, y = lines[0].split()
        lines[0] = f"{x} {Fraction(y) + Fraction(1, 1000)}"
        t4.chain[0] = "\n".join(lines) + "\n"
        assert not verify_certificate(t4, a, b, eps)


def test_minimal_pair_shrinks_and_shares():
    rng = random.Random(402)
    a, b = braided_pair(rng)
    eps = Fraction(1, 16)
    # long subarcs carrying all crossings
    chain_a = shrink_chain(a, b, eps)
    chain_b = shrink_chain(b, a, eps)
    ap, bp = chain_a[0], chain_b[0]
    if not pair_status(ap, bp).generic:
        pytest.skip("subarc pair not generic")
    ok, _ = admissible(ap, bp, eps)
    if not ok:
        pytest.skip("subarc pair not admissible")
    a2, b2, eta = minimal_pair(ap, bp, eps)
    assert is_minimal_pair(a2, b2, eps)
    assert projection_membership(eta, a2, b2).ok
    assert projection_membership(eta, ap, bp).ok


def test_minimal_pair_already_minimal():
    # short crossing arcs: any shrink drops the only crossing and leaves
    # the huge outer face, so the pair is already minimal at small eps
    a = PolyArc([pt("2/5", "1/2"), pt("3/5", "1/2")])
    b = PolyArc([pt("1/2", "2/5"), pt("1/2", "3/5")])
    eps = Fraction(1, 2)
    ok, _ = admissible(a, b, eps)
    if not ok:
        pytest.skip("pair not admissible at 1/2")
    if is_minimal_pair(a, b, eps):
        a2, b2, eta = minimal_pair(a, b, eps)
        assert a2 == a and b2 == b
        assert projection_membership(eta, a, b).ok
