"""Named experiment pipelines with fixed CSV schemas.

orbit-growth: distances d(M^n s0, s0) in the Farey graph with the
coarse lower-bound values derived from them.

two-scale: a witness whose distinguished boundary is balanced at the
small scale certifies an upper bound of 2 there, while the projection
lower bound at the large scale grows along the matrix orbit.
"""

from __future__ import annotations

import io
from fractions import Fraction
from typing import Optional, Sequence

from .balanced import is_balanced
from .certificates import BoundCertificate
from .curveio import format_fraction, parse_curve, serialize_curve
from .farey import Slope, farey_distance, mat_pow, mcg_action, parse_slope, slope
from .geometry import PolyCurve, RatPoint, pair_status, validate_curve
from .witness import Witness, cuts_witness, make_witness, project_to_witness, slope_of, witness_check


def lower_value_from_distance(d: int) -> int:
    """ceil(max(0, d - 2) / 4): image diameter 2, per-edge movement 4."""
    return max(0, -(-max(0, d - 2) // 4))


def orbit_growth(matrix, s0, n_max: int = 12) -> list[tuple[int, int, int]]:
    """Rows (n, farey_distance, lower_bound) for the matrix orbit of s0."""
    s0 = s0 if isinstance(s0, Slope) else parse_slope(str(s0))
    rows = []
    for n in range(1, n_max + 1):
        sn = mcg_action(mat_pow(matrix, n), s0)
        d = farey_distance(sn, s0)
        rows.append((n, d, lower_value_from_distance(d)))
    return rows


def orbit_growth_csv(rows: Sequence[tuple[int, int, int]]) -> str:
    out = io.StringIO()
    out.write("n,farey_distance,lower_bound\n")
    for n, d, v in rows:
        out.write(f"{n},{d},{v}\n")
    return out.getvalue()


def fitted_slope(rows: Sequence[tuple[int, int, int]]) -> Fraction:
    """Least-squares slope of farey_distance against n, exact."""
    xs = [Fraction(r[0]) for r in rows]
    ys = [Fraction(r[1]) for r in rows]
    n = Fraction(len(rows))
    mx = sum(xs) / n
    my = sum(ys) / n
    num = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    den = sum((x - mx) ** 2 for x in xs)
    return num / den


def two_scale_curve(w: Witness) -> PolyCurve:
    """An equator disjoint from the distinguished hole's closure that
    still cuts the witness: an exact area-1/2 rectangle over the
    remaining holes."""
    if w.eps1_boundary is None:
        raise ValueError("two-scale experiments need a skewed witness")
    hole0 = w.holes[w.eps1_boundary]
    x_gap = max(p.x for p in hole0.points)
    rest_left = min(min(p.x for p in h.points)
                    for i, h in enumerate(w.holes) if i != w.eps1_boundary)
    x0 = (x_gap + rest_left) / 2
    x1 = Fraction(63, 64)
    height = Fraction(1, 2) / (x1 - x0)
    if height >= 1:
        raise ValueError("not enough room for the two-scale equator")
    y0 = (1 - height) / 2
    y1 = y0 + height
    pts = [RatPoint(x0, y0), RatPoint(x1, y0), RatPoint(x1, y1), RatPoint(x0, y1)]
    return validate_curve(pts)


def two_scale_upper_certificate(alpha: PolyCurve, w: Witness, eps1, n: int) -> BoundCertificate:
    """Upper bound 2 at the small scale via the fixed balanced boundary.

    Geometric claims (the boundary curve is eps1-balanced and disjoint
    from alpha) are re-checkable; invariance of the orbit under a map
    fixing the boundary and supported in its complement is an axiom tag.
    """
    e1 = Fraction(eps1)
    eta = w.holes[w.eps1_boundary]
    return BoundCertificate(
        kind="upper-orbit", value=2, epsilon=e1,
        alpha=serialize_curve(alpha), beta=serialize_curve(alpha),
        chain=[serialize_curve(eta)],
        hops=[{"kind": "adjacent", "weight": 1},
              {"kind": "orbit-invariance", "weight": 1, "n": n,
               "axiom": "map fixes the boundary curve and is supported away from it"}],
    )


def verify_orbit_certificate(cert: BoundCertificate, eps) -> bool:
    """Check the geometric half of a two-scale upper certificate."""
    try:
        e = Fraction(eps)
        if cert.value != 2 or len(cert.chain) != 1:
            return False
        alpha = parse_curve(cert.alpha)
        eta = parse_curve(cert.chain[0])
        if not is_balanced(eta, e):
            return False
        if pair_status(alpha, eta).kind != "disjoint":
            return False
        kinds = [h.get("kind") for h in cert.hops]
        return kinds == ["adjacent", "orbit-invariance"]
    except Exception:
        return False


def two_scale_experiment(eps1, eps2, n_holes: int = 12, matrix=((2, 1), (1, 1)),
                         n_max: int = 12):
    """Run the two-scale pipeline; returns (witness, alpha, rows, upper cert).

    The lower-bound rows live at scale eps2 (where the witness predicate
    holds); the upper certificate lives at scale eps1 via the
    distinguished eps1-balanced boundary.
    """
    e1, e2 = Fraction(eps1), Fraction(eps2)
    if not e1 < e2:
        raise ValueError("need eps1 < eps2")
    w = make_witness(e2, n_holes, "skewed", eps1=e1)
    alpha = two_scale_curve(w)
    if not is_balanced(alpha, e2):
        raise ValueError("two-scale curve is not balanced at the large scale")
    cls = project_to_witness(alpha, w)
    rows = []
    if w.n == 4:
        s0 = slope_of(min(cls, key=lambda k: k.canonical()), w)
    else:
        s0 = slope(0, 1)
    for n in range(1, n_max + 1):
        sn = mcg_action(mat_pow(matrix, n), s0)
        d = farey_distance(sn, s0)
        rows.append((n, d, lower_value_from_distance(d)))
    cert = two_scale_upper_certificate(alpha, w, e1, n_max)
    return w, alpha, rows, cert
