"""Shared generators for randomized geometry tests.

Star-shaped polygons about a center are always simple, so random curves
are built as rational radius profiles against a fixed direction table.
Every generated object is re-validated; non-generic samples are redrawn.
"""

from __future__ import annotations

import random
from fractions import Fraction

from balancedcurves.geometry import (
    ArcLocator,
    PolyArc,
    PolyCurve,
    RatPoint,
    pair_status,
    subarc,
    validate_curve,
)

# rational direction table: roughly equally spaced unit-ish vectors
_DENOM = 64


def directions(k: int) -> list[tuple[Fraction, Fraction]]:
    import math
    out = []
    for i in range(k):
        th = 2 * math.pi * i / k
        cx = Fraction(round(math.cos(th) * _DENOM), _DENOM)
        cy = Fraction(round(math.sin(th) * _DENOM), _DENOM)
        out.append((cx, cy))
    return out


def star_polygon(rng: random.Random, k: int = 10,
                 center=(Fraction(1, 2), Fraction(1, 2)),
                 rmin=Fraction(1, 5), rmax=Fraction(2, 5)) -> PolyCurve:
    """Random star-shaped polygon with rational vertices."""
    dirs = directions(k)
    cx, cy = Fraction(center[0]), Fraction(center[1])
    for _ in range(60):
        pts = []
        for (dx, dy) in dirs:
            r = rmin + (rmax - rmin) * Fraction(rng.randrange(0, 257), 256)
            pts.append(RatPoint(cx + r * dx, cy + r * dy))
        try:
            return validate_curve(pts)
        except Exception:
            continue
    raise RuntimeError("star polygon generation failed")


def random_curve(rng: random.Random, k: int = 10) -> PolyCurve:
    return star_polygon(rng, k=k)


def balanced_curve(rng: random.Random, eps, k: int = 10, tries: int = 200) -> PolyCurve:
    eps = Fraction(eps)
    for _ in range(tries):
        c = star_polygon(rng, k=k)
        if min(c.area, 1 - c.area) >= eps:
            return c
    raise RuntimeError("no balanced curve found")


def generic_pair(rng: random.Random, k: int = 10, want_crossings=None,
                 tries: int = 400, spread=Fraction(1, 8)) -> tuple[PolyCurve, PolyCurve]:
    """Transverse (or disjoint) pair of star polygons, optionally with a
    prescribed crossing count.  Centers are jittered by up to `spread`."""
    half = Fraction(1, 2)
    for _ in range(tries):
        c1 = (half + spread * Fraction(rng.randrange(-8, 9), 8),
              half + spread * Fraction(rng.randrange(-8, 9), 8))
        c2 = (half + spread * Fraction(rng.randrange(-8, 9), 8),
              half + spread * Fraction(rng.randrange(-8, 9), 8))
        a = star_polygon(rng, k=k, center=c1)
        b = star_polygon(rng, k=k, center=c2)
        st = pair_status(a, b)
        if not st.generic:
            continue
        if want_crossings is not None and len(st.points) != want_crossings:
            continue
        return a, b
    raise RuntimeError("no generic pair found")


def random_subarc(rng: random.Random, c: PolyCurve) -> PolyArc:
    n = len(c.points)
    for _ in range(50):
        e1 = rng.randrange(n)
        e2 = rng.randrange(n)
        t1 = Fraction(rng.randrange(1, 16), 16)
        t2 = Fraction(rng.randrange(1, 16), 16)
        if (e1, t1) == (e2, t2):
            continue
        try:
            return subarc(c, ArcLocator(e1, t1), ArcLocator(e2, t2))
        except Exception:
            continue
    raise RuntimeError("no subarc found")


def crossing_star_pair(rng: random.Random, n_crossings: int, k: int = 12,
                       tries: int = 100) -> tuple[PolyCurve, PolyCurve]:
    """Pair of concentric star polygons whose radius profiles alternate,
    giving exactly n_crossings crossings (flower configurations)."""
    assert n_crossings % 2 == 0 and n_crossings >= 2
    dirs = directions(k)
    cx = cy = Fraction(1, 2)
    for _ in range(tries):
        r0 = Fraction(17, 48)
        base = [r0 + Fraction(rng.randrange(-8, 9), 512) for _ in range(k)]
        signs = _alternating_signs(rng, k, n_crossings)
        bump = Fraction(1, 16)
        r2 = [b + s * bump for b, s in zip(base, signs)]
        try:
            a = validate_curve([RatPoint(cx + r * dx, cy + r * dy)
                                for r, (dx, dy) in zip(base, dirs)])
            b = validate_curve([RatPoint(cx + r * dx, cy + r * dy)
                                for r, (dx, dy) in zip(r2, dirs)])
        except Exception:
            continue
        st = pair_status(a, b)
        if st.kind == "transverse" and len(st.points) == n_crossings:
            return a, b
    raise RuntimeError("no crossing star pair found")


def wave_band(rng: random.Random, n: int = 6,
              x0=Fraction(3, 20), x1=Fraction(17, 20),
              yc=Fraction(1, 2), gap=Fraction(1, 10),
              amp=Fraction(1, 5)) -> PolyCurve:
    """Closed band with wavy top and bottom; x-monotone sides keep it simple."""
    xs = [x0 + (x1 - x0) * Fraction(i, n - 1) for i in range(n)]
    for _ in range(60):
        top = [yc + gap + amp * Fraction(rng.randrange(0, 257), 256) for _ in range(n)]
        bot = [yc - gap - amp * Fraction(rng.randrange(0, 257), 256) for _ in range(n)]
        pts = ([RatPoint(x, y) for x, y in zip(xs, bot)]
               + [RatPoint(x, y) for x, y in zip(reversed(xs), [top[i] for i in range(n - 1, -1, -1)])])
        try:
            return validate_curve(pts)
        except Exception:
            continue
    raise RuntimeError("wave band generation failed")


def horseshoe(rng: random.Random) -> PolyCurve:
    """U-shaped curve whose prongs create nested chords against a band."""
    j = lambda a, b: Fraction(rng.randrange(a, b + 1), 128)
    x0, x1 = j(16, 24), j(88, 100)
    y0, y1 = j(32, 40), j(88, 96)
    notch_d = j(40, 52)          # notch depth from the right
    ny0, ny1 = y0 + j(14, 20), y1 - j(14, 20)
    pts = [
        RatPoint(x0, y0), RatPoint(x1, y0), RatPoint(x1, ny0),
        RatPoint(x1 - notch_d, ny0), RatPoint(x1 - notch_d, ny1),
        RatPoint(x1, ny1), RatPoint(x1, y1), RatPoint(x0, y1),
    ]
    return validate_curve(pts)


def braided_pair(rng: random.Random, min_crossings: int = 6,
                 min_nonbigons: int = 3, tries: int = 120):
    """Generic pair whose complement has more than two non-bigon faces."""
    from balancedcurves.arrangement import build_arrangement
    for _ in range(tries):
        b = horseshoe(rng)
        j = lambda a_, b_: Fraction(rng.randrange(a_, b_ + 1), 128)
        ax0 = j(52, 62)
        ax1 = ax0 + j(12, 22)
        ay0, ay1 = j(8, 20), j(108, 120)
        a = validate_curve([RatPoint(ax0, ay0), RatPoint(ax1, ay0),
                            RatPoint(ax1, ay1), RatPoint(ax0, ay1)])
        st = pair_status(a, b)
        if st.kind != "transverse" or len(st.points) < min_crossings:
            continue
        arr = build_arrangement(a, b)
        nb = sum(1 for f in arr.faces if not f.is_bigon())
        if nb >= min_nonbigons:
            return a, b
    raise RuntimeError("no braided pair found")


def _alternating_signs(rng: random.Random, k: int, changes: int) -> list[int]:
    """Cyclic +-1 sequence with exactly `changes` sign changes."""
    positions = sorted(rng.sample(range(k), changes))
    signs = []
    cur = 1
    pos = set(positions)
    for i in range(k):
        if i in pos:
            cur = -cur
        signs.append(cur)
    return signs
