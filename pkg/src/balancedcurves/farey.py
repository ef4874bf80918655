"""Slopes, the Farey graph, and unimodular actions.

Slopes p/q (coprime, identified with -p/-q) are the vertices of the
Farey graph; edges join pairs with |ps - qr| = 1.  The exact distance
uses the pivot recursion: the triangle (n, n+1, infinity) separates
infinity from any slope strictly inside (n, n+1), so some geodesic
leaves infinity through n or n+1; normalizing by PSL(2,Z) makes this a
continued-fraction descent.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, NamedTuple, Optional


class NotUnimodular(Exception):
    pass


class CapExceeded(Exception):
    pass


class Slope(NamedTuple):
    p: int
    q: int

    def __repr__(self) -> str:
        return f"{self.p}/{self.q}"


def slope(p: int, q: int) -> Slope:
    """Canonical form: gcd 1, q > 0, or (1, 0) for the infinite slope."""
    if p == 0 and q == 0:
        raise ValueError("0/0 is not a slope")
    g = math.gcd(abs(p), abs(q))
    p, q = p // g, q // g
    if q < 0 or (q == 0 and p < 0):
        p, q = -p, -q
    return Slope(p, q)


def parse_slope(text: str) -> Slope:
    num, _, den = text.partition("/")
    return slope(int(num), int(den) if den else 1)


def det(a: Slope, b: Slope) -> int:
    return a.p * b.q - a.q * b.p


def farey_adjacent(a: Slope, b: Slope) -> bool:
    return abs(det(a, b)) == 1


INF = Slope(1, 0)


@lru_cache(maxsize=None)
def _dist_to_inf(p: int, q: int) -> int:
    """Distance from p/q to 1/0 in the Farey graph (q > 0)."""
    if q == 0:
        return 0
    if q == 1:
        return 1
    n = p // q  # floor
    # normalize the two candidate gates n and n+1 back to infinity:
    # z -> 1/(z - n) sends n to infinity and p/q to q/(p - n q);
    # z -> 1/(z - n - 1) sends n+1 to infinity.
    r1 = (q, p - n * q)
    r2 = (q, p - (n + 1) * q)
    return 1 + min(_dist_to_inf(*_canon(*r1)), _dist_to_inf(*_canon(*r2)))


def _canon(p: int, q: int) -> tuple[int, int]:
    g = math.gcd(abs(p), abs(q))
    p, q = p // g, q // g
    if q < 0 or (q == 0 and p < 0):
        p, q = -p, -q
    return p, q


def farey_distance(a, b) -> int:
    """Exact Farey graph distance via the continued-fraction pivot recursion."""
    a = a if isinstance(a, Slope) else parse_slope(str(a))
    b = b if isinstance(b, Slope) else parse_slope(str(b))
    if (a.p, a.q) == (b.p, b.q):
        return 0
    if abs(det(a, b)) == 1:
        return 1
    # move b to infinity with a unimodular map
    # find (x, y) with x*b.p + y*b.q = 1; then M = [[x, y], [-b.q, b.p]]
    x, y = _bezout(b.p, b.q)
    ap = x * a.p + y * a.q
    aq = -b.q * a.p + b.p * a.q
    return _dist_to_inf(*_canon(ap, aq))


def _bezout(p: int, q: int) -> tuple[int, int]:
    if q == 0:
        return (1 if p > 0 else -1), 0
    x0, x1 = 1, 0
    y0, y1 = 0, 1
    a, b = p, q
    while b:
        k, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - k * x1
        y0, y1 = y1, y0 - k * y1
    if a < 0:
        x0, y0 = -x0, -y0
    return x0, y0


def farey_neighbors_bounded(s: Slope, bound: int) -> Iterable[Slope]:
    """Neighbors r/t of s with |r|, |t| <= bound."""
    # solutions of s.p * t - s.q * r = +-1 form two affine lines
    x, y = _bezout(s.p, s.q)
    # base solution of p*t - q*r = 1: t0 = x? solve p*t - q*r = 1:
    # p*x + q*y = 1 -> t = x, r = -y
    for sign in (1, -1):
        t0, r0 = sign * x, -sign * y
        # general: (r, t) = (r0 + k*s.p, t0 + k*s.q)
        ks = []
        if s.p != 0:
            lo = math.ceil((-bound - r0) / s.p)
            hi = math.floor((bound - r0) / s.p)
            ks = range(min(lo, hi), max(lo, hi) + 1)
        if s.q != 0:
            lo2 = math.ceil((-bound - t0) / s.q)
            hi2 = math.floor((bound - t0) / s.q)
            rng2 = range(min(lo2, hi2), max(lo2, hi2) + 1)
            ks = rng2 if s.p == 0 else range(max(ks.start, rng2.start),
                                             min(ks.stop, rng2.stop))
        for k in ks:
            r, t = r0 + k * s.p, t0 + k * s.q
            if abs(r) <= bound and abs(t) <= bound and (r or t):
                yield slope(r, t)


def farey_bfs(a, b, cap: int) -> int:
    """BFS oracle for the Farey distance; raises CapExceeded past `cap`.

    The search is restricted to slopes with coordinates bounded by the
    inputs plus a Fibonacci margin for the claimed cap, which covers the
    pivot geodesics the exact algorithm traverses.
    """
    a = a if isinstance(a, Slope) else parse_slope(str(a))
    b = b if isinstance(b, Slope) else parse_slope(str(b))
    if (a.p, a.q) == (b.p, b.q):
        return 0
    bound = (max(abs(a.p), abs(a.q), abs(b.p), abs(b.q)) + 2) * _fib(cap + 3)
    frontier = {a}
    seen = {a}
    d = 0
    while frontier and d < cap:
        d += 1
        nxt = set()
        for s in frontier:
            for t in farey_neighbors_bounded(s, bound):
                if t == b:
                    return d
                if t not in seen:
                    seen.add(t)
                    nxt.add(t)
        frontier = nxt
    raise CapExceeded(f"distance exceeds cap {cap}")


def _fib(n: int) -> int:
    x, y = 1, 1
    for _ in range(n):
        x, y = y, x + y
    return x


def all_slopes_up_to(bound: int) -> list[Slope]:
    out = [INF]
    for q in range(1, bound + 1):
        for p in range(-bound, bound + 1):
            if math.gcd(abs(p), q) == 1:
                out.append(Slope(p, q))
    return out


def bulk_distance_table(bound: int):
    """All-pairs Farey distances on the coordinate-bounded subgraph.

    A vectorized BFS oracle (scipy) for the exhaustive consistency check
    of `farey_distance`; semantically the induced-subgraph BFS that
    `farey_bfs` performs pair by pair.
    """
    import numpy as np
    from scipy.sparse import csr_matrix
    from scipy.sparse.csgraph import shortest_path

    verts = all_slopes_up_to(bound)
    index = {v: i for i, v in enumerate(verts)}
    rows, cols = [], []
    for i, v in enumerate(verts):
        for w in farey_neighbors_bounded(v, bound):
            j = index.get(w)
            if j is not None and j != i:
                rows.append(i)
                cols.append(j)
    n = len(verts)
    m = csr_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(n, n))
    dist = shortest_path(m, method="D", unweighted=True, directed=False)
    return verts, index, dist


def mcg_action(matrix, s: Slope) -> Slope:
    """Projective action of a 2x2 integer matrix with det +-1 on slopes."""
    (a, b), (c, d) = matrix
    if a * d - b * c not in (1, -1):
        raise NotUnimodular(f"determinant {a * d - b * c}")
    return slope(a * s.p + b * s.q, c * s.p + d * s.q)


def is_pseudo_anosov(matrix) -> bool:
    (a, b), (c, d) = matrix
    if a * d - b * c not in (1, -1):
        raise NotUnimodular(f"determinant {a * d - b * c}")
    return abs(a + d) > 2


def mat_mul(m1, m2):
    (a, b), (c, d) = m1
    (e, f), (g, h) = m2
    return ((a * e + b * g, a * f + b * h), (c * e + d * g, c * f + d * h))


def mat_pow(m, n: int):
    out = ((1, 0), (0, 1))
    base = m
    k = n
    while k > 0:
        if k & 1:
            out = mat_mul(out, base)
        base = mat_mul(base, base)
        k >>= 1
    return out
