"""Hyperbolicity checkers: four-point condition, sampled slim triangles,
and the guessing-geodesics criterion with its explicit constants.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable, NamedTuple, Optional, Sequence


class Disconnected(Exception):
    pass


class LNotConnected(Exception):
    pass


class LMissingEndpoints(Exception):
    pass


def _all_pairs_bfs(adj: dict) -> dict:
    dist = {}
    for s in adj:
        d = {s: 0}
        frontier = [s]
        k = 0
        while frontier:
            k += 1
            nxt = []
            for u in frontier:
                for v in adj[u]:
                    if v not in d:
                        d[v] = k
                        nxt.append(v)
            frontier = nxt
        if len(d) != len(adj):
            raise Disconnected("graph is not connected")
        dist[s] = d
    return dist


def four_point_delta(adj: dict) -> Fraction:
    """Exact max Gromov-product defect over all vertex 4-tuples.

    delta = max over (w,x,y,z) of (largest - middle)/2 among the three
    pair sums d(wx)+d(yz), d(wy)+d(xz), d(wz)+d(xy).
    """
    dist = _all_pairs_bfs(adj)
    verts = list(adj)
    best = Fraction(0)
    n = len(verts)
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                for l in range(k + 1, n):
                    w, x, y, z = verts[i], verts[j], verts[k], verts[l]
                    s = sorted((dist[w][x] + dist[y][z],
                                dist[w][y] + dist[x][z],
                                dist[w][z] + dist[x][y]))
                    best = max(best, Fraction(s[2] - s[1], 2))
    return best


def _bfs_geodesic(adj: dict, x, y) -> list:
    """Deterministic BFS geodesic (lexicographically smallest parents)."""
    prev = {x: None}
    frontier = [x]
    while frontier and y not in prev:
        nxt = []
        for u in frontier:
            for v in sorted(adj[u], key=repr):
                if v not in prev:
                    prev[v] = u
                    nxt.append(v)
        frontier = nxt
    if y not in prev:
        raise Disconnected(f"no path {x} .. {y}")
    path = [y]
    while prev[path[-1]] is not None:
        path.append(prev[path[-1]])
    path.reverse()
    return path


def slim_delta_sampled(adj: dict, samples: int = 500, seed: int = 0,
                       geodesic_choice: Optional[Callable] = None) -> Fraction:
    """Max slimness defect over sampled geodesic triangles.

    One geodesic per pair (BFS with deterministic tie-breaks unless a
    custom chooser is supplied); the returned value is the max over
    sampled triangles of the distance from a side to the union of the
    other two.
    """
    dist = _all_pairs_bfs(adj)
    verts = sorted(adj, key=repr)
    geo = geodesic_choice or (lambda x, y: _bfs_geodesic(adj, x, y))
    rng = random.Random(seed)
    n = len(verts)
    triples = set()
    cap = n * (n - 1) * (n - 2) // 6
    want = min(samples, cap)
    while len(triples) < want:
        t = tuple(sorted(rng.sample(range(n), 3)))
        triples.add(t)
    best = Fraction(0)
    for (i, j, k) in sorted(triples):
        x, y, z = verts[i], verts[j], verts[k]
        p1 = geo(x, y)
        p2 = geo(y, z)
        p3 = geo(z, x)
        other = set(p2) | set(p3)
        for v in p1:
            d = min(dist[v][u] for u in other)
            best = max(best, Fraction(d))
    return best


def gg_verify(adj: dict, L: Callable, lam) -> bool:
    """Exhaustively check the guessing-geodesics criterion.

    L(x, y) must be a connected subgraph containing x and y; the two
    conditions are the lambda-slimness of the L-triangles and diameter
    at most lambda for adjacent-or-equal pairs.
    """
    lam = Fraction(lam)
    dist = _all_pairs_bfs(adj)
    verts = sorted(adj, key=repr)
    cache: dict = {}

    def Lset(x, y):
        key = (x, y)
        if key not in cache:
            s = set(L(x, y))
            if x not in s or y not in s:
                raise LMissingEndpoints(f"L({x},{y}) misses an endpoint")
            if not _connected_subgraph(adj, s):
                raise LNotConnected(f"L({x},{y}) is not connected")
            cache[key] = s
        return cache[key]

    for x in verts:
        for y in verts:
            if dist[x][y] <= 1:
                s = Lset(x, y)
                diam = max(dist[u][v] for u in s for v in s)
                if diam > lam:
                    return False
    for x in verts:
        for y in verts:
            sxy = Lset(x, y)
            for z in verts:
                union = Lset(x, z) | Lset(z, y)
                for v in sxy:
                    if min(dist[v][u] for u in union) > lam:
                        return False
    return True


def _connected_subgraph(adj: dict, s: set) -> bool:
    if not s:
        return False
    start = next(iter(s))
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if v in s and v not in seen:
                seen.add(v)
                stack.append(v)
    return seen == s


class GGParams(NamedTuple):
    lam: Fraction
    m: int
    delta_bound: Fraction


def _gg_inequality_holds(lam: Fraction, m: int) -> bool:
    """Exact check of 2 lam (6 + log2(m + 2)) <= m via integer powers."""
    a, b = lam.numerator, lam.denominator
    # 2(a/b)(6 + log2(m+2)) <= m  <=>  (m+2)^{2a} <= 2^{bm - 12a}
    rhs_exp = b * m - 12 * a
    if rhs_exp < 0:
        return False
    return (m + 2) ** (2 * a) <= 2 ** rhs_exp


def gg_delta_bound(lam) -> GGParams:
    """Minimal integer m with 2 lam (6 + log2(m+2)) <= m, and the induced
    slimness bound max(0, (3m - 10 lam)/2)."""
    lam = Fraction(lam)
    if lam < 0:
        raise ValueError("lambda must be nonnegative")
    m = 0
    while not _gg_inequality_holds(lam, m):
        m += 1
        if m > 10 ** 6:
            raise RuntimeError("no m found")
    delta = max(Fraction(0), (3 * m - 10 * lam) / 2)
    return GGParams(lam=lam, m=m, delta_bound=delta)


def cycle_graph(n: int) -> dict:
    return {i: [(i - 1) % n, (i + 1) % n] for i in range(n)}


def path_graph(n: int) -> dict:
    adj = {i: [] for i in range(n)}
    for i in range(n - 1):
        adj[i].append(i + 1)
        adj[i + 1].append(i)
    return adj


def random_tree(n: int, seed: int = 0) -> dict:
    rng = random.Random(seed)
    adj = {0: []}
    for v in range(1, n):
        u = rng.randrange(v)
        adj.setdefault(v, []).append(u)
        adj[u].append(v)
    return adj


def farey_ball_graph(den_bound: int) -> dict:
    from .farey import all_slopes_up_to, farey_neighbors_bounded
    verts = [s for s in all_slopes_up_to(den_bound)]
    vset = set(verts)
    return {v: sorted((w for w in farey_neighbors_bounded(v, den_bound) if w in vset),
                      key=repr) for v in verts}
