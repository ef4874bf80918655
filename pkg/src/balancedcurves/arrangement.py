"""Exact planar arrangements of one or two curves/arcs on the sphere model.

Builds a half-edge subdivision from generic input pieces, extracts faces
with exact areas and labelled boundary runs, and derives (directed) dual
trees with their central vertex.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

from .geometry import (
    CurveOrArc,
    GeometryError,
    NonGenericInput,
    PolyArc,
    PolyCurve,
    RatPoint,
    ZERO,
    ear_clip,
    orient,
    pair_status,
    point_in_polygon,
    point_on_segment,
    squared_distance,
    squared_distance_point_segment,
    triangle_centroid,
)

ALPHA = "A"
BETA = "B"


class NotATree(GeometryError):
    """Dual structure failed the tree consistency check."""


class CentralityViolation(GeometryError):
    """The directed dual tree has no unique sink; must never occur on valid input."""


def _angle_cmp(u: tuple[Fraction, Fraction], v: tuple[Fraction, Fraction]) -> int:
    """Exact ccw comparison of direction vectors starting from the +x axis."""
    def half(w):
        # 0 for angles in [0, pi), 1 for [pi, 2 pi)
        if w[1] > 0 or (w[1] == 0 and w[0] > 0):
            return 0
        return 1
    hu, hv = half(u), half(v)
    if hu != hv:
        return -1 if hu < hv else 1
    c = u[0] * v[1] - u[1] * v[0]
    if c > 0:
        return -1
    if c < 0:
        return 1
    return 0


@dataclass
class Run:
    label: str
    comp: int
    cycle: int


@dataclass
class Face:
    id: int
    area: Fraction
    cycles: list[list[int]]            # lists of half-edge ids; [0] is the outer cycle unless unbounded
    runs: list[Run]
    contains_infinity: bool
    outer_cycle: Optional[int]         # index into cycles, None for the unbounded face

    @property
    def side_count(self) -> int:
        return len(self.runs)

    def is_bigon(self) -> bool:
        if len(self.runs) != 2:
            return False
        a, b = self.runs
        return a.label != b.label and a.cycle == b.cycle


class Arrangement:
    """Half-edge planar subdivision of the sphere by one or two pieces."""

    def __init__(self, alpha_pieces: Sequence[CurveOrArc], beta_pieces: Sequence[CurveOrArc]):
        self.alpha_pieces = list(alpha_pieces)
        self.beta_pieces = list(beta_pieces)
        self.node_points: list[RatPoint] = []
        self._node_ids: dict[RatPoint, int] = {}
        # parallel half-edge arrays
        self.he_origin: list[int] = []
        self.he_head: list[int] = []
        self.he_label: list[str] = []
        self.he_comp: list[int] = []
        self.he_next: list[int] = []
        self.faces: list[Face] = []
        self.he_face: list[int] = []
        self.alpha_components: dict[int, list[tuple[RatPoint, RatPoint]]] = {}
        self.beta_components: dict[int, list[tuple[RatPoint, RatPoint]]] = {}
        self._rep_cache: dict[int, RatPoint] = {}
        self._waypoint_cache: dict[int, list[RatPoint]] = {}
        self._build()

    # -- construction -------------------------------------------------

    def _node(self, p: RatPoint) -> int:
        i = self._node_ids.get(p)
        if i is None:
            i = len(self.node_points)
            self._node_ids[p] = i
            self.node_points.append(p)
        return i

    def _build(self) -> None:
        specs = ([(ALPHA, obj) for obj in self.alpha_pieces]
                 + [(BETA, obj) for obj in self.beta_pieces])
        # Same-side pieces must be pairwise disjoint; opposite sides generic.
        for side, group in ((ALPHA, self.alpha_pieces), (BETA, self.beta_pieces)):
            for i in range(len(group)):
                for j in range(i + 1, len(group)):
                    st = pair_status(group[i], group[j])
                    if st.kind != "disjoint":
                        raise NonGenericInput(f"{side} pieces {i},{j} are not disjoint")
        segs: list[list[tuple[RatPoint, RatPoint]]] = []
        closed: list[bool] = []
        for _, obj in specs:
            segs.append(list(obj.edges()))
            closed.append(isinstance(obj, PolyCurve))
        # crossings[piece][seg] -> list of (param, point)
        crossings: list[dict[int, list[tuple[Fraction, RatPoint]]]] = [dict() for _ in specs]
        seen_points: set[RatPoint] = set()
        for ia, (side_a, _) in enumerate(specs):
            if side_a != ALPHA:
                continue
            for ib, (side_b, _) in enumerate(specs):
                if side_b != BETA:
                    continue
                for si, (p1, p2) in enumerate(segs[ia]):
                    for sj, (q1, q2) in enumerate(segs[ib]):
                        x = _crossing_with_params(p1, p2, q1, q2)
                        if x is None:
                            continue
                        t, u, point = x
                        if point in seen_points:
                            raise NonGenericInput(f"triple intersection at {point}")
                        seen_points.add(point)
                        crossings[ia].setdefault(si, []).append((t, point))
                        crossings[ib].setdefault(sj, []).append((u, point))
        # Walk each piece, splitting segments and assigning component ids.
        edge_records: list[tuple[int, int, str, int]] = []  # u, v, label, comp
        comp_counter = {ALPHA: 0, BETA: 0}
        for ip, (side, obj) in enumerate(specs):
            comp0 = comp_counter[side]
            comp = comp0
            ncross = 0
            first_node = None
            prev_node = None
            for si, (p1, p2) in enumerate(segs[ip]):
                chain = [(ZERO, p1)]
                chain += sorted(crossings[ip].get(si, []))
                chain.append((Fraction(1), p2))
                for k in range(len(chain) - 1):
                    a = self._node(chain[k][1])
                    b = self._node(chain[k + 1][1])
                    if a == b:
                        raise NonGenericInput("zero-length subsegment")
                    edge_records.append((a, b, side, comp))
                    if first_node is None:
                        first_node = a
                    prev_node = b
                    if k < len(chain) - 2:
                        # interior chain point is a crossing: new component
                        ncross += 1
                        comp = comp0 + ncross
                # the segment end p2 is a piece vertex, not a crossing
            if closed[ip] and ncross > 0:
                # wrap: the final component is the one we started in
                for i in range(len(edge_records)):
                    u, v, s, c = edge_records[i]
                    if s == side and c == comp:
                        edge_records[i] = (u, v, s, comp0)
            if closed[ip]:
                comp_counter[side] = comp0 + max(1, ncross)
            else:
                comp_counter[side] = comp0 + ncross + 1
        for u, v, s, c in edge_records:
            store = self.alpha_components if s == ALPHA else self.beta_components
            store.setdefault(c, []).append((self.node_points[u], self.node_points[v]))
        # half edges
        out_at: dict[int, list[int]] = {}
        for u, v, label, comp in edge_records:
            h = len(self.he_origin)
            for (o, d) in ((u, v), (v, u)):
                self.he_origin.append(o)
                self.he_head.append(d)
                self.he_label.append(label)
                self.he_comp.append(comp)
            out_at.setdefault(u, []).append(h)
            out_at.setdefault(v, []).append(h + 1)
        # ccw sort of outgoing half-edges at every node
        def hkey(h):
            o = self.node_points[self.he_origin[h]]
            d = self.node_points[self.he_head[h]]
            return (d.x - o.x, d.y - o.y)
        order: dict[int, list[int]] = {}
        pos: dict[int, int] = {}
        for node, hs in out_at.items():
            hs_sorted = sorted(hs, key=functools.cmp_to_key(
                lambda h1, h2: _angle_cmp(hkey(h1), hkey(h2))))
            order[node] = hs_sorted
            for idx, h in enumerate(hs_sorted):
                pos[h] = idx
        # next pointer: at head(h), predecessor of twin(h) in ccw order
        self.he_next = [0] * len(self.he_origin)
        for h in range(len(self.he_origin)):
            tw = h ^ 1
            node = self.he_head[h]
            hs = order[node]
            self.he_next[h] = hs[(pos[tw] - 1) % len(hs)]
        self._extract_faces()

    def _extract_faces(self) -> None:
        nhe = len(self.he_origin)
        cycle_of = [-1] * nhe
        cycles: list[list[int]] = []
        for h0 in range(nhe):
            if cycle_of[h0] >= 0:
                continue
            cyc = []
            h = h0
            while cycle_of[h] < 0:
                cycle_of[h] = len(cycles)
                cyc.append(h)
                h = self.he_next[h]
            cycles.append(cyc)
        areas = []
        for cyc in cycles:
            tot = ZERO
            for h in cyc:
                a = self.node_points[self.he_origin[h]]
                b = self.node_points[self.he_head[h]]
                tot += a.x * b.y - b.x * a.y
            areas.append(tot / 2)
        # connected components of the underlying graph, for hole grouping
        comp_of_node = self._node_components()
        positive = [i for i, a in enumerate(areas) if a > 0]
        holes = [i for i, a in enumerate(areas) if a <= 0]
        cycle_pts = [[self.node_points[self.he_origin[h]] for h in cyc] for cyc in cycles]
        container: dict[int, Optional[int]] = {}
        for hi in holes:
            probe = cycle_pts[hi][0]
            hc = comp_of_node[self.he_origin[cycles[hi][0]]]
            best = None
            for pi in positive:
                if comp_of_node[self.he_origin[cycles[pi][0]]] == hc:
                    continue
                if point_in_polygon(probe, cycle_pts[pi]):
                    if best is None or areas[pi] < areas[best]:
                        best = pi
            container[hi] = best
        # assemble faces
        face_of_cycle: dict[int, int] = {}
        self.faces = []
        for pi in positive:
            f = Face(id=len(self.faces), area=areas[pi], cycles=[cycles[pi]],
                     runs=[], contains_infinity=False, outer_cycle=0)
            face_of_cycle[pi] = f.id
            self.faces.append(f)
        # A face's area is the sum of the signed areas of its cycles; the
        # unbounded face starts from the full sphere measure and its hole
        # cycles (all negative) remove the bounded components.
        unbounded = Face(id=len(self.faces), area=Fraction(1), cycles=[],
                         runs=[], contains_infinity=True, outer_cycle=None)
        self.faces.append(unbounded)
        for hi in holes:
            ci = container[hi]
            f = unbounded if ci is None else self.faces[face_of_cycle[ci]]
            f.cycles.append(cycles[hi])
            f.area += areas[hi]
        self.he_face = [0] * nhe
        for f in self.faces:
            for ci, cyc in enumerate(f.cycles):
                for h in cyc:
                    self.he_face[h] = f.id
            f.runs = self._runs_of(f)
        total = sum(f.area for f in self.faces)
        if total != 1:
            raise GeometryError(f"face areas sum to {total}, not 1")

    def _node_components(self) -> list[int]:
        n = len(self.node_points)
        adj: dict[int, list[int]] = {i: [] for i in range(n)}
        for h in range(0, len(self.he_origin), 2):
            u, v = self.he_origin[h], self.he_head[h]
            adj[u].append(v)
            adj[v].append(u)
        comp = [-1] * n
        c = 0
        for s in range(n):
            if comp[s] >= 0:
                continue
            stack = [s]
            comp[s] = c
            while stack:
                u = stack.pop()
                for v in adj[u]:
                    if comp[v] < 0:
                        comp[v] = c
                        stack.append(v)
            c += 1
        return comp

    def _runs_of(self, f: Face) -> list[Run]:
        runs: list[Run] = []
        for ci, cyc in enumerate(f.cycles):
            labels = [(self.he_label[h], self.he_comp[h]) for h in cyc]
            if not labels:
                continue
            # cyclic maximal runs
            breaks = [i for i in range(len(labels))
                      if labels[i] != labels[i - 1]]
            if not breaks:
                runs.append(Run(labels[0][0], labels[0][1], ci))
                continue
            for b in breaks:
                runs.append(Run(labels[b][0], labels[b][1], ci))
        return runs

    # -- queries ------------------------------------------------------

    @property
    def n_nodes(self) -> int:
        return len(self.node_points)

    @property
    def n_edges(self) -> int:
        return len(self.he_origin) // 2

    def euler_characteristic(self) -> int:
        return self.n_nodes - self.n_edges + len(self.faces)

    def cycle_points(self, cyc: list[int]) -> list[RatPoint]:
        return [self.node_points[self.he_origin[h]] for h in cyc]

    def locate(self, q: RatPoint) -> Optional[Face]:
        """Face containing q strictly, or None if q lies on the subdivision."""
        for h in range(0, len(self.he_origin), 2):
            a = self.node_points[self.he_origin[h]]
            b = self.node_points[self.he_head[h]]
            if point_on_segment(q, a, b):
                return None
        for f in self.faces:
            ok = True
            for ci, cyc in enumerate(f.cycles):
                want = (ci == f.outer_cycle)
                if point_in_polygon(q, self.cycle_points(cyc)) != want:
                    ok = False
                    break
            if ok:
                return f
        raise GeometryError("point location failed")

    def face_edges(self, f: Face) -> list[tuple[RatPoint, RatPoint]]:
        out = []
        for cyc in f.cycles:
            for h in cyc:
                out.append((self.node_points[self.he_origin[h]],
                            self.node_points[self.he_head[h]]))
        return out

    def all_segments(self) -> list[tuple[RatPoint, RatPoint]]:
        return [(self.node_points[self.he_origin[h]], self.node_points[self.he_head[h]])
                for h in range(0, len(self.he_origin), 2)]

    def representative_point(self, f: Face) -> RatPoint:
        """A strictly interior rational point of the face."""
        got = self._rep_cache.get(f.id)
        if got is not None:
            return got
        p = self._representative_point(f)
        self._rep_cache[f.id] = p
        return p

    def _offset_into_face(self, f: Face, a: RatPoint, b: RatPoint) -> Optional[RatPoint]:
        """Midpoint of the half-edge (a,b) pushed into the face on its left.

        The clearance estimate may be approximate: the exact point
        location test is the gate.
        """
        mid = RatPoint((a.x + b.x) / 2, (a.y + b.y) / 2)
        nx, ny = -(b.y - a.y), (b.x - a.x)
        minsq = self._float_clearance_sq(mid, exclude=(a, b))
        t = Fraction(1, 2)
        n2 = float(nx * nx + ny * ny)
        for _ in range(100):
            if float(t) * float(t) * n2 < minsq / 4:
                break
            t /= 2
        for _ in range(6):
            q = RatPoint(mid.x + t * nx, mid.y + t * ny)
            try:
                if self.locate(q) is f:
                    return q
            except GeometryError:
                pass
            t /= 2
        return None

    def _float_clearance_sq(self, p: RatPoint, exclude=None) -> float:
        px, py = float(p.x), float(p.y)
        best = 1.0
        for (c1, c2) in self.all_segments():
            if exclude and ((c1, c2) == exclude or (c2, c1) == exclude):
                continue
            d = _float_point_seg_sq(px, py, float(c1.x), float(c1.y),
                                    float(c2.x), float(c2.y))
            if d < best:
                best = d
        return max(best, 1e-18)

    def face_waypoints(self, f: Face) -> list[RatPoint]:
        """Interior points hugging every boundary edge of the face."""
        got = self._waypoint_cache.get(f.id)
        if got is not None:
            return got
        pts = []
        for cyc in f.cycles:
            for h in cyc:
                a = self.node_points[self.he_origin[h]]
                b = self.node_points[self.he_head[h]]
                q = self._offset_into_face(f, a, b)
                if q is not None:
                    pts.append(q)
        self._waypoint_cache[f.id] = pts
        return pts

    def _representative_point(self, f: Face) -> RatPoint:
        # First try the first-ear centroid of a simple outer cycle.
        if f.outer_cycle is not None:
            pts = self.cycle_points(f.cycles[f.outer_cycle])
            if len(set(pts)) == len(pts):
                try:
                    tris = ear_clip(pts)
                except GeometryError:
                    tris = []
                for tri in tris:
                    c = triangle_centroid(*tri)
                    if self.locate(c) is f:
                        return c
        # Fallback: offset the midpoint of a boundary edge into the face.
        for cyc in f.cycles:
            for h in cyc:
                a = self.node_points[self.he_origin[h]]
                b = self.node_points[self.he_head[h]]
                q = self._offset_into_face(f, a, b)
                if q is not None:
                    return q
        raise GeometryError(f"no representative point found for face {f.id}")


def _float_point_seg_sq(px, py, ax, ay, bx, by):
    abx, aby = bx - ax, by - ay
    denom = abx * abx + aby * aby
    if denom <= 0:
        dx, dy = px - ax, py - ay
        return dx * dx + dy * dy
    t = ((px - ax) * abx + (py - ay) * aby) / denom
    t = 0.0 if t < 0 else (1.0 if t > 1 else t)
    dx, dy = px - (ax + t * abx), py - (ay + t * aby)
    return dx * dx + dy * dy


def _crossing_with_params(p1, p2, q1, q2):
    """Like segment_crossing but returns (t_alpha, u_beta, point)."""
    o1 = orient(p1, p2, q1)
    o2 = orient(p1, p2, q2)
    o3 = orient(q1, q2, p1)
    o4 = orient(q1, q2, p2)
    if o1 != 0 and o2 != 0 and o3 != 0 and o4 != 0:
        if o1 != o2 and o3 != o4:
            denom = (p2.x - p1.x) * (q2.y - q1.y) - (p2.y - p1.y) * (q2.x - q1.x)
            t = ((q1.x - p1.x) * (q2.y - q1.y) - (q1.y - p1.y) * (q2.x - q1.x)) / denom
            point = RatPoint(p1.x + t * (p2.x - p1.x), p1.y + t * (p2.y - p1.y))
            if q2.x != q1.x:
                u = (point.x - q1.x) / (q2.x - q1.x)
            else:
                u = (point.y - q1.y) / (q2.y - q1.y)
            return t, u, point
        return None
    for p, a, b in ((q1, p1, p2), (q2, p1, p2), (p1, q1, q2), (p2, q1, q2)):
        if point_on_segment(p, a, b):
            raise NonGenericInput(f"point {p} lies on segment [{a}, {b}]")
    return None


def build_arrangement(alpha_piece: CurveOrArc,
                      beta_piece: Optional[CurveOrArc] = None) -> Arrangement:
    """Arrangement of one or two generic pieces; NonGenericInput otherwise."""
    beta = [beta_piece] if beta_piece is not None else []
    return Arrangement([alpha_piece], beta)


def bigon_faces(arr: Arrangement) -> list[Face]:
    """Faces with exactly one run of each carrier, meeting at two crossings."""
    return [f for f in arr.faces if f.is_bigon()]


@dataclass
class DualTree:
    """Tree over complement faces; edges labelled by separating pieces of beta."""
    vertices: list[int]
    edges: list[tuple[int, int, int]]          # (face_a, face_b, beta component id)
    directions: dict[int, tuple[int, int]] = field(default_factory=dict)
    central: Optional[int] = None
    tie_edge: Optional[int] = None

    def neighbors(self, v: int) -> list[tuple[int, int]]:
        out = []
        for i, (a, b, _) in enumerate(self.edges):
            if a == v:
                out.append((b, i))
            elif b == v:
                out.append((a, i))
        return out

    def split_by_edge(self, idx: int) -> tuple[set[int], set[int]]:
        a, b, _ = self.edges[idx]
        side = {a}
        stack = [a]
        while stack:
            u = stack.pop()
            for w, ei in self.neighbors(u):
                if ei == idx or w in side:
                    continue
                side.add(w)
                stack.append(w)
        other = set(self.vertices) - side
        return side, other


def dual_tree(alpha_piece: CurveOrArc, beta_piece: CurveOrArc,
              side: Optional[str] = None,
              arr: Optional[Arrangement] = None) -> tuple[DualTree, Arrangement]:
    """Dual tree of the pair; for a closed alpha, `side` picks the component.

    Returns the tree together with the arrangement it was computed from.
    """
    if isinstance(alpha_piece, PolyCurve):
        if side not in ("inside", "outside"):
            raise ValueError("closed alpha requires side='inside' or 'outside'")
    else:
        if side is not None:
            raise ValueError("side selector only applies to a closed alpha")
    if arr is None:
        arr = build_arrangement(alpha_piece, beta_piece)
    if isinstance(alpha_piece, PolyCurve):
        keep = []
        for f in arr.faces:
            rep = arr.representative_point(f)
            inside = point_in_polygon(rep, alpha_piece.points)
            if (side == "inside") == inside:
                keep.append(f.id)
        vertices = keep
    else:
        vertices = [f.id for f in arr.faces]
    vset = set(vertices)
    edges = []
    for comp in sorted(arr.beta_components):
        adj = set()
        for f in arr.faces:
            for r in f.runs:
                if r.label == BETA and r.comp == comp:
                    adj.add(f.id)
        adj &= vset
        if len(adj) == 2:
            a, b = sorted(adj)
            edges.append((a, b, comp))
    t = DualTree(vertices=vertices, edges=edges)
    _check_tree(t)
    return t, arr


def _check_tree(t: DualTree) -> None:
    if len(t.vertices) != len(t.edges) + 1:
        raise NotATree(f"{len(t.vertices)} vertices, {len(t.edges)} edges")
    if not t.vertices:
        raise NotATree("empty tree")
    seen = {t.vertices[0]}
    stack = [t.vertices[0]]
    while stack:
        u = stack.pop()
        for w, _ in t.neighbors(u):
            if w not in seen:
                seen.add(w)
                stack.append(w)
    if seen != set(t.vertices):
        raise NotATree("dual structure is disconnected")


def direct_and_center(t: DualTree, arr: Arrangement) -> DualTree:
    """Direct every edge toward the larger-area side and find the unique sink.

    The at-most-one tie edge is directed toward the smaller face id.
    Raises CentralityViolation if no unique sink exists.
    """
    directions: dict[int, tuple[int, int]] = {}
    tie_edge = None
    areas = {f.id: f.area for f in arr.faces}
    for i, (a, b, _) in enumerate(t.edges):
        sa, sb = t.split_by_edge(i)
        area_a = sum(areas[v] for v in sa)
        area_b = sum(areas[v] for v in sb)
        if area_a < area_b:
            directions[i] = (a, b)
        elif area_b < area_a:
            directions[i] = (b, a)
        else:
            if tie_edge is not None:
                raise CentralityViolation("two tie edges")
            tie_edge = i
            directions[i] = (max(a, b), min(a, b))
    out_deg = {v: 0 for v in t.vertices}
    for i, (u, v) in directions.items():
        out_deg[u] += 1
    sinks = [v for v, d in out_deg.items() if d == 0]
    if len(sinks) != 1:
        raise CentralityViolation(f"sinks: {sinks}")
    central = sinks[0]
    # every edge must point into the component containing the sink
    for i, (u, v) in directions.items():
        sa, _ = t.split_by_edge(i)
        head_side = sa if v in sa else (set(t.vertices) - sa)
        if central not in head_side:
            raise CentralityViolation(f"edge {i} points away from the sink")
    return DualTree(vertices=list(t.vertices), edges=list(t.edges),
                    directions=directions, central=central, tie_edge=tie_edge)
