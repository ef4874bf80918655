"""Command-line front end.

Exit codes: 0 success, 1 domain error (printed by class name on stderr),
2 usage error.  All outputs are deterministic given inputs and --seed.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from . import __version__
from .curveio import (
    FormatError,
    format_fraction,
    parse_arc,
    parse_curve,
    parse_curves,
    parse_fraction,
    serialize_curve,
)
from .geometry import GeometryError, PolyArc, PolyCurve, enclosed_area, pair_status, validate_curve


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _write(path: str | None, text: str) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _load_piece(path: str):
    text = _read(path)
    try:
        return parse_curve(text)
    except (FormatError, GeometryError):
        return parse_arc(text)


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if not hasattr(args, "func"):
        parser.print_help()
        return 2
    try:
        return args.func(args) or 0
    except (GeometryError, FormatError, ValueError) as e:
        print(f"{type(e).__name__}: {e}", file=sys.stderr)
        return 1


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="balancedcurves",
                                description="Exact toolkit for balanced curves on the measured sphere")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command")

    # curve
    curve = sub.add_parser("curve", help="curve file operations").add_subparsers(dest="sub")
    v = curve.add_parser("validate", help="validate a curve file")
    v.add_argument("path")
    v.set_defaults(func=_cmd_curve_validate)
    a = curve.add_parser("area", help="exact enclosed area")
    a.add_argument("path")
    a.set_defaults(func=_cmd_curve_area)

    # balanced
    bal = sub.add_parser("balanced", help="balanced curve graph operations").add_subparsers(dest="sub")
    c = bal.add_parser("check")
    c.add_argument("--eps", required=True)
    c.add_argument("path")
    c.set_defaults(func=_cmd_balanced_check)
    adj = bal.add_parser("adjacent")
    adj.add_argument("--eps", required=True)
    adj.add_argument("path_a")
    adj.add_argument("path_b")
    adj.set_defaults(func=_cmd_adjacent)
    adm = bal.add_parser("admissible")
    adm.add_argument("--eps", required=True)
    adm.add_argument("path_a")
    adm.add_argument("path_b")
    adm.set_defaults(func=_cmd_admissible)
    proj = bal.add_parser("project", help="construct a projection equator")
    proj.add_argument("--eps", required=True)
    proj.add_argument("path_a")
    proj.add_argument("path_b")
    proj.add_argument("-o", "--output", default="-")
    proj.set_defaults(func=_cmd_project)
    ub = bal.add_parser("upper-bound")
    ub.add_argument("--eps", required=True)
    ub.add_argument("path_a")
    ub.add_argument("path_b")
    ub.add_argument("-o", "--output", default="-")
    ub.set_defaults(func=_cmd_upper_bound)
    mp = bal.add_parser("minimal-pair")
    mp.add_argument("--eps", required=True)
    mp.add_argument("path_a")
    mp.add_argument("path_b")
    mp.set_defaults(func=_cmd_minimal_pair)
    vc = bal.add_parser("verify-cert")
    vc.add_argument("--eps", required=True)
    vc.add_argument("cert")
    vc.add_argument("path_a")
    vc.add_argument("path_b")
    vc.set_defaults(func=_cmd_verify_cert)

    # arr
    arr = sub.add_parser("arr", help="arrangements").add_subparsers(dest="sub")
    fa = arr.add_parser("faces")
    fa.add_argument("path_a")
    fa.add_argument("path_b", nargs="?")
    fa.add_argument("--svg")
    fa.set_defaults(func=_cmd_faces)
    bg = arr.add_parser("bigons")
    bg.add_argument("path_a")
    bg.add_argument("path_b")
    bg.set_defaults(func=_cmd_bigons)
    dt = arr.add_parser("dual-tree")
    dt.add_argument("path_a")
    dt.add_argument("path_b")
    dt.add_argument("--side", choices=["inside", "outside"])
    dt.add_argument("--dot")
    dt.set_defaults(func=_cmd_dual_tree)

    # witness
    wit = sub.add_parser("witness", help="witness subsurfaces").add_subparsers(dest="sub")
    wm = wit.add_parser("make")
    wm.add_argument("--eps", required=True)
    wm.add_argument("--n", type=int, required=True)
    wm.add_argument("--profile", choices=["uniform", "skewed"], default="uniform")
    wm.add_argument("--eps1")
    wm.add_argument("-o", "--output", default="-")
    wm.add_argument("--svg")
    wm.set_defaults(func=_cmd_witness_make)
    wc = wit.add_parser("check")
    wc.add_argument("--eps", required=True)
    wc.add_argument("path")
    wc.set_defaults(func=_cmd_witness_check)
    wcut = wit.add_parser("cuts")
    wcut.add_argument("witness")
    wcut.add_argument("curve")
    wcut.set_defaults(func=_cmd_witness_cuts)
    wp = wit.add_parser("project")
    wp.add_argument("witness")
    wp.add_argument("curve")
    wp.set_defaults(func=_cmd_witness_project)
    wl = wit.add_parser("lower-bound")
    wl.add_argument("--eps", required=True)
    wl.add_argument("witness")
    wl.add_argument("curve_a")
    wl.add_argument("curve_b")
    wl.add_argument("-o", "--output", default="-")
    wl.set_defaults(func=_cmd_lower_bound)

    # farey
    far = sub.add_parser("farey", help="Farey graph").add_subparsers(dest="sub")
    fd = far.add_parser("dist")
    fd.add_argument("slope_a")
    fd.add_argument("slope_b")
    fd.set_defaults(func=_cmd_farey_dist)
    fb = far.add_parser("bfs")
    fb.add_argument("slope_a")
    fb.add_argument("slope_b")
    fb.add_argument("--cap", type=int, default=24)
    fb.set_defaults(func=_cmd_farey_bfs)
    og = far.add_parser("orbit-growth")
    og.add_argument("--matrix", default="2,1,1,1", help="a,b,c,d row-major")
    og.add_argument("--start", default="0/1")
    og.add_argument("--n", type=int, default=12)
    og.add_argument("-o", "--output", default="-")
    og.set_defaults(func=_cmd_orbit_growth)

    # qm
    qm = sub.add_parser("qm", help="quasimorphism engine").add_subparsers(dest="sub")
    qe = qm.add_parser("eval")
    qe.add_argument("--word", required=True, help="path labels, e.g. 'a b' or '1 2'")
    qe.add_argument("--element", required=True)
    qe.add_argument("--R", type=int, default=1)
    qe.set_defaults(func=_cmd_qm_eval)
    qh = qm.add_parser("homogenize")
    qh.add_argument("--word", required=True)
    qh.add_argument("--element", required=True)
    qh.add_argument("--R", type=int, default=1)
    qh.add_argument("--n-max", type=int, default=8)
    qh.set_defaults(func=_cmd_qm_homogenize)
    qd = qm.add_parser("defect")
    qd.add_argument("--word", required=True)
    qd.add_argument("--R", type=int, default=1)
    qd.add_argument("--samples", type=int, default=100)
    qd.add_argument("--seed", type=int, default=0)
    qd.set_defaults(func=_cmd_qm_defect)
    qr = qm.add_parser("drift")
    qr.add_argument("--word", required=True)
    qr.add_argument("--R", type=int, default=1)
    qr.add_argument("--samples", type=int, default=50)
    qr.add_argument("--seed", type=int, default=0)
    qr.add_argument("--basepoint", default="a", help="second basepoint as a word")
    qr.set_defaults(func=_cmd_qm_drift)
    qk = qm.add_parser("rank-test")
    qk.add_argument("--k", type=int, default=5)
    qk.set_defaults(func=_cmd_qm_rank)

    # hyp
    hyp = sub.add_parser("hyp", help="hyperbolicity checkers").add_subparsers(dest="sub")
    hd = hyp.add_parser("delta")
    hd.add_argument("--graph", choices=["tree", "cycle", "farey"], default="tree")
    hd.add_argument("--size", type=int, default=12)
    hd.add_argument("--method", choices=["four-point", "slim"], default="four-point")
    hd.add_argument("--samples", type=int, default=300)
    hd.add_argument("--seed", type=int, default=0)
    hd.set_defaults(func=_cmd_hyp_delta)
    hg = hyp.add_parser("gg-delta-bound")
    hg.add_argument("--lambda", dest="lam", required=True)
    hg.set_defaults(func=_cmd_gg_bound)
    hv = hyp.add_parser("gg-verify")
    hv.add_argument("--graph", choices=["tree"], default="tree")
    hv.add_argument("--size", type=int, default=9)
    hv.add_argument("--lambda", dest="lam", default="1")
    hv.set_defaults(func=_cmd_gg_verify)

    # frag
    frag = sub.add_parser("frag", help="fragmentation certificates").add_subparsers(dest="sub")
    fbnd = frag.add_parser("bound")
    fbnd.add_argument("phi_f")
    fbnd.add_argument("defect")
    fbnd.set_defaults(func=_cmd_frag_bound)

    # experiment
    expp = sub.add_parser("experiment", help="named pipelines").add_subparsers(dest="sub")
    ts = expp.add_parser("two-scale")
    ts.add_argument("--eps1", required=True)
    ts.add_argument("--eps2", required=True)
    ts.add_argument("--n-holes", type=int, default=12)
    ts.add_argument("--n", type=int, default=12)
    ts.add_argument("-o", "--output", default="-")
    ts.set_defaults(func=_cmd_two_scale)

    return p


def _cmd_curve_validate(args):
    curves = parse_curves(_read(args.path))
    for i, c in enumerate(curves):
        print(f"curve {i}: {len(c.points)} vertices, area {format_fraction(c.area)}")
    return 0


def _cmd_curve_area(args):
    c = parse_curve(_read(args.path))
    print(format_fraction(enclosed_area(c)))
    return 0


def _cmd_balanced_check(args):
    from .balanced import is_balanced
    c = parse_curve(_read(args.path))
    print("true" if is_balanced(c, parse_fraction(args.eps)) else "false")
    return 0


def _cmd_adjacent(args):
    from .balanced import adjacent
    a = parse_curve(_read(args.path_a))
    b = parse_curve(_read(args.path_b))
    r = adjacent(a, b, parse_fraction(args.eps))
    print(r.kind)
    return 0


def _cmd_admissible(args):
    from .balanced import admissible
    a = _load_piece(args.path_a)
    b = _load_piece(args.path_b)
    ok, face = admissible(a, b, parse_fraction(args.eps))
    if ok:
        print("admissible")
    else:
        print(f"inadmissible: face of area {format_fraction(face.area)}")
    return 0


def _cmd_project(args):
    from .balanced import construct_projection_equator
    a = _load_piece(args.path_a)
    b = _load_piece(args.path_b)
    g = construct_projection_equator(a, b, parse_fraction(args.eps))
    _write(args.output, serialize_curve(g))
    return 0


def _cmd_upper_bound(args):
    from .balanced import upper_bound_distance
    a = parse_curve(_read(args.path_a))
    b = parse_curve(_read(args.path_b))
    cert = upper_bound_distance(a, b, parse_fraction(args.eps))
    _write(args.output, cert.to_json() + "\n")
    print(f"value {cert.value}", file=sys.stderr)
    return 0


def _cmd_minimal_pair(args):
    from .balanced import minimal_pair
    a = parse_arc(_read(args.path_a))
    b = parse_arc(_read(args.path_b))
    a2, b2, eta = minimal_pair(a, b, parse_fraction(args.eps))
    print(f"alpha: {len(a.points)} -> {len(a2.points)} vertices")
    print(f"beta: {len(b.points)} -> {len(b2.points)} vertices")
    print(f"shared equator area {format_fraction(eta.area)}")
    return 0


def _cmd_verify_cert(args):
    from .balanced import verify_certificate
    from .certificates import BoundCertificate
    cert = BoundCertificate.from_json(_read(args.cert))
    a = parse_curve(_read(args.path_a))
    b = parse_curve(_read(args.path_b))
    ok = verify_certificate(cert, a, b, parse_fraction(args.eps))
    print("valid" if ok else "INVALID")
    return 0 if ok else 1


def _cmd_faces(args):
    from .arrangement import build_arrangement
    from .render import render_arrangement_svg
    a = _load_piece(args.path_a)
    b = _load_piece(args.path_b) if args.path_b else None
    arr = build_arrangement(a, b)
    for f in arr.faces:
        tag = " (infinity)" if f.contains_infinity else ""
        print(f"face {f.id}: area {format_fraction(f.area)}, {f.side_count} sides{tag}")
    if args.svg:
        _write(args.svg, render_arrangement_svg(arr))
    return 0


def _cmd_bigons(args):
    from .arrangement import bigon_faces, build_arrangement
    a = parse_curve(_read(args.path_a))
    b = parse_curve(_read(args.path_b))
    arr = build_arrangement(a, b)
    bigons = bigon_faces(arr)
    print(f"{len(bigons)} bigons of {len(arr.faces)} faces")
    return 0


def _cmd_dual_tree(args):
    from .arrangement import direct_and_center, dual_tree
    from .render import render_dual_tree_dot
    a = _load_piece(args.path_a)
    b = _load_piece(args.path_b)
    t, arr = dual_tree(a, b, side=args.side)
    t = direct_and_center(t, arr)
    print(f"{len(t.vertices)} vertices, {len(t.edges)} edges, central face {t.central}")
    if args.dot:
        _write(args.dot, render_dual_tree_dot(t, arr))
    return 0


def _witness_to_text(w) -> str:
    from .curveio import serialize_points
    blocks = [list(h.points) for h in w.holes] + [list(c.points) for c in w.cut_arcs]
    header = f"# witness n={w.n} cuts={len(w.cut_arcs)}\n"
    return header + serialize_points(blocks)


def _witness_from_text(text: str):
    from .curveio import parse_points
    from .geometry import PolyArc
    from .witness import Witness, _witness_from_holes
    blocks = parse_points(text)
    n = None
    for line in text.splitlines():
        if line.startswith("# witness"):
            n = int(line.split("n=")[1].split()[0])
            break
    if n is None:
        raise FormatError("missing witness header")
    holes = [validate_curve(b) for b in blocks[:n]]
    return _witness_from_holes(holes)


def _cmd_witness_make(args):
    from .render import render_witness_svg
    from .witness import make_witness
    w = make_witness(parse_fraction(args.eps), args.n, args.profile,
                     eps1=parse_fraction(args.eps1) if args.eps1 else None)
    _write(args.output, _witness_to_text(w))
    if args.svg:
        _write(args.svg, render_witness_svg(w))
    return 0


def _cmd_witness_check(args):
    from .witness import witness_check
    w = _witness_from_text(_read(args.path))
    ok, bad = witness_check(w, parse_fraction(args.eps))
    print("true" if ok else f"false (hole {bad})")
    return 0


def _cmd_witness_cuts(args):
    from .witness import cuts_witness
    w = _witness_from_text(_read(args.witness))
    c = parse_curve(_read(args.curve))
    r = cuts_witness(c, w)
    print(f"cuts: {'true' if r.cuts else 'false'} "
          f"({len(r.arc_components)} arcs, {len(r.closed_components)} closed)")
    return 0


def _cmd_witness_project(args):
    from .witness import project_to_witness, slope_of
    w = _witness_from_text(_read(args.witness))
    c = parse_curve(_read(args.curve))
    for k in project_to_witness(c, w):
        extra = ""
        if w.n == 4:
            extra = f" slope {slope_of(k, w)}"
        print(f"word {list(k.word)}{extra}")
    return 0


def _cmd_lower_bound(args):
    from .witness import lower_bound_distance
    w = _witness_from_text(_read(args.witness))
    a = parse_curve(_read(args.curve_a))
    b = parse_curve(_read(args.curve_b))
    cert = lower_bound_distance(a, b, w, parse_fraction(args.eps))
    _write(args.output, cert.to_json() + "\n")
    print(f"value {cert.value}", file=sys.stderr)
    return 0


def _cmd_farey_dist(args):
    from .farey import farey_distance
    print(farey_distance(args.slope_a, args.slope_b))
    return 0


def _cmd_farey_bfs(args):
    from .farey import farey_bfs
    print(farey_bfs(args.slope_a, args.slope_b, args.cap))
    return 0


def _parse_matrix(text: str):
    vals = [int(v) for v in text.replace(",", " ").split()]
    if len(vals) != 4:
        raise ValueError("matrix needs 4 integers a,b,c,d")
    return ((vals[0], vals[1]), (vals[2], vals[3]))


def _cmd_orbit_growth(args):
    from .experiments import orbit_growth, orbit_growth_csv
    rows = orbit_growth(_parse_matrix(args.matrix), args.start, args.n)
    _write(args.output, orbit_growth_csv(rows))
    return 0


def _parse_word_labels(text: str):
    table = {"a": 1, "b": 2, "A": -1, "B": -2}
    out = []
    for tok in text.replace(",", " ").split():
        if tok in table:
            out.append(table[tok])
        else:
            out.append(int(tok))
    return tuple(out)


def _cmd_qm_eval(args):
    from .qm import FreeGroupBackend, h_w, path_from_labels
    fb = FreeGroupBackend()
    w = path_from_labels(fb, _parse_word_labels(args.word))
    g = fb.reduce(_parse_word_labels(args.element))
    rep = h_w(g, w, args.R, fb)
    print(format_fraction(Fraction(rep.h_value)))
    return 0


def _cmd_qm_homogenize(args):
    from .qm import FreeGroupBackend, homogenize, path_from_labels
    fb = FreeGroupBackend()
    w = path_from_labels(fb, _parse_word_labels(args.word))
    g = fb.reduce(_parse_word_labels(args.element))
    est, err, _ = homogenize(g, w, args.R, fb, n_max=args.n_max)
    print(f"{format_fraction(est)} +- {format_fraction(err)}")
    return 0


def _cmd_qm_defect(args):
    from .qm import FreeGroupBackend, defect_estimate, path_from_labels, random_free_elements
    fb = FreeGroupBackend()
    w = path_from_labels(fb, _parse_word_labels(args.word))
    rng = random.Random(args.seed)
    els = random_free_elements(rng, fb, 2 * args.samples)
    pairs = list(zip(els[::2], els[1::2]))
    print(format_fraction(defect_estimate(w, args.R, fb, pairs)))
    return 0


def _cmd_qm_drift(args):
    from .qm import FreeGroupBackend, basepoint_drift, path_from_labels, random_free_elements
    fb = FreeGroupBackend()
    w = path_from_labels(fb, _parse_word_labels(args.word))
    rng = random.Random(args.seed)
    els = random_free_elements(rng, fb, args.samples)
    y0 = fb.reduce(_parse_word_labels(args.basepoint))
    print(format_fraction(basepoint_drift(w, args.R, fb.basepoint, y0, fb, els)))
    return 0


def _cmd_qm_rank(args):
    from .qm import FreeGroupBackend, homogenize, path_from_labels, rank_of_rational_matrix
    fb = FreeGroupBackend()
    k = args.k
    rows = []
    for i in range(1, k + 1):
        w = path_from_labels(fb, (1,) + (2,) * i)
        row = []
        for j in range(1, k + 1):
            g = fb.reduce((1,) + (2,) * j)
            est, err, _ = homogenize(g, w, 1, fb, n_max=6)
            row.append(est)
        rows.append(row)
    r = rank_of_rational_matrix(rows)
    print(f"rank {r} of {k}")
    return 0


def _cmd_hyp_delta(args):
    from .hyperbolicity import (cycle_graph, farey_ball_graph, four_point_delta,
                                random_tree, slim_delta_sampled)
    if args.graph == "tree":
        adj = random_tree(args.size, args.seed)
    elif args.graph == "cycle":
        adj = cycle_graph(args.size)
    else:
        adj = farey_ball_graph(args.size)
    if args.method == "four-point":
        print(format_fraction(four_point_delta(adj)))
    else:
        print(format_fraction(slim_delta_sampled(adj, args.samples, args.seed)))
    return 0


def _cmd_gg_bound(args):
    from .hyperbolicity import gg_delta_bound
    g = gg_delta_bound(parse_fraction(args.lam))
    print(f"m={g.m} delta={format_fraction(g.delta_bound)}")
    return 0


def _cmd_gg_verify(args):
    from .hyperbolicity import _bfs_geodesic, gg_verify, random_tree
    adj = random_tree(args.size, 0)
    ok = gg_verify(adj, lambda x, y: _bfs_geodesic(adj, x, y), parse_fraction(args.lam))
    print("true" if ok else "false")
    return 0


def _cmd_frag_bound(args):
    from .qm import frag_lower_bound
    print(format_fraction(frag_lower_bound(parse_fraction(args.phi_f),
                                           parse_fraction(args.defect))))
    return 0


def _cmd_two_scale(args):
    from .experiments import orbit_growth_csv, two_scale_experiment
    w, alpha, rows, cert = two_scale_experiment(
        parse_fraction(args.eps1), parse_fraction(args.eps2),
        n_holes=args.n_holes, n_max=args.n)
    _write(args.output, orbit_growth_csv(rows))
    print(f"upper certificate at eps1: value {cert.value}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
