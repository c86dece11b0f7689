"""Command-line surface: construction, certification, loci, reports.

Angles are degrees on the command line and radians in every CSV.  Each
command writes its delimited output plus an SVG and a PNG rendering
into --outdir, with byte-identical files across reruns of the same
configuration.  Exit codes: 0 claim verified, 1 claim falsified or
degenerate, 2 usage error.
"""

import argparse
import csv
import math
import os
import sys

from .geom import TAU, DegenerateError, GeometryError, Point
from .bodies import (
    ConvexPolygon,
    SupportOval,
    boundary_polyline,
    dump_body,
    load_body,
    validate,
)
from .dodecagon import (
    DodecagonParams,
    build_dodecagon,
    certify_walk,
    chord_motion,
    interpolate_motion,
    outer_star,
    smooth,
    smoothed_star,
    state_angles,
    state_apex,
)
from . import figures
from .loci import (
    equal_tangent_points_on_isoptic,
    equitangent_field,
    isoptic,
    trace_locus,
    triangle_locus_exact,
)
from .svg import SvgCanvas
from .torus import essential_loops, trace_torus_curve
from .verify import run_all


class UsageError(ValueError):
    pass


def _parse_floats(text: str, n: int | None = None) -> list[float]:
    try:
        vals = [float(v) for v in text.split(",") if v != ""]
    except ValueError as exc:
        raise UsageError(f"expected comma-separated numbers, got {text!r}") from exc
    if n is not None and len(vals) != n:
        raise UsageError(f"expected {n} numbers, got {len(vals)} in {text!r}")
    return vals


def parse_body(spec: str):
    """Body from a JSON path or a builtin spec string.

    Builtins: ellipse:a,b | circle:r | fourier:c0,a1,b1[,...] |
    dodecagon[:phi_deg,psi_deg[,side]] | smoothed[:phi_deg,psi_deg[,side[,r,R]]].
    Returns (body, star_walk or None).
    """
    if spec.endswith(".json"):
        return load_body(spec), None
    name, _, rest = spec.partition(":")
    if name == "ellipse":
        a, b = _parse_floats(rest, 2)
        return SupportOval.ellipse(a, b), None
    if name == "circle":
        (r,) = _parse_floats(rest, 1)
        return SupportOval.circle(r), None
    if name == "fourier":
        vals = _parse_floats(rest)
        if len(vals) < 3 or len(vals) % 2 == 0:
            raise UsageError("fourier spec needs c0 followed by (a_k, b_k) pairs")
        coeffs = [(vals[i], vals[i + 1]) for i in range(1, len(vals), 2)]
        return SupportOval.fourier(vals[0], coeffs), None
    if name in ("dodecagon", "smoothed"):
        vals = _parse_floats(rest) if rest else []
        phi_deg = vals[0] if len(vals) > 0 else 2.0
        psi_deg = vals[1] if len(vals) > 1 else 3.0
        side = vals[2] if len(vals) > 2 else 1.0
        params = DodecagonParams(side=side, phi=math.radians(phi_deg), psi=math.radians(psi_deg))
        poly = build_dodecagon(params)
        states = chord_motion(poly)
        if name == "dodecagon":
            return poly, outer_star(states).points
        r_small = vals[3] if len(vals) > 3 else 1e-3
        r_large = vals[4] if len(vals) > 4 else 1e3
        pcc = smooth(poly, r_small, r_large)
        return pcc, smoothed_star(pcc, states).points
    raise UsageError(f"unknown body spec {spec!r}")


def parse_walk(spec: str, star_points):
    if spec == "star":
        if star_points is None:
            raise UsageError("walk 'star' needs a dodecagon or smoothed body spec")
        return star_points
    name, _, rest = spec.partition(":")
    if name == "circle":
        (r,) = _parse_floats(rest, 1)
        return [Point(r * math.cos(t), r * math.sin(t)) for t in
                [k * TAU / 256 for k in range(256)]]
    if spec.endswith(".json"):
        import json

        with open(spec) as fh:
            return [Point(float(x), float(y)) for x, y in json.load(fh)]
    raise UsageError(f"unknown walk spec {spec!r}")


def _outpath(args, suffix: str) -> str:
    os.makedirs(args.outdir, exist_ok=True)
    return os.path.join(args.outdir, f"{args.name}{suffix}")


def _write_csv(path: str, header: list[str], rows) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow([repr(float(v)) if isinstance(v, float) else v for v in row])


def _body_outline(body) -> list[Point]:
    pts = boundary_polyline(body, 512)
    return pts + [pts[0]]


def _build_or_usage(params: DodecagonParams) -> ConvexPolygon:
    try:
        return build_dodecagon(params)
    except GeometryError as exc:
        raise UsageError(str(exc)) from exc


def cmd_construct(args) -> int:
    params = DodecagonParams(
        side=args.side, phi=math.radians(args.phi), psi=math.radians(args.psi)
    )
    poly = _build_or_usage(params)
    states = chord_motion(poly)
    star = outer_star(states)
    if args.smooth:
        r_small, r_large = _parse_floats(args.smooth, 2)
        body = smooth(poly, r_small, r_large)
        walk = smoothed_star(body, states)
    else:
        body = poly
        walk = star
    dump_body(body, _outpath(args, ".json"))

    canvas = SvgCanvas()
    canvas.path(_body_outline(body), stroke="#202020", width=0.008, elem_id="body")
    for k, s in enumerate(states):
        canvas.path(list(s.chord), stroke="#87a9c7", width=0.004, elem_id=f"chord-{k}")
    canvas.path(
        walk.points + [walk.points[0]], stroke="#c02020", width=0.008, elem_id="star"
    )
    for k in range(9):
        apex = walk.state_apexes[k]
        canvas.circle(apex, 0.02, fill="#c02020")
        canvas.text(apex + Point(0.04, 0.04), str(k + 1), size=0.12)
    canvas.write(_outpath(args, ".svg"))

    if not args.no_png:
        figures.save_figure(
            _outpath(args, ".png"),
            curves=[
                (_body_outline(body), {"color": "#202020", "lw": 1.2, "label": "body"}),
                (walk.points + [walk.points[0]], {"color": "#c02020", "lw": 1.0, "label": "star"}),
            ]
            + [(list(s.chord), {"color": "#87a9c7", "lw": 0.5}) for s in states],
            title="construction",
        )
    kind = "24-arc smoothed curve" if args.smooth else "12-gon"
    print(f"constructed {kind}; body JSON, SVG and figure written to {args.outdir}")
    return 0


def cmd_certify(args) -> int:
    body, star_points = parse_body(args.body)
    walk = parse_walk(args.walk, star_points)
    cert = certify_walk(body, walk, args.samples)
    _write_csv(
        _outpath(args, ".csv"),
        ["sample_index", "x", "y", "alpha_rad", "beta_rad", "len_left", "len_right", "defect"],
        cert.rows,
    )
    canvas = SvgCanvas()
    canvas.path(_body_outline(body), stroke="#202020", width=0.008, elem_id="body")
    canvas.path(list(walk) + [walk[0]], stroke="#c02020", width=0.008, elem_id="walk")
    canvas.write(_outpath(args, ".svg"))
    if not args.no_png:
        figures.save_figure(
            _outpath(args, ".png"),
            curves=[
                (_body_outline(body), {"color": "#202020", "lw": 1.2, "label": "body"}),
                (list(walk) + [walk[0]], {"color": "#c02020", "lw": 1.0, "label": "walk"}),
            ],
            title=f"walk certificate: min defect {cert.min_defect:.6f}",
        )
    print(
        f"min defect {cert.min_defect:.9f}, min angle gap {cert.min_angle_gap:.9f} rad, "
        f"strict sign {cert.all_same_sign}, angle sums below pi {cert.angle_sum_ok}, "
        f"defect sign changes {cert.sign_changes}"
    )
    if cert.verified:
        print("certificate holds: the right tangent segment stays strictly shorter")
        return 0
    print("certificate fails on this walk")
    return 1


def cmd_motion(args) -> int:
    params = DodecagonParams(
        side=args.side, phi=math.radians(args.phi), psi=math.radians(args.psi)
    )
    poly = _build_or_usage(params)
    states = chord_motion(poly)
    center = poly.centroid()
    rows = []
    stream = interpolate_motion(states, args.samples_per_step)
    for k, s in enumerate(stream):
        apex = state_apex(s)
        beta, alpha = state_angles(s, center)
        step = k // max(args.samples_per_step - 1, 1)
        rows.append((step, k, apex.x, apex.y, beta, alpha))
    _write_csv(
        _outpath(args, ".csv"),
        ["state_index", "sample_index", "x", "y", "beta_rad", "alpha_rad"],
        rows,
    )
    star = outer_star(states)
    canvas = SvgCanvas()
    canvas.path([poly.vertex(i) for i in range(13)], stroke="#202020", width=0.008, elem_id="body")
    for k, s in enumerate(states):
        canvas.path(list(s.chord), stroke="#87a9c7", width=0.004, elem_id=f"chord-{k}")
    canvas.path(star.points + [star.points[0]], stroke="#c02020", width=0.008, elem_id="star")
    canvas.write(_outpath(args, ".svg"))
    if not args.no_png:
        figures.save_figure(
            _outpath(args, ".png"),
            curves=[
                ([poly.vertex(i) for i in range(13)], {"color": "#202020", "lw": 1.2}),
                (star.points + [star.points[0]], {"color": "#c02020", "lw": 1.0}),
            ]
            + [(list(s.chord), {"color": "#87a9c7", "lw": 0.5}) for s in states],
            title="chord motion",
        )
    gaps = [r[5] - r[4] for r in rows]
    print(f"{len(rows)} motion samples, min angle gap {min(gaps):.9f} rad")
    return 0 if min(gaps) > 0 else 1


def cmd_locus(args) -> int:
    body, _ = parse_body(args.body)
    box = None
    if args.box is not None:
        half = float(args.box)
        box = (-half, half, -half, half)
    field = equitangent_field(body, box=box)
    try:
        comps = trace_locus(field, args.resolution)
    except DegenerateError as exc:
        print(f"degenerate: {exc}")
        return 1
    rows = []
    for cid, comp in enumerate(comps):
        for p in comp.points:
            rows.append((cid, comp.kind, p.x, p.y))
    _write_csv(_outpath(args, ".csv"), ["component_id", "kind", "x", "y"], rows)
    canvas = SvgCanvas()
    canvas.path(_body_outline(body), stroke="#202020", width=0.01, elem_id="body")
    for cid, comp in enumerate(comps):
        canvas.path(comp.points, stroke="#c02020", width=0.01, elem_id=f"component-{cid}")
    canvas.write(_outpath(args, ".svg"))
    if not args.no_png:
        figures.save_figure(
            _outpath(args, ".png"),
            curves=[(_body_outline(body), {"color": "#202020", "lw": 1.2})]
            + [(comp.points, {"color": "#c02020", "lw": 0.9}) for comp in comps],
            title="equitangent locus",
        )
    census = {}
    for comp in comps:
        census[comp.kind] = census.get(comp.kind, 0) + 1
    print(f"{len(comps)} components: " + ", ".join(f"{k}={v}" for k, v in sorted(census.items())))
    return 0


def cmd_isoptic(args) -> int:
    body, _ = parse_body(args.body)
    angle = math.radians(args.angle_deg)
    curve = isoptic(body, angle, args.resolution)
    _write_csv(_outpath(args, ".csv"), ["x", "y"], [(p.x, p.y) for p in curve])
    try:
        pts = equal_tangent_points_on_isoptic(body, angle, args.resolution)
    except DegenerateError as exc:
        print(f"degenerate: {exc}")
        return 1
    _write_csv(
        _outpath(args, "_points.csv"), ["x", "y"], [(p.x, p.y) for p in pts]
    )
    canvas = SvgCanvas()
    canvas.path(_body_outline(body), stroke="#202020", width=0.01, elem_id="body")
    canvas.path(curve + [curve[0]], stroke="#2020c0", width=0.01, elem_id="isoptic")
    for k, p in enumerate(pts):
        canvas.circle(p, 0.03, fill="#c02020", elem_id=f"equal-tangent-{k}")
    canvas.write(_outpath(args, ".svg"))
    if not args.no_png:
        figures.save_figure(
            _outpath(args, ".png"),
            curves=[
                (_body_outline(body), {"color": "#202020", "lw": 1.2}),
                (curve + [curve[0]], {"color": "#2020c0", "lw": 1.0}),
            ],
            points=[(pts, {"color": "#c02020", "s": 18.0})],
            title=f"isoptic at {args.angle_deg} degrees",
        )
    print(f"{len(pts)} equal-tangent points on the isoptic")
    return 0 if len(pts) >= 4 else 1


def cmd_torus(args) -> int:
    body, _ = parse_body(args.body)
    try:
        loops = trace_torus_curve(body, args.grid)
    except DegenerateError as exc:
        print(f"degenerate: {exc}")
        return 1
    rows = []
    loop_id = 0
    for lp in loops:
        if lp.homotopy_class is None:
            continue
        p, q = lp.homotopy_class
        for s, t in lp.points:
            rows.append((loop_id, p, q, s, t))
        loop_id += 1
    _write_csv(_outpath(args, ".csv"), ["loop_id", "class_p", "class_q", "s", "t"], rows)
    canvas = SvgCanvas()
    frame = [Point(0, 0), Point(TAU, 0), Point(TAU, TAU), Point(0, TAU), Point(0, 0)]
    canvas.path(frame, stroke="#202020", width=0.02, elem_id="frame")
    lid = 0
    for lp in loops:
        color = "#909090" if lp.kind == "diagonal" else "#c02020"
        for piece in _split_wrapped(lp.points):
            canvas.path(piece, stroke=color, width=0.02, elem_id=f"loop-{lid}", dashed=lp.kind == "diagonal")
            lid += 1
    canvas.write(_outpath(args, ".svg"))
    if not args.no_png:
        curves = [(frame, {"color": "#202020", "lw": 1.0})]
        for lp in loops:
            color = "#909090" if lp.kind == "diagonal" else "#c02020"
            for piece in _split_wrapped(lp.points):
                curves.append((piece, {"color": color, "lw": 0.9}))
        figures.save_figure(_outpath(args, ".png"), curves=curves, title="equal-tangent pairs on the torus")
    ess = essential_loops(loops)
    print(f"{sum(1 for lp in loops if lp.kind == 'loop')} traced loops, {len(ess)} essential")
    return 0


def _split_wrapped(points):
    pieces = []
    cur = [Point(points[0][0], points[0][1])]
    for (s0, t0), (s1, t1) in zip(points, points[1:]):
        if abs(s1 - s0) > math.pi or abs(t1 - t0) > math.pi:
            pieces.append(cur)
            cur = []
        cur.append(Point(s1, t1))
    pieces.append(cur)
    return [p for p in pieces if len(p) > 1]


def cmd_triangle(args) -> int:
    vals = _parse_floats(args.vertices, 6)
    tri = ConvexPolygon([Point(vals[0], vals[1]), Point(vals[2], vals[3]), Point(vals[4], vals[5])])
    check = validate(tri)
    if not check.ok:
        raise UsageError(f"vertices do not form a CCW triangle: {check.diagnostic}")
    exact = triangle_locus_exact(tri)
    field = equitangent_field(tri)
    traced = trace_locus(field, args.resolution)
    rows = []
    for cid, comp in enumerate(exact):
        for p in comp.points:
            rows.append((cid, comp.kind, p.x, p.y))
    _write_csv(_outpath(args, ".csv"), ["component_id", "kind", "x", "y"], rows)
    canvas = SvgCanvas()
    canvas.path([tri.vertex(i) for i in range(4)], stroke="#202020", width=0.02, elem_id="body")
    for cid, comp in enumerate(exact):
        canvas.path(comp.points, stroke="#c02020", width=0.02, elem_id=f"component-{cid}")
    canvas.write(_outpath(args, ".svg"))
    if not args.no_png:
        figures.save_figure(
            _outpath(args, ".png"),
            curves=[([tri.vertex(i) for i in range(4)], {"color": "#202020", "lw": 1.2})]
            + [(comp.points, {"color": "#c02020", "lw": 0.9}) for comp in exact],
            title="triangle equitangent locus",
        )

    def census(comps):
        out = {}
        for comp in comps:
            out[comp.kind] = out.get(comp.kind, 0) + 1
        return out

    ce, ct = census(exact), census(traced)
    print(f"exact census: {ce}")
    print(f"traced census: {ct}")
    if ce == ct:
        print("censuses agree")
        return 0
    print("censuses disagree")
    return 1


def cmd_verify_all(args) -> int:
    results = run_all(seed=args.seed)
    for r in results:
        print(r.line())
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} criteria passed")
    return 0 if not failed else 1


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="equitangent",
        description=(
            "Tangent-segment geometry of convex plane curves: build and certify "
            "the oval whose right tangent segment stays strictly shorter along a "
            "closed walk, and compute equitangent loci, isoptics, symmetry sets "
            "and torus curves."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, default_name):
        p.add_argument("--outdir", default="out", help="output directory")
        p.add_argument("--name", default=default_name, help="output file stem")
        p.add_argument("--no-png", action="store_true", help="skip the PNG figure")

    p = sub.add_parser("construct", help="build the dodecagon (optionally smoothed)")
    p.add_argument("--phi", type=float, default=2.0, help="angle at A_i in degrees")
    p.add_argument("--psi", type=float, default=3.0, help="angle at A_{i+1} in degrees")
    p.add_argument("--side", type=float, default=1.0, help="hexagon side length")
    p.add_argument("--smooth", default=None, metavar="r,R", help="smooth with vertex radius r, side radius R")
    common(p, "construct")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("certify", help="walk certificate for a body")
    p.add_argument("--body", required=True, help="JSON path or builtin body spec")
    p.add_argument("--walk", default="star", help="star | circle:r | polyline JSON path")
    p.add_argument("-n", "--samples", type=int, default=10_000)
    common(p, "certify")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("motion", help="nine-step chord motion table")
    p.add_argument("--phi", type=float, default=2.0)
    p.add_argument("--psi", type=float, default=3.0)
    p.add_argument("--side", type=float, default=1.0)
    p.add_argument("--samples-per-step", type=int, default=2)
    common(p, "motion")
    p.set_defaults(func=cmd_motion)

    p = sub.add_parser("locus", help="trace the equitangent locus")
    p.add_argument("--body", required=True)
    p.add_argument("--resolution", type=int, default=512)
    p.add_argument("--box", default=None, help="half-width of a centered tracing box")
    common(p, "locus")
    p.set_defaults(func=cmd_locus)

    p = sub.add_parser("isoptic", help="isoptic curve and its equal-tangent points")
    p.add_argument("--body", required=True)
    p.add_argument("--angle-deg", type=float, required=True)
    p.add_argument("--resolution", type=int, default=512)
    common(p, "isoptic")
    p.set_defaults(func=cmd_isoptic)

    p = sub.add_parser("torus", help="equal-tangent pairs on the parameter torus")
    p.add_argument("--body", required=True)
    p.add_argument("--grid", type=int, default=512)
    common(p, "torus")
    p.set_defaults(func=cmd_torus)

    p = sub.add_parser("triangle", help="exact and traced locus of a triangle")
    p.add_argument("--vertices", required=True, help="x1,y1,x2,y2,x3,y3 counterclockwise")
    p.add_argument("--resolution", type=int, default=1024)
    common(p, "triangle")
    p.set_defaults(func=cmd_triangle)

    p = sub.add_parser("verify-all", help="run every acceptance criterion")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify_all)

    args = parser.parse_args(argv)
    if getattr(args, "resolution", None) is not None and not 64 <= args.resolution <= 4096:
        parser.error("resolution must lie in [64, 4096]")
    if getattr(args, "grid", None) is not None and not 128 <= args.grid <= 4096:
        parser.error("grid must lie in [128, 4096]")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except GeometryError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2 if isinstance(exc, UsageError) else 1


if __name__ == "__main__":
    sys.exit(main())
