"""Equitangent locus, isoptic curves, symmetry set, diameters, vertices.

The equitangent locus is the zero set of f(A) = L_left(A) - L_right(A)
over the exterior of the body.  For polygons the side-extension
convention makes f jump across extension rays; the jump changes sign
exactly where the two tangent-length intervals overlap, so plain
marching squares recovers the interval semantics on its own, and exact
on-ray evaluations use the signed interval gap.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import marching
from .geom import (
    TAU,
    DegenerateError,
    DirectedLine,
    GeometryError,
    PARALLEL,
    Point,
    cross,
    dist,
    intersect_lines,
    norm,
    normalize,
    perp,
)
from .bodies import (
    ConvexBody,
    ConvexPolygon,
    PiecewiseCircularCurve,
    ProbeError,
    SupportOval,
    body_diameter,
    boundary_point,
    boundary_polyline,
    ellipse_tangency_grid,
    interior_point,
    interval_separation,
    oval_tangency_params,
    polygon_tangent_intervals,
    support_values,
    tangent_probe,
    validate,
)
from .torus import DegenerateFieldError, trace_torus_curve


@dataclass
class ScalarField:
    """Scalar function on the exterior of a body, ready for tracing.

    eval returns NaN off the masked domain (inside the body or where the
    tangent query fails); eval_grid is the vectorized version when the
    body type supports one, else None and tracing falls back to looping.
    """

    eval: object
    domain: tuple[float, float, float, float]
    mask: object
    body: ConvexBody
    eval_grid: object = None


@dataclass
class LocusComponent:
    points: list[Point]
    kind: str  # boundary_to_boundary | boundary_to_infinity | infinity_to_infinity | closed


def body_boundary_distance(body: ConvexBody, p: Point) -> float:
    if isinstance(body, ConvexPolygon):
        return body.boundary_distance(p)
    if isinstance(body, PiecewiseCircularCurve):
        return body.boundary_distance(p)
    cache = body._cache
    if "dense_boundary" not in cache:
        pts = boundary_polyline(body, 4096)
        cache["dense_boundary"] = (
            np.array([q.x for q in pts]),
            np.array([q.y for q in pts]),
        )
    bx, by = cache["dense_boundary"]
    return float(np.min(np.hypot(bx - p.x, by - p.y)))


def _default_box(body: ConvexBody) -> tuple[float, float, float, float]:
    c = interior_point(body)
    half = 3.0 * body_diameter(body)
    return (c.x - half, c.x + half, c.y - half, c.y + half)


def _exterior_mask(body: ConvexBody):
    if isinstance(body, ConvexPolygon):
        return lambda p: not body.contains(p)

    def outside(p: Point) -> bool:
        th = np.linspace(0.0, TAU, 256, endpoint=False)
        f = p.x * np.cos(th) + p.y * np.sin(th) - support_values(body, th)
        return bool(np.max(f) > 0.0)

    return outside


def equitangent_field(body: ConvexBody, box: tuple[float, float, float, float] | None = None) -> ScalarField:
    """f(A) = L_left - L_right on the exterior; NaN inside the body.

    On polygon side extensions the value is the signed gap between the
    two tangent-length intervals, zero whenever they overlap.
    """
    check = validate(body)
    if not check.ok:
        raise GeometryError(f"invalid body: {check.diagnostic}")
    domain = box if box is not None else _default_box(body)

    def eval_point(p: Point) -> float:
        try:
            if isinstance(body, ConvexPolygon):
                left, right = polygon_tangent_intervals(body, p)
                return interval_separation(left, right)
            return tangent_probe(body, p).defect
        except (ProbeError, GeometryError):
            return math.nan

    eval_grid = None
    if isinstance(body, ConvexPolygon):
        eval_grid = _polygon_defect_grid(body)
    elif isinstance(body, SupportOval):
        eval_grid = _oval_defect_grid(body)
    return ScalarField(
        eval=eval_point,
        domain=domain,
        mask=_exterior_mask(body),
        body=body,
        eval_grid=eval_grid,
    )


def _polygon_defect_grid(poly: ConvexPolygon):
    vx = np.array([p.x for p in poly.vertices])
    vy = np.array([p.y for p in poly.vertices])
    c = interior_point(poly)
    n = poly.n

    def eval_grid(X, Y):
        X = np.asarray(X, dtype=float)
        Y = np.asarray(Y, dtype=float)
        shape = X.shape
        x, y = X.ravel(), Y.ravel()
        gx, gy = c.x - x, c.y - y
        ang = np.empty((x.size, n))
        for i in range(n):
            ux, uy = vx[i] - x, vy[i] - y
            ang[:, i] = np.arctan2(gx * uy - gy * ux, gx * ux + gy * uy)
        il = np.argmax(ang, axis=1)
        ir = np.argmin(ang, axis=1)
        ll = np.hypot(vx[il] - x, vy[il] - y)
        lr = np.hypot(vx[ir] - x, vy[ir] - y)
        inside = np.ones(x.size, dtype=bool)
        for i in range(n):
            ex, ey = vx[(i + 1) % n] - vx[i], vy[(i + 1) % n] - vy[i]
            inside &= ex * (y - vy[i]) - ey * (x - vx[i]) >= 0.0
        out = np.where(inside, np.nan, ll - lr)
        return out.reshape(shape)

    return eval_grid


def _oval_tangency_grid(oval: SupportOval, x: np.ndarray, y: np.ndarray):
    """Two tangency point arrays per query point (ellipse fast path)."""
    if oval.kind == "ellipse":
        a, b = oval.params
        return ellipse_tangency_grid(a, b, x, y)
    t1, t2 = oval_tangency_params(oval, x, y)
    return _oval_xy(oval, t1), _oval_xy(oval, t2)


def _oval_defect_grid(oval: SupportOval):
    c = interior_point(oval)

    def eval_grid(X, Y):
        X = np.asarray(X, dtype=float)
        Y = np.asarray(Y, dtype=float)
        shape = X.shape
        x, y = X.ravel(), Y.ravel()
        (p1x, p1y), (p2x, p2y) = _oval_tangency_grid(oval, x, y)
        gx, gy = c.x - x, c.y - y
        s1 = gx * (p1y - y) - gy * (p1x - x)
        s2 = gx * (p2y - y) - gy * (p2x - x)
        first_left = s1 >= s2
        llx = np.where(first_left, p1x, p2x)
        lly = np.where(first_left, p1y, p2y)
        lrx = np.where(first_left, p2x, p1x)
        lry = np.where(first_left, p2y, p1y)
        out = np.hypot(llx - x, lly - y) - np.hypot(lrx - x, lry - y)
        return out.reshape(shape)

    return eval_grid


def _oval_xy(oval: SupportOval, t: np.ndarray):
    h = np.asarray(oval.h(t), dtype=float)
    dh = np.asarray(oval.dh(t), dtype=float)
    return h * np.cos(t) - dh * np.sin(t), h * np.sin(t) + dh * np.cos(t)


def trace_locus(
    field: ScalarField,
    resolution: int,
    refine: bool = True,
    min_closed_cells: float = 3.0,
) -> list[LocusComponent]:
    """Marching-squares extraction of the zero set on the masked grid.

    Component ends within three cells of the body count as boundary
    ends; ends reaching the bounding-box frame count as ends at
    infinity.  A field that vanishes on the whole exterior (circle) is
    reported as degenerate, not traced.  Closed components smaller than
    min_closed_cells grid cells are below the method's resolving power
    (they appear where two locus branches cross at a shallow angle) and
    are dropped.
    """
    if resolution < 64:
        raise GeometryError("resolution must be at least 64")
    xmin, xmax, ymin, ymax = field.domain
    xs = np.linspace(xmin, xmax, resolution)
    ys = np.linspace(ymin, ymax, resolution)
    X, Y = np.meshgrid(xs, ys, indexing="ij")
    if field.eval_grid is not None:
        vals = field.eval_grid(X, Y)
    else:
        vals = np.array(
            [[field.eval(Point(float(x), float(y))) for y in ys] for x in xs]
        )
    dx = (xmax - xmin) / (resolution - 1)
    dy = (ymax - ymin) / (resolution - 1)
    cell = max(dx, dy)
    # keep a one-cell clearance off the boundary so cells never straddle
    # body slivers thinner than the grid (sharp polygon corners)
    clearance = _boundary_clearance_grid(field.body, X, Y)
    live = np.isfinite(vals) & (clearance >= cell)
    if not np.any(live):
        raise DegenerateFieldError("field has no live exterior samples")
    scale = body_diameter(field.body)
    if np.nanmax(np.abs(np.where(live, vals, 0.0))) < 1e-9 * scale:
        raise DegenerateFieldError("field vanishes on the exterior")
    chains, closed = marching.extract_chains(vals, mask=~live)

    components = []
    for ch, cl in zip(chains, closed):
        if len(ch) < 2:
            continue
        pts = [Point(xmin + ix * dx, ymin + iy * dy) for ix, iy in ch]
        if cl:
            span = math.hypot(
                max(p.x for p in pts) - min(p.x for p in pts),
                max(p.y for p in pts) - min(p.y for p in pts),
            )
            if span < min_closed_cells * cell:
                continue
        if refine:
            pts = _refine_on_edges(field, ch, xs, ys, pts)
        if cl:
            kind = "closed"
        else:
            ends = [_classify_end(field.body, pts[0], field.domain, cell),
                    _classify_end(field.body, pts[-1], field.domain, cell)]
            ends.sort()
            kind = f"{ends[0]}_to_{ends[1]}"
        components.append(LocusComponent(points=pts, kind=kind))
    components.sort(key=lambda comp: (min(p.x for p in comp.points), min(p.y for p in comp.points)))
    return components


def _boundary_clearance_grid(body: ConvexBody, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    """Lower bound on the distance to the body, negative-ish inside.

    Uses the support-function gap max over directions of A.u - h(u),
    which never exceeds the true exterior distance of a convex body.
    """
    x, y = X.ravel(), Y.ravel()
    if isinstance(body, ConvexPolygon):
        out = np.full(x.size, -np.inf)
        n = body.n
        for i in range(n):
            v = body.vertex(i)
            d = normalize(body.edge_vector(i))
            np.maximum(out, (x - v.x) * d.y - (y - v.y) * d.x, out=out)
        return out.reshape(X.shape)
    th = np.linspace(0.0, TAU, 128, endpoint=False)
    h = support_values(body, th)
    out = np.full(x.size, -np.inf)
    for k in range(th.size):
        np.maximum(out, x * math.cos(th[k]) + y * math.sin(th[k]) - h[k], out=out)
    return out.reshape(X.shape)


def _classify_end(body, p: Point, domain, cell: float) -> str:
    xmin, xmax, ymin, ymax = domain
    frame = min(p.x - xmin, xmax - p.x, p.y - ymin, ymax - p.y)
    if frame <= 1.5 * cell:
        return "infinity"
    if body_boundary_distance(body, p) <= 3.0 * cell:
        return "boundary"
    return "boundary" if body_boundary_distance(body, p) < frame else "infinity"


def _refine_on_edges(field: ScalarField, chain, xs, ys, pts: list[Point]) -> list[Point]:
    """Bisect the true field along each crossed grid edge."""
    lo = []
    hi = []
    for ix, iy in chain:
        if abs(ix - round(ix)) > 1e-9:  # horizontal edge
            i0 = int(math.floor(ix))
            a = (xs[i0], ys[int(round(iy))])
            b = (xs[min(i0 + 1, len(xs) - 1)], ys[int(round(iy))])
        else:  # vertical edge (or node-exact crossing)
            j0 = int(math.floor(iy))
            a = (xs[int(round(ix))], ys[j0])
            b = (xs[int(round(ix))], ys[min(j0 + 1, len(ys) - 1)])
        lo.append(a)
        hi.append(b)
    lo = np.array(lo)
    hi = np.array(hi)
    if field.eval_grid is not None:
        flo = field.eval_grid(lo[:, 0], lo[:, 1])
        fhi = field.eval_grid(hi[:, 0], hi[:, 1])
        swap = ~(flo >= 0.0) & np.isfinite(flo) & np.isfinite(fhi)
        lo2 = np.where(swap[:, None], hi, lo)
        hi2 = np.where(swap[:, None], lo, hi)
        bad = ~(np.isfinite(flo) & np.isfinite(fhi))
        for _ in range(40):
            mid = 0.5 * (lo2 + hi2)
            fm = field.eval_grid(mid[:, 0], mid[:, 1])
            pos = fm >= 0.0
            lo2 = np.where(pos[:, None], mid, lo2)
            hi2 = np.where(pos[:, None], hi2, mid)
        mid = 0.5 * (lo2 + hi2)
        return [
            pts[i] if bad[i] else Point(float(mid[i, 0]), float(mid[i, 1]))
            for i in range(len(pts))
        ]
    return pts


# ---------------------------------------------------------------------------
# Exact triangle locus


def triangle_locus_exact(tri: ConvexPolygon) -> list[LocusComponent]:
    """Equitangent locus of a triangle from its six candidate lines.

    The locus lies on the three side lines and the three perpendicular
    bisectors; membership of a candidate point is decided by the
    interval-overlap tangent convention, portions are pinned by bisecting
    the membership transitions and re-checking segment midpoints, and
    touching portions from different lines merge into one component.
    """
    if tri.n != 3:
        raise GeometryError("triangle required")
    check = validate(tri)
    if not check.ok:
        raise GeometryError(f"degenerate triangle: {check.diagnostic}")
    scale = body_diameter(tri)
    reach = 40.0 * scale
    tol = 1e-9 * scale

    lines: list[DirectedLine] = []
    for i in range(3):
        lines.append(tri.side_line(i))
    for i in range(3):
        a, b = tri.vertex(i), tri.vertex(i + 1)
        mid = 0.5 * (a + b)
        lines.append(DirectedLine(mid, normalize(perp(b - a))))

    def member(p: Point) -> bool:
        if tri.contains(p, tol=1e-12 * scale):
            return False
        try:
            left, right = polygon_tangent_intervals(tri, p)
        except ProbeError:
            return False
        return abs(interval_separation(left, right)) <= tol

    segments = []  # (line_idx, t0, t1, at_inf0, at_inf1)
    m = 8192
    ts = np.linspace(-reach, reach, m)
    for li, line in enumerate(lines):
        flags = np.array([member(line.point_at(float(t))) for t in ts])
        runs = _true_runs(flags)
        for i0, i1 in runs:
            t0 = float(ts[i0])
            t1 = float(ts[i1])
            at_inf0 = i0 == 0
            at_inf1 = i1 == m - 1
            if not at_inf0:
                t0 = _bisect_membership(member, line, float(ts[i0 - 1]), t0)
            if not at_inf1:
                t1 = _bisect_membership(member, line, float(ts[i1 + 1]), t1)
            if t1 - t0 < 1e-7 * scale:
                continue
            if not member(line.point_at(0.5 * (t0 + t1))):
                continue
            segments.append((li, t0, t1, at_inf0, at_inf1))

    # merge touching segments into connected components
    seg_pts = []
    for li, t0, t1, i0, i1 in segments:
        seg_pts.append((lines[li].point_at(t0), lines[li].point_at(t1)))
    parent = list(range(len(segments)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i, j):
        parent[find(i)] = find(j)

    join_tol = 1e-5 * scale
    for i in range(len(segments)):
        for j in range(i + 1, len(segments)):
            for pi in seg_pts[i]:
                for pj in seg_pts[j]:
                    if dist(pi, pj) <= join_tol:
                        union(i, j)

    groups: dict[int, list[int]] = {}
    for i in range(len(segments)):
        groups.setdefault(find(i), []).append(i)

    components = []
    for idxs in groups.values():
        pts, kind = _assemble_component(tri, lines, segments, idxs, scale, join_tol)
        components.append(LocusComponent(points=pts, kind=kind))
    components.sort(key=lambda comp: (min(p.x for p in comp.points), min(p.y for p in comp.points)))
    return components


def _true_runs(flags: np.ndarray) -> list[tuple[int, int]]:
    runs = []
    start = None
    for i, f in enumerate(flags):
        if f and start is None:
            start = i
        elif not f and start is not None:
            runs.append((start, i - 1))
            start = None
    if start is not None:
        runs.append((start, len(flags) - 1))
    return runs


def _bisect_membership(member, line: DirectedLine, t_out: float, t_in: float) -> float:
    for _ in range(60):
        mid = 0.5 * (t_out + t_in)
        if member(line.point_at(mid)):
            t_in = mid
        else:
            t_out = mid
    return t_in


def _assemble_component(tri, lines, segments, idxs, scale, join_tol):
    """Order a connected set of segments into one polyline and classify it."""
    remaining = set(idxs)
    endpoints = {}
    for i in idxs:
        li, t0, t1, inf0, inf1 = segments[i]
        endpoints[i] = (
            (lines[li].point_at(t0), inf0),
            (lines[li].point_at(t1), inf1),
        )

    def free_ends(i):
        out = []
        for side in (0, 1):
            p = endpoints[i][side][0]
            attached = False
            for j in idxs:
                if j == i:
                    continue
                for sj in (0, 1):
                    if dist(p, endpoints[j][sj][0]) <= join_tol:
                        attached = True
            if not attached:
                out.append(side)
        return out

    start = None
    for i in sorted(idxs):
        fe = free_ends(i)
        if fe:
            start = (i, fe[0])
            break
    if start is None:
        start = (sorted(idxs)[0], 0)

    path_pts: list[Point] = []
    flags: list[bool] = []
    cur, side = start
    while True:
        li, t0, t1, inf0, inf1 = segments[cur]
        ta, tb = (t0, t1) if side == 0 else (t1, t0)
        n_mid = max(2, int(abs(tb - ta) / (scale / 64.0)) + 1)
        for k in range(n_mid + 1):
            path_pts.append(lines[li].point_at(ta + (tb - ta) * k / n_mid))
        flags.append(inf0 if side == 0 else inf1)
        flags.append(inf1 if side == 0 else inf0)
        remaining.discard(cur)
        tail = path_pts[-1]
        nxt = None
        for j in sorted(remaining):
            for sj in (0, 1):
                if dist(tail, endpoints[j][sj][0]) <= join_tol:
                    nxt = (j, sj)
                    break
            if nxt:
                break
        if nxt is None:
            break
        cur, side = nxt

    first_inf = flags[0]
    last_inf = flags[-1]

    def end_kind(p: Point, at_inf: bool) -> str:
        if at_inf:
            return "infinity"
        return "boundary" if tri.boundary_distance(p) <= 10.0 * join_tol else "infinity"

    ends = sorted([end_kind(path_pts[0], first_inf), end_kind(path_pts[-1], last_inf)])
    return path_pts, f"{ends[0]}_to_{ends[1]}"


# ---------------------------------------------------------------------------
# Isoptics


def isoptic(body: ConvexBody, view_angle: float, resolution: int = 512) -> list[Point]:
    """The closed curve of exterior points seeing the body under view_angle.

    The isoptic family foliates the exterior, so the curve is found by
    radial bisection from an interior anchor, one ray per direction
    sample, which stays accurate even for angles close to pi where a
    grid trace would need impossibly fine cells.
    """
    if not isinstance(body, (SupportOval, PiecewiseCircularCurve)):
        raise GeometryError("isoptics are computed for smooth bodies")
    if not 0.0 < view_angle < math.pi:
        raise GeometryError("view angle must lie in (0, pi)")
    check = validate(body)
    if not check.ok:
        raise GeometryError(f"invalid body: {check.diagnostic}")
    diam = body_diameter(body)
    c = interior_point(body)
    r_hi = 1.2 * diam / (2.0 * math.sin(view_angle / 2.0)) + diam
    if r_hi > 64.0 * diam:
        raise GeometryError("view angle too small: isoptic lies beyond the tracing box")
    psi = np.arange(resolution) * (TAU / resolution)
    ux, uy = np.cos(psi), np.sin(psi)

    bpts = boundary_polyline(body, 8192)
    bang = np.array([math.atan2(q.y - c.y, q.x - c.x) for q in bpts])
    brad = np.array([dist(q, c) for q in bpts])
    order = np.argsort(bang)
    bang, brad = bang[order], brad[order]
    r_body = np.interp(
        ((psi + math.pi) % TAU) - math.pi, bang, brad, period=TAU
    )

    sub = _subtended_grid(body)

    def subtended_at(r: np.ndarray) -> np.ndarray:
        return sub(c.x + r * ux, c.y + r * uy)

    r_lo = r_body * (1.0 + 3e-5)
    vals = subtended_at(r_lo)
    for _ in range(60):
        bad = ~np.isfinite(vals)
        if not np.any(bad):
            break
        r_lo = np.where(bad, r_lo * (1.0 + 3e-5), r_lo)
        vals = subtended_at(r_lo)
    if np.any(~np.isfinite(vals)):
        raise GeometryError("failed to bracket the isoptic near the boundary")
    if np.any(vals <= view_angle):
        raise GeometryError(
            "view angle too close to pi: cannot bracket the isoptic outside the boundary"
        )
    hi = np.full(resolution, r_hi)
    if np.any(subtended_at(hi) >= view_angle):
        raise GeometryError("tracing box too small for this view angle")
    lo = r_lo
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        above = subtended_at(mid) > view_angle
        lo = np.where(above, mid, lo)
        hi = np.where(above, hi, mid)
    r = 0.5 * (lo + hi)
    return [Point(float(c.x + r[k] * ux[k]), float(c.y + r[k] * uy[k])) for k in range(resolution)]


def _subtended_grid(body: ConvexBody):
    """Vectorized visual angle of the body from exterior points."""
    if isinstance(body, SupportOval):
        def sub(x, y):
            x = np.asarray(x, dtype=float)
            y = np.asarray(y, dtype=float)
            (p1x, p1y), (p2x, p2y) = _oval_tangency_grid(body, x, y)
            u1x, u1y = p1x - x, p1y - y
            u2x, u2y = p2x - x, p2y - y
            return np.arctan2(
                np.abs(u1x * u2y - u1y * u2x), u1x * u2x + u1y * u2y
            )

        return sub

    def sub_pcc(x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        out = np.empty(x.shape)
        flat_out = out.ravel()
        for k, (px, py) in enumerate(zip(x.ravel(), y.ravel())):
            try:
                flat_out[k] = tangent_probe(body, Point(float(px), float(py))).subtended
            except (ProbeError, GeometryError):
                flat_out[k] = math.nan
        return out

    return sub_pcc


class EqualTangentCountError(GeometryError):
    """Fewer equal-tangent points than the guaranteed four were found."""


def equal_tangent_points_on_isoptic(
    body: ConvexBody, view_angle: float, resolution: int = 512
) -> list[Point]:
    """Equal-tangent points on the isoptic, refined by bisection.

    At least four exist on every isoptic of a non-circular oval; finding
    fewer raises EqualTangentCountError rather than passing silently.
    """
    curve = isoptic(body, view_angle, resolution)
    field = equitangent_field(body)
    if field.eval_grid is not None:
        cx = np.array([p.x for p in curve])
        cy = np.array([p.y for p in curve])
        vals = list(np.asarray(field.eval_grid(cx, cy), dtype=float))
    else:
        vals = [field.eval(p) for p in curve]
    scale = body_diameter(body)
    finite = [v for v in vals if math.isfinite(v)]
    if not finite or max(abs(v) for v in finite) < 1e-12 * scale:
        raise DegenerateFieldError("equitangent field degenerate on the isoptic (circle)")
    n = len(curve)
    brackets = [
        (curve[i], curve[(i + 1) % n], vals[i])
        for i in range(n)
        if math.isfinite(vals[i])
        and math.isfinite(vals[(i + 1) % n])
        and (vals[i] == 0.0 or vals[i] * vals[(i + 1) % n] < 0.0)
    ]
    pts = []
    zero_now = [a for a, _, va in brackets if va == 0.0]
    pts.extend(zero_now)
    live = [(a, b, va) for a, b, va in brackets if va != 0.0]
    if live:
        ax = np.array([a.x for a, _, _ in live])
        ay = np.array([a.y for a, _, _ in live])
        bx = np.array([b.x for _, b, _ in live])
        by = np.array([b.y for _, b, _ in live])
        fa_pos = np.array([va >= 0.0 for _, _, va in live])
        for _ in range(60):
            mx, my = 0.5 * (ax + bx), 0.5 * (ay + by)
            if field.eval_grid is not None:
                fm = np.asarray(field.eval_grid(mx, my), dtype=float)
            else:
                fm = np.array([field.eval(Point(float(x), float(y))) for x, y in zip(mx, my)])
            same = (fm >= 0.0) == fa_pos
            ax = np.where(same, mx, ax)
            ay = np.where(same, my, ay)
            bx = np.where(same, bx, mx)
            by = np.where(same, by, my)
        pts.extend(Point(float(0.5 * (ax[i] + bx[i])), float(0.5 * (ay[i] + by[i]))) for i in range(len(live)))
    dedup: list[Point] = []
    for p in pts:
        if all(dist(p, q) > 1e-6 * scale for q in dedup):
            dedup.append(p)
    if len(dedup) < 4:
        raise EqualTangentCountError(
            f"found {len(dedup)} equal-tangent points on the isoptic, expected at least 4"
        )
    return dedup


# ---------------------------------------------------------------------------
# Vertices and diameters


def vertices(oval: SupportOval, n_samples: int = 4096) -> list[tuple[float, float]]:
    """Curvature extrema (theta, curvature), at least four on any oval.

    A circle has no isolated extrema and is reported as degenerate.
    """
    check = validate(oval)
    if not check.ok:
        raise GeometryError(f"invalid oval: {check.diagnostic}")
    th = np.arange(n_samples) * (TAU / n_samples)
    rho = np.asarray(oval.h(th), dtype=float) + np.asarray(oval.d2h(th), dtype=float)
    if rho.max() - rho.min() < 1e-12 * rho.mean():
        raise DegenerateError("circle: curvature constant, no isolated vertices")
    out = []
    for i in range(n_samples):
        prev_v = rho[(i - 1) % n_samples]
        here = rho[i]
        nxt = rho[(i + 1) % n_samples]
        if here > prev_v and here > nxt:
            mode = "max"
        elif here < prev_v and here < nxt:
            mode = "min"
        else:
            continue
        a = th[(i - 1) % n_samples]
        b = a + 2.0 * (TAU / n_samples)
        t_star = _golden_section(
            lambda t: (1.0 if mode == "min" else -1.0)
            * (float(oval.h(t)) + float(oval.d2h(t))),
            a,
            b,
        )
        out.append((t_star % TAU, 1.0 / (float(oval.h(t_star)) + float(oval.d2h(t_star)))))
    out.sort()
    deduped = []
    for t, k in out:
        if all(abs(t - t2) > 1e-6 and abs(t - t2 - TAU) > 1e-6 for t2, _ in deduped):
            deduped.append((t, k))
    if len(deduped) < 4:
        raise GeometryError(f"found {len(deduped)} vertices, expected at least 4")
    return deduped


def _golden_section(f, a: float, b: float, iters: int = 120) -> float:
    inv = (math.sqrt(5.0) - 1.0) / 2.0
    x1 = b - inv * (b - a)
    x2 = a + inv * (b - a)
    f1, f2 = f(x1), f(x2)
    for _ in range(iters):
        if f1 < f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - inv * (b - a)
            f1 = f(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + inv * (b - a)
            f2 = f(x2)
    return 0.5 * (a + b)


@dataclass(frozen=True)
class Diameter:
    theta: float
    p1: Point
    p2: Point
    length: float


def diameters(oval: SupportOval, n_samples: int = 4096) -> list[Diameter]:
    """Double normals: chords normal to the boundary at both endpoints.

    Found as transversal zeros of h'(t) + h'(t + pi) on [0, pi), the
    critical points of the width; at least two exist (maximal and
    minimal width).  Constant-width ovals, circles included, carry a
    continuum of double normals and are reported as degenerate.
    """
    check = validate(oval)
    if not check.ok:
        raise GeometryError(f"invalid oval: {check.diagnostic}")
    scale = body_diameter(oval)
    th = np.arange(n_samples) * (math.pi / n_samples)
    g = np.asarray(oval.dh(th), dtype=float) + np.asarray(oval.dh(th + math.pi), dtype=float)
    if np.max(np.abs(g)) < 1e-10 * scale:
        raise DegenerateError(
            "constant width: every direction is a double normal (continuum)"
        )

    def gfun(t: float) -> float:
        return float(oval.dh(t)) + float(oval.dh(t + math.pi))

    roots = []
    for i in range(n_samples):
        a = float(th[i])
        b = float(th[(i + 1) % n_samples]) if i + 1 < n_samples else math.pi
        ga, gb = g[i], g[(i + 1) % n_samples] if i + 1 < n_samples else gfun(math.pi)
        if ga == 0.0:
            roots.append(a)
            continue
        if ga * gb < 0.0:
            lo, hi = a, b
            flo = ga
            for _ in range(80):
                mid = 0.5 * (lo + hi)
                fm = gfun(mid)
                if (fm >= 0.0) == (flo >= 0.0):
                    lo, flo = mid, fm
                else:
                    hi = mid
            roots.append(0.5 * (lo + hi))
    dedup = []
    for r in roots:
        if all(abs(r - q) > 1e-6 and abs(abs(r - q) - math.pi) > 1e-6 for q in dedup):
            dedup.append(r)
    out = []
    for t in dedup:
        p1, _ = boundary_point(oval, t)
        p2, _ = boundary_point(oval, t + math.pi)
        chord = p2 - p1
        if norm(chord) > 0 and abs(
            cross(normalize(chord), Point(math.cos(t), math.sin(t)))
        ) > 1e-6:
            raise GeometryError("double-normal chord is not aligned with the normal")
        out.append(Diameter(theta=t, p1=p1, p2=p2, length=dist(p1, p2)))
    if len(out) < 2:
        raise GeometryError(f"found {len(out)} diameters, expected at least 2")
    return out


# ---------------------------------------------------------------------------
# Symmetry set


@dataclass
class SymmetrySetBranch:
    """Bitangent-circle centers for one component of the torus curve.

    None entries are unbounded markers where the two normals are
    parallel (the tangency pair is a diameter).
    """

    homotopy_class: tuple[int, int] | None
    points: list[Point | None]


def symmetry_set(body: ConvexBody, resolution: int = 512) -> list[SymmetrySetBranch]:
    """Centers of circles tangent to the body at two points.

    Every equal-tangent tangency pair admits a bitangent circle centered
    where the two inward normals meet; branches are grouped by the torus
    curve components the pairs came from.  A circle collapses to its
    center.
    """
    if isinstance(body, SupportOval):
        th = np.linspace(0.0, TAU, 512, endpoint=False)
        h = np.asarray(body.h(th), dtype=float)
        if h.max() - h.min() < 1e-12 * h.mean():
            return [SymmetrySetBranch(homotopy_class=None, points=[interior_point(body)])]
    loops = trace_torus_curve(body, resolution)
    band = 2.0 * 0.01 * TAU
    branches = []
    for lp in loops:
        if lp.kind != "loop":
            continue
        pts: list[Point | None] = []
        for s, t in lp.points:
            if abs((t - s + math.pi) % TAU - math.pi) < band:
                continue
            x1, d1 = boundary_point(body, s)
            x2, d2 = boundary_point(body, t)
            n1 = DirectedLine(x1, Point(math.cos(s), math.sin(s)))
            n2 = DirectedLine(x2, Point(math.cos(t), math.sin(t)))
            center = intersect_lines(n1, n2, eps=1e-9)
            pts.append(None if center is PARALLEL else center)
        if pts:
            branches.append(SymmetrySetBranch(homotopy_class=lp.homotopy_class, points=pts))
    return branches
