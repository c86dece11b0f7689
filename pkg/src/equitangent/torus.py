"""The curve of equal-tangent tangency pairs on the parameter torus.

A pair of boundary parameters (s, t) belongs to the curve when the two
tangent segments from the intersection of the tangent lines at x(s) and
x(t) are equal, equivalently when the chord makes equal angles with the
two tangents; parallel tangents count via the limit where both angles
are right angles, which is exactly the diameter case.

The raw field g = alpha - beta (alpha at x(s)) is antisymmetric but
flips sign across the antipodal locus t - s = pi, where the tangent
intersection swaps sides at infinity.  Tracing therefore uses the
continuous variant sign(sin(t-s)) * g, which has the same zero set;
the raw antisymmetric field is what torus_field exposes.

Both smooth body types are parametrized by the outward normal angle, so
the period is 2*pi and the antipodal locus sits exactly at t - s = pi.
Polygons are excluded: tangent directions are ambiguous at their
vertices.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import marching
from .geom import TAU, DegenerateError, GeometryError, Point
from .bodies import (
    ConvexBody,
    PiecewiseCircularCurve,
    SupportOval,
    _pcc_arc_indices,
    _pcc_center_arrays,
    tangent_probe,
    validate,
)

DIAGONAL_BAND = 0.01  # excluded band half-width, fraction of the period


class DegenerateFieldError(DegenerateError):
    """The field vanishes identically (circle-like symmetry)."""


@dataclass
class TorusLoop:
    """Component of the equal-tangent curve on the torus.

    points are (s, t) pairs wrapped into [0, 2*pi).  kind is "loop" for
    closed traced components, "diagonal" for the synthetic diagonal
    component, and "open" for chains that end at the excluded band
    without a partner.  homotopy_class is None for open chains.
    """

    points: list[tuple[float, float]]
    homotopy_class: tuple[int, int] | None
    kind: str = "loop"
    residual: float = 0.0


def _require_smooth(body: ConvexBody) -> None:
    if not isinstance(body, (SupportOval, PiecewiseCircularCurve)):
        raise GeometryError("torus analysis runs on smooth bodies only")


def _boundary_arrays(body: ConvexBody, t: np.ndarray):
    """Boundary point and CCW tangent direction at normal angles t."""
    t = np.asarray(t, dtype=float)
    if isinstance(body, SupportOval):
        h = np.asarray(body.h(t), dtype=float)
        dh = np.asarray(body.dh(t), dtype=float)
        c, s = np.cos(t), np.sin(t)
        return h * c - dh * s, h * s + dh * c, -s, c
    if isinstance(body, PiecewiseCircularCurve):
        cx, cy, r = _pcc_center_arrays(body)
        idx = _pcc_arc_indices(body, t)
        c, s = np.cos(t), np.sin(t)
        return cx[idx] + r[idx] * c, cy[idx] + r[idx] * s, -s, c
    raise GeometryError("torus analysis runs on smooth bodies only")


def field_arrays(body: ConvexBody, s: np.ndarray, t: np.ndarray, continuous: bool) -> np.ndarray:
    """alpha - beta on arrays of parameter pairs (optionally sign-fixed).

    The rays toward the tangent intersection enter only through their
    directions sign(a)*T, so no intersection point is ever formed and
    parallel tangents take the limiting branch continuously.
    """
    xs, ys, tsx, tsy = _boundary_arrays(body, s)
    xt, yt, ttx, tty = _boundary_arrays(body, t)
    cx, cy = xt - xs, yt - ys
    denom = tsx * tty - tsy * ttx
    cs = cx * tty - cy * ttx
    ct = cx * tsy - cy * tsx
    finite = np.abs(denom) > 1e-14
    sig_s = np.where(finite, np.sign(cs) * np.sign(denom), np.sign(cs))
    sig_t = np.where(finite, np.sign(ct) * np.sign(denom), np.sign(ct))
    sig_s = np.where(sig_s == 0.0, 1.0, sig_s)
    sig_t = np.where(sig_t == 0.0, 1.0, sig_t)
    vsx, vsy = sig_s * tsx, sig_s * tsy
    vtx, vty = sig_t * ttx, sig_t * tty
    alpha = np.arctan2(np.abs(cx * vsy - cy * vsx), cx * vsx + cy * vsy)
    beta = np.arctan2(np.abs(cx * vty - cy * vtx), -(cx * vtx + cy * vty))
    raw = alpha - beta
    if continuous:
        # the sign fix must take the same limiting branch as sig_s/sig_t
        # at near-parallel tangents, else antipodal nodes get noise signs
        chi = np.where(finite, np.sign(denom), 1.0)
        return chi * raw
    return raw


def torus_field(body: ConvexBody):
    """Scalar field g(s, t) = alpha - beta, zero exactly on the curve.

    Antisymmetric under swapping s and t.  Evaluation inside the
    excluded diagonal band raises.
    """
    _require_smooth(body)
    check = validate(body)
    if not check.ok:
        raise GeometryError(f"invalid body: {check.diagnostic}")

    def g(s: float, t: float) -> float:
        circ = abs((t - s + math.pi) % TAU - math.pi)
        if circ < DIAGONAL_BAND * TAU:
            raise DegenerateError("pair inside the excluded diagonal band")
        return float(field_arrays(body, np.array([s]), np.array([t]), continuous=False)[0])

    return g


def _unwrap_deltas(points: list[tuple[float, float]], close: bool):
    ds = dt = 0.0
    seq = points + [points[0]] if close else points
    for (s0, t0), (s1, t1) in zip(seq, seq[1:]):
        ds += (s1 - s0 + math.pi) % TAU - math.pi
        dt += (t1 - t0 + math.pi) % TAU - math.pi
    return ds, dt


def trace_torus_curve(body: ConvexBody, grid: int = 512) -> list[TorusLoop]:
    """Marching squares on the torus with the diagonal band excluded.

    Components that genuinely touch the diagonal (the curve closure
    meets it at curvature-critical pairs) are cut by the band into open
    chains; chains whose ends meet the band near the same diagonal point
    from opposite sides are stitched back together through it.  Closed
    loops get integer homotopy classes; a winding residual of 0.01 or
    more is reported as a broken loop, not silently rounded.  The
    diagonal itself is returned as a synthetic component, never traced.
    """
    _require_smooth(body)
    if grid < 128:
        raise GeometryError("grid must be at least 128")
    params = np.arange(grid) * (TAU / grid)
    ss, tt = np.meshgrid(params, params, indexing="ij")
    circ = np.abs((tt - ss + math.pi) % TAU - math.pi)
    band = DIAGONAL_BAND * TAU
    mask = circ < band
    vals = field_arrays(body, ss.ravel(), tt.ravel(), continuous=True).reshape(ss.shape)
    live = ~mask & np.isfinite(vals)
    if not np.any(live) or np.nanmax(np.abs(np.where(live, vals, 0.0))) < 1e-9:
        raise DegenerateFieldError("equal-tangent field vanishes identically")

    chains, closed = marching.extract_chains(vals, mask=mask, wrap_x=True, wrap_y=True)
    cell = TAU / grid
    chains = [[(ix * cell, iy * cell) for ix, iy in ch] for ch in chains]

    loops: list[TorusLoop] = []
    open_chains: list[list[tuple[float, float]]] = []
    for ch, cl in zip(chains, closed):
        if len(ch) < 3:
            continue
        if cl:
            loops.append(_close_loop(ch))
        else:
            open_chains.append(ch)

    loops.extend(_stitch_across_band(open_chains, band, cell))

    diag = [(u, u) for u in np.linspace(0.0, TAU, 256, endpoint=False)]
    loops.append(TorusLoop(points=diag, homotopy_class=(1, 1), kind="diagonal"))
    loops.sort(key=lambda lp: (lp.kind, min(lp.points) if lp.points else (0, 0)))
    return loops


def _close_loop(points: list[tuple[float, float]]) -> TorusLoop:
    ds, dt = _unwrap_deltas(points, close=True)
    p, q = ds / TAU, dt / TAU
    residual = max(abs(p - round(p)), abs(q - round(q)))
    if residual >= 0.01:
        raise GeometryError(f"broken loop: winding residual {residual:.3f}")
    return TorusLoop(
        points=points,
        homotopy_class=(int(round(p)), int(round(q))),
        kind="loop",
        residual=residual,
    )


def _stitch_across_band(open_chains, band: float, cell: float) -> list[TorusLoop]:
    """Join open chains whose ends meet the diagonal band from opposite sides."""
    ends = []
    for ci, ch in enumerate(open_chains):
        for which, (s, t) in ((0, ch[0]), (1, ch[-1])):
            delta = (t - s + math.pi) % TAU - math.pi
            near = abs(delta) <= band + 3.0 * cell
            mu = (s + 0.5 * delta) % TAU
            ends.append({"chain": ci, "end": which, "delta": delta, "mu": mu, "near": near})

    def mu_dist(a, b):
        return abs((a - b + math.pi) % TAU - math.pi)

    unmatched = [e for e in ends if e["near"]]
    matches = []
    used = set()
    for e in sorted(unmatched, key=lambda e: e["mu"]):
        key = (e["chain"], e["end"])
        if key in used:
            continue
        best, best_d = None, 4.0 * cell + band
        for f in unmatched:
            fkey = (f["chain"], f["end"])
            if fkey == key or fkey in used:
                continue
            if e["delta"] * f["delta"] > 0:
                continue
            d = mu_dist(e["mu"], f["mu"])
            if d < best_d:
                best, best_d = f, d
        if best is not None:
            used.add(key)
            used.add((best["chain"], best["end"]))
            matches.append((e, best))

    link: dict[tuple[int, int], tuple[int, int, float]] = {}
    for e, f in matches:
        mu = (e["mu"] + 0.5 * ((f["mu"] - e["mu"] + math.pi) % TAU - math.pi)) % TAU
        link[(e["chain"], e["end"])] = (f["chain"], f["end"], mu)
        link[(f["chain"], f["end"])] = (e["chain"], e["end"], mu)

    visited = set()

    def walk(start_chain: int, start_end: int):
        path: list[tuple[float, float]] = []
        cur, entry = start_chain, start_end
        while True:
            visited.add(cur)
            seg = list(open_chains[cur])
            if entry == 1:
                seg.reverse()
            path.extend(seg)
            exit_end = 1 - entry
            if (cur, exit_end) not in link:
                return path, False
            nxt, nend, mu = link[(cur, exit_end)]
            path.append((mu, mu))
            if nxt == start_chain and nend == start_end:
                return path, True
            cur, entry = nxt, nend

    out = []
    for ci in range(len(open_chains)):
        if ci in visited:
            continue
        if (ci, 0) not in link:
            pts, closed_up = walk(ci, 0)
        elif (ci, 1) not in link:
            pts, closed_up = walk(ci, 1)
        else:
            continue
        out.append(
            _close_loop(pts)
            if closed_up
            else TorusLoop(points=pts, homotopy_class=None, kind="open")
        )
    for ci in range(len(open_chains)):
        if ci in visited:
            continue
        pts, closed_up = walk(ci, 0)
        out.append(
            _close_loop(pts)
            if closed_up
            else TorusLoop(points=pts, homotopy_class=None, kind="open")
        )
    return out


def essential_loops(loops: list[TorusLoop]) -> list[TorusLoop]:
    """Closed traced loops in the class of the anti-diagonal."""
    return [
        lp
        for lp in loops
        if lp.kind == "loop" and lp.homotopy_class in ((1, -1), (-1, 1))
    ]


def count_intersections(a: TorusLoop, b: TorusLoop) -> int:
    """Transversal crossings of two torus loops, with periodic wraparound.

    The second loop is nudged by a fraction of the shortest segment
    before counting, which resolves crossings that fall exactly on a
    vertex (stitch points land on the diagonal); transversal counts are
    unchanged by the nudge.
    """
    pa = _loop_segments(a)
    pb = _loop_segments(b)
    eps = 0.25 * min(_seg_len(pa), _seg_len(pb))
    pb = [((s0 + eps, t0), (s1 + eps, t1)) for (s0, t0), (s1, t1) in pb]
    count = 0
    a0 = np.array([seg[0] for seg in pa])
    a1 = np.array([seg[1] for seg in pa])
    for (q0s, q0t), (q1s, q1t) in pb:
        shift_s = np.round((a0[:, 0] - q0s) / TAU) * TAU
        shift_t = np.round((a0[:, 1] - q0t) / TAU) * TAU
        p0 = np.stack([q0s + shift_s, q0t + shift_t], axis=1)
        p1 = np.stack([q1s + shift_s, q1t + shift_t], axis=1)
        d = p1 - p0
        e = a1 - a0
        denom = d[:, 0] * e[:, 1] - d[:, 1] * e[:, 0]
        rel = a0 - p0
        tnum = rel[:, 0] * e[:, 1] - rel[:, 1] * e[:, 0]
        unum = rel[:, 0] * d[:, 1] - rel[:, 1] * d[:, 0]
        with np.errstate(divide="ignore", invalid="ignore"):
            tpar = tnum / denom
            upar = -unum / denom
        hit = (
            (np.abs(denom) > 1e-15)
            & (tpar > 0.0)
            & (tpar < 1.0)
            & (upar > 0.0)
            & (upar < 1.0)
        )
        count += int(np.count_nonzero(hit))
    return count


def _loop_segments(loop: TorusLoop):
    pts = loop.points
    segs = []
    n = len(pts)
    for i in range(n):
        s0, t0 = pts[i]
        s1, t1 = pts[(i + 1) % n]
        s1u = s0 + ((s1 - s0 + math.pi) % TAU - math.pi)
        t1u = t0 + ((t1 - t0 + math.pi) % TAU - math.pi)
        segs.append(((s0, t0), (s1u, t1u)))
    return segs


def _seg_len(segs) -> float:
    vals = [
        v
        for p0, p1 in segs
        if (v := math.hypot(p1[0] - p0[0], p1[1] - p0[1])) > 1e-9
    ]
    return min(vals) if vals else 1e-3


def walk_loop_on_torus(body: ConvexBody, walk: list[Point], n_samples: int = 512) -> TorusLoop:
    """Tangency-pair loop traced by probing the body along a closed walk.

    A walk once around the body advances both tangency parameters by a
    full period, giving a diagonal-class loop.
    """
    from .dodecagon import sample_closed_polyline

    _require_smooth(body)
    pts = []
    for a in sample_closed_polyline(walk, n_samples):
        probe = tangent_probe(body, a)
        pts.append((probe.left.param % TAU, probe.right.param % TAU))
    ds, dt = _unwrap_deltas(pts, close=True)
    p, q = ds / TAU, dt / TAU
    residual = max(abs(p - round(p)), abs(q - round(q)))
    return TorusLoop(points=pts, homotopy_class=(int(round(p)), int(round(q))), kind="loop", residual=residual)
