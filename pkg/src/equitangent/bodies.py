"""Convex-body representations and the unified two-tangent query.

Three interchangeable body types:

* ``ConvexPolygon``      -- counterclockwise, strictly convex vertex list.
* ``PiecewiseCircularCurve`` -- closed C1 chain of left-turning arcs.
* ``SupportOval``        -- smooth oval given by its support function h
  with derivatives, boundary point x(t) = (h cos t - h' sin t,
  h sin t + h' cos t) at support angle t.

Smooth bodies (oval and arc chain) are parametrized by the outward
normal angle, which is strictly monotone around a strictly convex curve,
so one scalar parameter in [0, 2*pi) serves both.  Polygons are
parametrized by arc length.

Left and right tangencies are labelled by chirality: looking from the
exterior point toward an interior anchor of the body, the left tangency
lies counterclockwise of the gaze.  The chord-tangent angle ``alpha``
sits at the tangency named by ``ALPHA_SIDE`` and ``beta`` at the other;
the assignment is pinned by the dodecagon angle table (flipping the
constant is the designed fallback if that table ever disagrees).
"""

import json
import math
from dataclasses import dataclass

import numpy as np

from .geom import (
    TAU,
    CircleArc,
    DegenerateError,
    DirectedLine,
    GeometryError,
    Point,
    angle_of,
    cross,
    dist,
    dot,
    norm,
    normalize,
    ray_angle,
)

# Which tangency carries alpha in (beta, alpha) pairs; validated against
# the dodecagon's symbolic angle table in the test suite.
ALPHA_SIDE = "right"


class ProbeError(GeometryError):
    """A tangent query could not be answered."""


class SideCollinearError(ProbeError):
    """Exterior point lies on a side extension; use side_extension_probe."""


@dataclass
class ConvexPolygon:
    vertices: list[Point]

    def __post_init__(self) -> None:
        self._cache: dict = {}

    @property
    def n(self) -> int:
        return len(self.vertices)

    def vertex(self, i: int) -> Point:
        return self.vertices[i % self.n]

    def edge_vector(self, i: int) -> Point:
        return self.vertex(i + 1) - self.vertex(i)

    def side_line(self, i: int) -> DirectedLine:
        return DirectedLine.through(self.vertex(i), self.vertex(i + 1))

    def side_lengths(self) -> list[float]:
        return [norm(self.edge_vector(i)) for i in range(self.n)]

    def perimeter(self) -> float:
        return sum(self.side_lengths())

    def cumulative_lengths(self) -> list[float]:
        if "cum" not in self._cache:
            acc, out = 0.0, [0.0]
            for s in self.side_lengths():
                acc += s
                out.append(acc)
            self._cache["cum"] = out
        return self._cache["cum"]

    def signed_area(self) -> float:
        v = self.vertices
        return 0.5 * sum(cross(v[i], v[(i + 1) % self.n]) for i in range(self.n))

    def centroid(self) -> Point:
        v = self.vertices
        a = cx = cy = 0.0
        for i in range(self.n):
            p, q = v[i], v[(i + 1) % self.n]
            w = cross(p, q)
            a += w
            cx += (p.x + q.x) * w
            cy += (p.y + q.y) * w
        if abs(a) < 1e-300:
            raise DegenerateError("degenerate polygon")
        return Point(cx / (3.0 * a), cy / (3.0 * a))

    def contains(self, p: Point, tol: float = 0.0) -> bool:
        """True when p is inside or within tol of the boundary (CCW polygon)."""
        return all(
            cross(self.edge_vector(i), p - self.vertex(i)) >= -tol * norm(self.edge_vector(i))
            for i in range(self.n)
        )

    def boundary_distance(self, p: Point) -> float:
        best = math.inf
        for i in range(self.n):
            a, b = self.vertex(i), self.vertex(i + 1)
            e = b - a
            t = max(0.0, min(1.0, dot(p - a, e) / dot(e, e)))
            best = min(best, dist(p, a + t * e))
        return best


@dataclass
class PiecewiseCircularCurve:
    arcs: list[CircleArc]

    def __post_init__(self) -> None:
        self._cache: dict = {}

    def normal_breaks(self) -> np.ndarray:
        """Unwrapped normal angles nu[0..n], arc i covering [nu[i], nu[i+1])."""
        if "breaks" not in self._cache:
            nu = [self.arcs[0].start_angle % TAU]
            for arc in self.arcs:
                nu.append(nu[-1] + arc.sweep)
            self._cache["breaks"] = np.array(nu)
        return self._cache["breaks"]

    def arc_index_at(self, theta: float) -> int:
        nu = self.normal_breaks()
        t = nu[0] + (theta - nu[0]) % TAU
        i = int(np.searchsorted(nu, t, side="right") - 1)
        return min(max(i, 0), len(self.arcs) - 1)

    def point_at_normal(self, theta: float) -> Point:
        arc = self.arcs[self.arc_index_at(theta)]
        return arc.point_at(theta)

    def support(self, theta: float) -> float:
        arc = self.arcs[self.arc_index_at(theta)]
        return arc.center.x * math.cos(theta) + arc.center.y * math.sin(theta) + arc.radius

    def perimeter(self) -> float:
        return sum(arc.length for arc in self.arcs)

    def boundary_distance(self, p: Point) -> float:
        return min(arc.distance_to(p) for arc in self.arcs)


@dataclass
class SupportOval:
    """Smooth strictly convex body with support function h and derivatives."""

    h: object
    dh: object
    d2h: object
    kind: str = "custom"
    params: tuple = ()

    def __post_init__(self) -> None:
        self._cache: dict = {}

    @staticmethod
    def ellipse(a: float, b: float) -> "SupportOval":
        if a <= 0 or b <= 0:
            raise GeometryError("ellipse semi-axes must be positive")
        a2, b2 = a * a, b * b

        def h(t):
            return np.sqrt(a2 * np.cos(t) ** 2 + b2 * np.sin(t) ** 2)

        def dh(t):
            return -(a2 - b2) * np.sin(2 * t) / (2.0 * h(t))

        def d2h(t):
            # radius of curvature of an ellipse in support form is a^2 b^2 / h^3
            return a2 * b2 / h(t) ** 3 - h(t)

        return SupportOval(h, dh, d2h, kind="ellipse", params=(a, b))

    @staticmethod
    def circle(r: float) -> "SupportOval":
        return SupportOval.ellipse(r, r)

    @staticmethod
    def fourier(c0: float, coeffs: list[tuple[float, float]]) -> "SupportOval":
        """h(t) = c0 + sum_k (a_k cos kt + b_k sin kt), coeffs = [(a1,b1),...]."""
        ab = [(float(a), float(b)) for a, b in coeffs]

        def h(t):
            out = c0 + np.zeros_like(np.asarray(t, dtype=float))
            for k, (a, b) in enumerate(ab, start=1):
                out = out + a * np.cos(k * t) + b * np.sin(k * t)
            return out

        def dh(t):
            out = np.zeros_like(np.asarray(t, dtype=float))
            for k, (a, b) in enumerate(ab, start=1):
                out = out + k * (-a * np.sin(k * t) + b * np.cos(k * t))
            return out

        def d2h(t):
            out = np.zeros_like(np.asarray(t, dtype=float))
            for k, (a, b) in enumerate(ab, start=1):
                out = out - k * k * (a * np.cos(k * t) + b * np.sin(k * t))
            return out

        flat = [c0]
        for a, b in ab:
            flat.extend((a, b))
        return SupportOval(h, dh, d2h, kind="fourier", params=tuple(flat))


ConvexBody = ConvexPolygon | PiecewiseCircularCurve | SupportOval


@dataclass(frozen=True)
class Validation:
    ok: bool
    diagnostic: str | None = None


def validate(body: ConvexBody) -> Validation:
    """Check all type invariants; the diagnostic names the first violation."""
    if isinstance(body, ConvexPolygon):
        return _validate_polygon(body)
    if isinstance(body, PiecewiseCircularCurve):
        return _validate_pcc(body)
    if isinstance(body, SupportOval):
        return _validate_oval(body)
    raise TypeError(f"not a convex body: {type(body).__name__}")


def _validate_polygon(poly: ConvexPolygon) -> Validation:
    n = poly.n
    if n < 3:
        return Validation(False, "vertex count")
    scale = max(dist(a, b) for a in poly.vertices for b in poly.vertices)
    if scale == 0.0:
        return Validation(False, "repeated vertices")
    for i in range(n):
        if dist(poly.vertex(i), poly.vertex(i + 1)) < 1e-12 * scale:
            return Validation(False, "repeated vertices")
    if poly.signed_area() < 0.0:
        return Validation(False, "orientation")
    for i in range(n):
        e0 = poly.edge_vector(i - 1)
        e1 = poly.edge_vector(i)
        if cross(e0, e1) <= 1e-12 * norm(e0) * norm(e1):
            return Validation(False, "convexity")
    return Validation(True)


def _validate_pcc(pcc: PiecewiseCircularCurve) -> Validation:
    arcs = pcc.arcs
    if not arcs:
        return Validation(False, "empty arc list")
    scale = max(arc.radius for arc in arcs)
    for arc in arcs:
        if arc.orientation != "ccw":
            return Validation(False, "arc orientation")
    for i, arc in enumerate(arcs):
        nxt = arcs[(i + 1) % len(arcs)]
        if dist(arc.end_point(), nxt.start_point()) > 1e-9 * scale:
            return Validation(False, "C1 endpoint continuity")
        if abs((arc.end_angle - nxt.start_angle + math.pi) % TAU - math.pi) > 1e-9:
            return Validation(False, "C1 tangent continuity")
    if abs(sum(arc.sweep for arc in arcs) - TAU) > 1e-9:
        return Validation(False, "total turning")
    return Validation(True)


def _validate_oval(oval: SupportOval, samples: int = 2048) -> Validation:
    t = np.linspace(0.0, TAU, samples, endpoint=False)
    h = np.asarray(oval.h(t), dtype=float)
    if not np.all(np.isfinite(h)):
        return Validation(False, "h finite")
    if np.any(h <= 0.0):
        return Validation(False, "h>0 violated (origin must be interior)")
    rho = h + np.asarray(oval.d2h(t), dtype=float)
    if np.any(rho <= 0.0):
        return Validation(False, "h+h''>0 violated")
    return Validation(True)


def interior_point(body: ConvexBody) -> Point:
    """A strictly interior anchor point, used as the left/right gaze target."""
    if isinstance(body, ConvexPolygon):
        return body.centroid()
    cache = body._cache
    if "interior" not in cache:
        if isinstance(body, SupportOval):
            t = np.linspace(0.0, TAU, 4096, endpoint=False)
            h = np.asarray(body.h(t), dtype=float)
            dh = np.asarray(body.dh(t), dtype=float)
            x = h * np.cos(t) - dh * np.sin(t)
            y = h * np.sin(t) + dh * np.cos(t)
            cache["interior"] = Point(float(x.mean()), float(y.mean()))
        else:
            pts = boundary_polyline(body, 512)
            cache["interior"] = Point(
                sum(p.x for p in pts) / len(pts), sum(p.y for p in pts) / len(pts)
            )
    return cache["interior"]


def body_diameter(body: ConvexBody) -> float:
    """Largest width of the body; the natural length scale for tolerances."""
    if isinstance(body, ConvexPolygon):
        return max(dist(a, b) for a in body.vertices for b in body.vertices)
    cache = body._cache
    if "diameter" not in cache:
        t = np.linspace(0.0, math.pi, 2048, endpoint=False)
        h = support_values(body, t) + support_values(body, t + math.pi)
        cache["diameter"] = float(h.max())
    return cache["diameter"]


def support_values(body: ConvexBody, thetas: np.ndarray) -> np.ndarray:
    """Support function h(theta) evaluated on an array of directions."""
    thetas = np.asarray(thetas, dtype=float)
    if isinstance(body, SupportOval):
        return np.asarray(body.h(thetas), dtype=float)
    if isinstance(body, PiecewiseCircularCurve):
        cx, cy, r = _pcc_center_arrays(body)
        idx = _pcc_arc_indices(body, thetas)
        return (
            cx[idx] * np.cos(thetas) + cy[idx] * np.sin(thetas) + r[idx]
        )
    if isinstance(body, ConvexPolygon):
        vx = np.array([p.x for p in body.vertices])
        vy = np.array([p.y for p in body.vertices])
        proj = np.outer(np.cos(thetas), vx) + np.outer(np.sin(thetas), vy)
        return proj.max(axis=1)
    raise TypeError(type(body).__name__)


def _pcc_center_arrays(pcc: PiecewiseCircularCurve):
    cache = pcc._cache
    if "centers" not in cache:
        cache["centers"] = (
            np.array([a.center.x for a in pcc.arcs]),
            np.array([a.center.y for a in pcc.arcs]),
            np.array([a.radius for a in pcc.arcs]),
        )
    return cache["centers"]


def _pcc_arc_indices(pcc: PiecewiseCircularCurve, thetas: np.ndarray) -> np.ndarray:
    nu = pcc.normal_breaks()
    t = nu[0] + (thetas - nu[0]) % TAU
    idx = np.searchsorted(nu, t, side="right") - 1
    return np.clip(idx, 0, len(pcc.arcs) - 1)


def boundary_point(body: ConvexBody, t: float) -> tuple[Point, Point]:
    """Boundary point and CCW unit tangent at parameter t.

    Polygon: arc length (mod perimeter).  Smooth bodies: outward normal
    angle, which pins the arc index and the angle within it for a chain
    of circular arcs.
    """
    if isinstance(body, ConvexPolygon):
        cum = body.cumulative_lengths()
        s = t % cum[-1]
        i = int(np.searchsorted(cum, s, side="right") - 1)
        i = min(max(i, 0), body.n - 1)
        d = normalize(body.edge_vector(i))
        return body.vertex(i) + (s - cum[i]) * d, d
    if isinstance(body, PiecewiseCircularCurve):
        arc = body.arcs[body.arc_index_at(t)]
        return arc.point_at(t), Point(-math.sin(t), math.cos(t))
    if isinstance(body, SupportOval):
        h = float(body.h(t))
        dh = float(body.dh(t))
        c, s = math.cos(t), math.sin(t)
        return Point(h * c - dh * s, h * s + dh * c), Point(-s, c)
    raise TypeError(type(body).__name__)


def boundary_polyline(body: ConvexBody, n: int) -> list[Point]:
    if isinstance(body, ConvexPolygon):
        total = body.perimeter()
        return [boundary_point(body, total * k / n)[0] for k in range(n)]
    return [boundary_point(body, TAU * k / n)[0] for k in range(n)]


def curvature(oval: SupportOval, theta: float) -> float:
    """Curvature 1 / (h + h'') at support angle theta."""
    rho = float(oval.h(theta)) + float(oval.d2h(theta))
    if rho <= 0.0:
        raise GeometryError("h+h''>0 violated")
    return 1.0 / rho


@dataclass(frozen=True)
class TangentContact:
    point: Point
    line: DirectedLine
    length: float
    param: float | None = None


@dataclass(frozen=True)
class TangentProbe:
    apex: Point
    left: TangentContact
    right: TangentContact
    alpha: float
    beta: float

    @property
    def subtended(self) -> float:
        """Visual angle of the body seen from the apex."""
        return ray_angle(self.apex, self.left.point, self.right.point)

    @property
    def defect(self) -> float:
        return self.left.length - self.right.length


def tangent_probe(body: ConvexBody, a: Point) -> TangentProbe:
    """The two tangent segments from exterior point a, labelled left/right.

    alpha is the chord-tangent angle at the ALPHA_SIDE tangency and beta
    at the other, both measured on a's side of the chord (they are the
    base angles of the triangle a-left-right).  Polygon queries from a
    side extension raise SideCollinearError; route those through
    side_extension_probe.
    """
    if isinstance(body, ConvexPolygon):
        t1, t2 = _polygon_tangency_points(body, a)
    elif isinstance(body, SupportOval):
        t1, t2 = _oval_tangency_points(body, a)
    elif isinstance(body, PiecewiseCircularCurve):
        t1, t2 = _pcc_tangency_points(body, a)
    else:
        raise TypeError(type(body).__name__)
    return _probe_from_contacts(body, a, t1, t2)


def _probe_from_contacts(body, a, t1, t2) -> TangentProbe:
    g = interior_point(body) - a
    s1 = cross(g, t1[0] - a)
    s2 = cross(g, t2[0] - a)
    if s1 == s2 == 0.0:
        raise ProbeError("tangencies collinear with gaze")
    left, right = (t1, t2) if s1 >= s2 else (t2, t1)
    lp, lparam = left
    rp, rparam = right
    lc = TangentContact(lp, DirectedLine.through(lp, a), dist(a, lp), lparam)
    rc = TangentContact(rp, DirectedLine.through(rp, a), dist(a, rp), rparam)
    ang_left = ray_angle(lp, rp, a)
    ang_right = ray_angle(rp, lp, a)
    if ALPHA_SIDE == "right":
        alpha, beta = ang_right, ang_left
    else:
        alpha, beta = ang_left, ang_right
    return TangentProbe(apex=a, left=lc, right=rc, alpha=alpha, beta=beta)


def _polygon_tangency_points(poly: ConvexPolygon, a: Point, collinear_check: bool = True):
    scale = body_diameter(poly)
    if poly.contains(a, tol=1e-12 * scale):
        raise ProbeError("point is inside or on the polygon")
    g = interior_point(poly) - a
    angles = []
    for v in poly.vertices:
        u = v - a
        angles.append(math.atan2(cross(g, u), dot(g, u)))
    i_left = max(range(poly.n), key=angles.__getitem__)
    i_right = min(range(poly.n), key=angles.__getitem__)
    if collinear_check:
        for i in (i_left, i_right):
            for j in (i - 1, i + 1):
                w = poly.vertex(j)
                v = poly.vertex(i)
                if abs(cross(v - a, w - a)) <= 1e-9 * scale * max(dist(a, v), dist(a, w)):
                    raise SideCollinearError(
                        "exterior point lies on a side extension; "
                        "use side_extension_probe"
                    )
    cum = poly.cumulative_lengths()
    return (
        (poly.vertex(i_left), cum[i_left]),
        (poly.vertex(i_right), cum[i_right]),
    )


@dataclass(frozen=True)
class SideExtensionProbe:
    """Tangent data from a point on the extension of a polygon side.

    Every segment to a point of the collinear side counts as a tangent
    segment, so that side contributes the closed interval of lengths;
    the opposite tangency is still a single vertex.
    """

    interval: tuple[float, float]
    side_index: int
    opposite_vertex: int
    opposite_length: float


def side_extension_probe(poly: ConvexPolygon, a: Point) -> SideExtensionProbe:
    scale = body_diameter(poly)
    if poly.contains(a, tol=1e-12 * scale):
        raise ProbeError("point is inside or on the polygon")
    found = None
    for i in range(poly.n):
        p, q = poly.vertex(i), poly.vertex(i + 1)
        e = q - p
        if abs(cross(e, a - p)) > 1e-9 * scale * norm(e):
            continue
        t = dot(a - p, e) / dot(e, e)
        if -1e-12 <= t <= 1.0 + 1e-12:
            raise ProbeError("point lies on the side itself, not its extension")
        found = i
        break
    if found is None:
        raise ProbeError("point is not on any side extension")
    p, q = poly.vertex(found), poly.vertex(found + 1)
    lo, hi = sorted((dist(a, p), dist(a, q)))
    angles = []
    g = interior_point(poly) - a
    for v in poly.vertices:
        u = v - a
        angles.append(math.atan2(cross(g, u), dot(g, u)))
    side_sign = math.copysign(1.0, angles[found] + angles[(found + 1) % poly.n])
    candidates = [
        j
        for j in range(poly.n)
        if j not in (found, (found + 1) % poly.n)
    ]
    if side_sign > 0:
        opp = min(candidates, key=angles.__getitem__)
    else:
        opp = max(candidates, key=angles.__getitem__)
    return SideExtensionProbe(
        interval=(lo, hi),
        side_index=found,
        opposite_vertex=opp,
        opposite_length=dist(a, poly.vertex(opp)),
    )


def _oval_tangency_points(oval: SupportOval, a: Point):
    th = oval_tangency_params(oval, np.array([a.x]), np.array([a.y]))
    t1, t2 = float(th[0][0]), float(th[1][0])
    if math.isnan(t1) or math.isnan(t2):
        raise ProbeError("point is inside or on the oval")
    p1, _ = boundary_point(oval, t1)
    p2, _ = boundary_point(oval, t2)
    return (p1, t1 % TAU), (p2, t2 % TAU)


def oval_tangency_params(
    oval: SupportOval, ax: np.ndarray, ay: np.ndarray, scan: int = 1024, iters: int = 60
):
    """Support angles of the two tangencies seen from each point (vectorized).

    Solves a . u(theta) = h(theta).  The set where the support line at
    theta separates the point from the body is a single angular arc, so
    each of its two endpoints is bracketed between the arc's interior
    maximum and the antipode, and bisection cannot escape.  Interior
    points get NaN.
    """
    ax = np.asarray(ax, dtype=float)
    ay = np.asarray(ay, dtype=float)
    grid = np.linspace(0.0, TAU, scan, endpoint=False)
    best = np.full(ax.shape, -np.inf)
    best_t = np.zeros(ax.shape)
    for t in grid:
        f = ax * math.cos(t) + ay * math.sin(t) - float(oval.h(t))
        mask = f > best
        best = np.where(mask, f, best)
        best_t = np.where(mask, t, best_t)
    outside = best > 0.0

    def fval(t):
        return ax * np.cos(t) + ay * np.sin(t) - np.asarray(oval.h(t), dtype=float)

    roots = []
    for hi_off in (math.pi, -math.pi):
        lo = best_t.copy()
        hi = best_t + hi_off
        for _ in range(iters):
            mid = 0.5 * (lo + hi)
            pos = fval(mid) > 0.0
            lo = np.where(pos, mid, lo)
            hi = np.where(pos, hi, mid)
        roots.append(np.where(outside, 0.5 * (lo + hi), np.nan))
    return roots[0], roots[1]


def ellipse_tangency_grid(a: float, b: float, ax: np.ndarray, ay: np.ndarray):
    """Closed-form tangency points from exterior points to an ellipse.

    The two tangency points are the intersections of the chord of
    contact x*ax/a^2 + y*ay/b^2 = 1 with the ellipse; in the parameter u
    of (a cos u, b sin u) that is c1 cos u + c2 sin u = 1 with c1 = ax/a,
    c2 = ay/b.  Returns the two point pairs; NaN for interior points.
    """
    ax = np.asarray(ax, dtype=float)
    ay = np.asarray(ay, dtype=float)
    c1, c2 = ax / a, ay / b
    r = np.hypot(c1, c2)
    outside = r > 1.0
    with np.errstate(invalid="ignore", divide="ignore"):
        half = np.arccos(np.clip(1.0 / r, -1.0, 1.0))
    base = np.arctan2(c2, c1)
    u1 = np.where(outside, base - half, np.nan)
    u2 = np.where(outside, base + half, np.nan)
    return (
        (a * np.cos(u1), b * np.sin(u1)),
        (a * np.cos(u2), b * np.sin(u2)),
    )


def _pcc_tangency_points(pcc: PiecewiseCircularCurve, a: Point):
    cands = pcc_tangency_candidates(pcc, a)
    if len(cands) != 2:
        raise ProbeError(
            f"expected 2 tangencies, found {len(cands)} "
            "(point inside, on the curve, or numerically marginal)"
        )
    (t1, p1), (t2, p2) = cands
    return (p1, t1), (p2, t2)


def pcc_tangency_candidates(pcc: PiecewiseCircularCurve, a: Point):
    """All (normal angle, point) body tangencies from a, dedup at junctions."""
    nu = pcc.normal_breaks()
    out = []
    for i, arc in enumerate(pcc.arcs):
        d = dist(a, arc.center)
        if d <= arc.radius:
            continue
        phi = angle_of(a - arc.center)
        delta = math.acos(min(1.0, arc.radius / d))
        for cand in (phi - delta, phi + delta):
            t = nu[i] + (cand - nu[i]) % TAU
            if t <= nu[i + 1] + 1e-9:
                out.append((t % TAU, arc.point_at(cand)))
    out.sort(key=lambda tp: tp[0])
    dedup = []
    for t, p in out:
        if dedup and abs(t - dedup[-1][0]) < 1e-7:
            continue
        dedup.append((t, p))
    if len(dedup) > 1 and abs(dedup[0][0] + TAU - dedup[-1][0]) < 1e-7:
        dedup.pop()
    return dedup


@dataclass(frozen=True)
class IntervalContact:
    """One tangent of a polygon query, as a closed interval of lengths.

    A vertex tangency is the degenerate interval lo == hi.  A query from
    a side extension yields the full interval of segment lengths to that
    side, between the near and far endpoints.
    """

    lo: float
    hi: float
    point_lo: Point
    point_hi: Point

    @property
    def is_interval(self) -> bool:
        return self.hi - self.lo > 0.0


def polygon_tangent_intervals(
    poly: ConvexPolygon, a: Point
) -> tuple[IntervalContact, IntervalContact]:
    """Left and right tangents from a with the side-extension convention.

    Unlike tangent_probe this never raises on collinear queries: when a
    sits on a side extension the whole side counts as tangent and the
    corresponding contact carries the interval of lengths.
    """
    scale = body_diameter(poly)
    if poly.contains(a, tol=1e-12 * scale):
        raise ProbeError("point is inside or on the polygon")
    g = interior_point(poly) - a
    angles = []
    for v in poly.vertices:
        u = v - a
        angles.append(math.atan2(cross(g, u), dot(g, u)))
    i_left = max(range(poly.n), key=angles.__getitem__)
    i_right = min(range(poly.n), key=angles.__getitem__)

    def contact(i: int) -> IntervalContact:
        v = poly.vertex(i)
        for j in (i - 1, i + 1):
            w = poly.vertex(j)
            if abs(cross(v - a, w - a)) <= 1e-9 * scale * max(dist(a, v), dist(a, w)):
                dv, dw = dist(a, v), dist(a, w)
                if dv <= dw:
                    return IntervalContact(dv, dw, v, w)
                return IntervalContact(dw, dv, w, v)
        d = dist(a, v)
        return IntervalContact(d, d, v, v)

    return contact(i_left), contact(i_right)


def interval_separation(left: IntervalContact, right: IntervalContact) -> float:
    """Signed gap between the two tangent-length intervals.

    Positive when every left length exceeds every right length, negative
    for the reverse, zero when the intervals overlap (the equal-tangent
    condition for polygons).
    """
    if left.lo > right.hi:
        return left.lo - right.hi
    if right.lo > left.hi:
        return -(right.lo - left.hi)
    return 0.0


# ---------------------------------------------------------------------------
# JSON body schema


def body_to_dict(body: ConvexBody) -> dict:
    if isinstance(body, ConvexPolygon):
        return {
            "type": "polygon",
            "vertices": [[p.x, p.y] for p in body.vertices],
        }
    if isinstance(body, PiecewiseCircularCurve):
        return {
            "type": "pcc",
            "arcs": [
                {
                    "cx": arc.center.x,
                    "cy": arc.center.y,
                    "r": arc.radius,
                    "a0": arc.start_angle,
                    "a1": arc.end_angle,
                    "orient": arc.orientation,
                }
                for arc in body.arcs
            ],
        }
    if isinstance(body, SupportOval):
        if body.kind not in ("ellipse", "fourier"):
            raise GeometryError("only ellipse/fourier support ovals serialize")
        return {"type": "support", "kind": body.kind, "params": list(body.params)}
    raise TypeError(type(body).__name__)


def body_from_dict(data: dict) -> ConvexBody:
    kind = data.get("type")
    if kind == "polygon":
        return ConvexPolygon([Point(float(x), float(y)) for x, y in data["vertices"]])
    if kind == "pcc":
        return PiecewiseCircularCurve(
            [
                CircleArc(
                    Point(float(d["cx"]), float(d["cy"])),
                    float(d["r"]),
                    float(d["a0"]),
                    float(d["a1"]),
                    d.get("orient", "ccw"),
                )
                for d in data["arcs"]
            ]
        )
    if kind == "support":
        params = [float(v) for v in data["params"]]
        if data["kind"] == "ellipse":
            return SupportOval.ellipse(params[0], params[1])
        if data["kind"] == "fourier":
            c0, rest = params[0], params[1:]
            coeffs = [(rest[i], rest[i + 1]) for i in range(0, len(rest), 2)]
            return SupportOval.fourier(c0, coeffs)
        raise GeometryError(f"unknown support kind {data['kind']!r}")
    raise GeometryError(f"unknown body type {kind!r}")


def dump_body(body: ConvexBody, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(body_to_dict(body), fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_body(path: str) -> ConvexBody:
    with open(path) as fh:
        return body_from_dict(json.load(fh))
