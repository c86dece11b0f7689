"""The counterexample construction and its certificate.

A regular hexagon A1..A6 gets a congruent sliver triangle A_i B_i A_{i+1}
attached outside each side, giving a strictly convex dodecagon with
vertices A1, B1, A2, B2, ... in counterclockwise order.  A chord moves
through nine discrete triples (chord, support line at first endpoint,
support line at second endpoint); the pattern repeats under the 6-fold
rotational symmetry, closing after 54 listed states (block boundaries
repeat one state, so 48 are distinct).  The intersection points of the
two support lines sweep out the 6-pronged star that serves as the
certificate walk: from every point of it the right tangent segment to
the body is strictly shorter than the left one.

Vertex indexing: A_i is vertex 2*(i-1), B_i is vertex 2*(i-1)+1.  Side k
joins vertex k to vertex k+1 (mod 12).  The hexagon is centered at the
origin with A1 on the positive x-axis.
"""

import math
from dataclasses import dataclass

import numpy as np

from .geom import (
    PARALLEL,
    CircleArc,
    DirectedLine,
    GeometryError,
    Point,
    TAU,
    angle_of,
    cross,
    dist,
    from_polar,
    intersect_lines,
    norm,
    normalize,
    perp,
    ray_angle,
    rotate,
)
from .bodies import (
    ALPHA_SIDE,
    ConvexBody,
    ConvexPolygon,
    PiecewiseCircularCurve,
    body_diameter,
    interior_point,
    polygon_tangent_intervals,
    interval_separation,
    tangent_probe,
    validate,
)


@dataclass(frozen=True)
class DodecagonParams:
    """Hexagon side length and the two triangle base angles (radians).

    phi is the angle at A_i, psi at A_{i+1}; phi < psi puts B_i closer to
    A_{i+1}.  Both must be small enough that the dodecagon stays strictly
    convex (phi + psi < 60 degrees).
    """

    side: float = 1.0
    phi: float = math.radians(2.0)
    psi: float = math.radians(3.0)


@dataclass(frozen=True)
class DerivedAngles:
    theta: float
    delta: float


@dataclass(frozen=True)
class ChordState:
    """One position of the moving chord: the triple plus index labels."""

    chord: tuple[Point, Point]
    support_first: DirectedLine
    support_second: DirectedLine
    first_vertex: int
    second_vertex: int
    first_side: int
    second_side: int


# (first vertex, second vertex, first support side, second support side)
# for the nine base states; later blocks shift every index by 2 (mod 12).
_BASE_STEPS = [
    (0, 4, 0, 4),
    (1, 4, 0, 4),
    (1, 4, 1, 4),
    (2, 4, 1, 4),
    (2, 4, 2, 4),
    (2, 5, 2, 4),
    (2, 5, 2, 5),
    (2, 6, 2, 5),
    (2, 6, 2, 6),
]


def build_dodecagon(p: DodecagonParams) -> ConvexPolygon:
    """Attach the six triangles to the hexagon and validate convexity."""
    if p.side <= 0.0:
        raise GeometryError("side must be positive")
    if not 0.0 < p.phi < p.psi:
        raise GeometryError("phi < psi required (and both positive)")
    if p.phi + p.psi >= math.radians(60.0):
        raise GeometryError("phi + psi must stay below 60 degrees for convexity")
    hexagon = [from_polar(p.side, k * TAU / 6.0) for k in range(6)]
    apex_len = p.side * math.sin(p.psi) / math.sin(p.phi + p.psi)
    vertices: list[Point] = []
    for i in range(6):
        a_i = hexagon[i]
        a_next = hexagon[(i + 1) % 6]
        out_dir = rotate(normalize(a_next - a_i), -p.phi)
        vertices.append(a_i)
        vertices.append(a_i + apex_len * out_dir)
    poly = ConvexPolygon(vertices)
    check = validate(poly)
    if not check.ok:
        raise GeometryError(f"construction not a valid convex polygon: {check.diagnostic}")
    return poly


def derived_angles(poly: ConvexPolygon, p: DodecagonParams) -> DerivedAngles:
    """The two coordinate-derived angles theta (at A3) and delta (at A2).

    theta is the angle A2-A3-B1, delta the angle B3-A2-A4; the build is
    invalid unless phi < theta and phi < delta.
    """
    v = poly.vertices
    theta = ray_angle(v[4], v[2], v[1])
    delta = ray_angle(v[2], v[5], v[6])
    if not (p.phi < theta and p.phi < delta):
        raise GeometryError(
            "construction invalid: angle inequalities phi<theta, phi<delta failed"
        )
    return DerivedAngles(theta=theta, delta=delta)


def _state_from_indices(poly: ConvexPolygon, e1: int, e2: int, s1: int, s2: int) -> ChordState:
    def support(side: int, through: int) -> DirectedLine:
        if through % 12 not in (side % 12, (side + 1) % 12):
            raise GeometryError("support side does not pass through the chord endpoint")
        return DirectedLine(poly.vertex(through), normalize(poly.edge_vector(side)))

    return ChordState(
        chord=(poly.vertex(e1), poly.vertex(e2)),
        support_first=support(s1, e1),
        support_second=support(s2, e2),
        first_vertex=e1 % 12,
        second_vertex=e2 % 12,
        first_side=s1 % 12,
        second_side=s2 % 12,
    )


def chord_motion(poly: ConvexPolygon) -> list[ChordState]:
    """All 54 chord states: the nine base triples and their five rotations.

    The ninth state of each block equals the first state of the next, so
    consecutive distinct states differ in exactly one element of the
    triple and the cycle closes after six blocks.
    """
    if poly.n != 12:
        raise GeometryError("chord motion is defined on the 12-gon construction")
    states = []
    for block in range(6):
        for e1, e2, s1, s2 in _BASE_STEPS:
            k = 2 * block
            states.append(
                _state_from_indices(poly, (e1 + k) % 12, (e2 + k) % 12, (s1 + k) % 12, (s2 + k) % 12)
            )
    return states


def state_apex(state: ChordState) -> Point:
    apex = intersect_lines(state.support_first, state.support_second)
    if apex is PARALLEL:
        raise GeometryError("support lines are parallel; no star point")
    return apex


def state_angles(state: ChordState, body_point: Point) -> tuple[float, float]:
    """(beta, alpha) for one state, measured at the chord endpoints.

    Angles open toward the support-line intersection; alpha sits at the
    ALPHA_SIDE tangency looking from that intersection toward body_point.
    """
    apex = state_apex(state)
    e1, e2 = state.chord
    ang1 = ray_angle(e1, e2, apex)
    ang2 = ray_angle(e2, e1, apex)
    g = body_point - apex
    left_is_first = cross(g, e1 - apex) >= cross(g, e2 - apex)
    ang_left, ang_right = (ang1, ang2) if left_is_first else (ang2, ang1)
    if ALPHA_SIDE == "right":
        return ang_left, ang_right
    return ang_right, ang_left


def symbolic_angle_table(p: DodecagonParams, d: DerivedAngles) -> list[tuple[float, float]]:
    """The eight (beta, alpha) pairs predicted by elementary geometry."""
    deg30 = math.radians(30.0)
    deg60 = math.radians(60.0)
    deg90 = math.radians(90.0)
    phi, psi, th, de = p.phi, p.psi, d.theta, d.delta
    return [
        (deg30 + phi, deg90 - phi),
        (deg60 + phi - th, deg60 - phi + th),
        (deg60 - th - psi, deg60 + th - phi),
        (deg60 - psi, deg60 - phi),
        (phi, deg60 - phi),
        (deg30 - de + phi, deg30 + de - phi),
        (deg30 - de + phi, deg30 + psi + de),
        (deg30 + phi, deg30 + psi),
    ]


def _transition_kind(a: ChordState, b: ChordState) -> str:
    same_chord = a.first_vertex == b.first_vertex and a.second_vertex == b.second_vertex
    same_s1 = a.first_side == b.first_side
    same_s2 = a.second_side == b.second_side
    if same_chord and same_s1 and same_s2:
        return "identity"
    if not same_chord and same_s1 and same_s2:
        return "slide_first" if a.first_vertex != b.first_vertex else "slide_second"
    if same_chord and same_s2:
        return "revolve_first"
    if same_chord and same_s1:
        return "revolve_second"
    raise GeometryError("more than one element of the triple changes")


def _lerp_angle(a0: float, a1: float, u):
    d = (a1 - a0 + math.pi) % TAU - math.pi
    return a0 + u * d


def interpolate_state(a: ChordState, b: ChordState, u: float) -> ChordState:
    """State at fraction u of the step a -> b.

    A sliding endpoint moves linearly along its side; a revolving support
    direction turns linearly in angle.  u=0 and u=1 reproduce a and b.
    """
    kind = _transition_kind(a, b)
    if kind == "identity" or u == 0.0:
        return a
    if u == 1.0:
        return b
    if kind in ("slide_first", "slide_second"):
        i = 0 if kind == "slide_first" else 1
        p = a.chord[i] + u * (b.chord[i] - a.chord[i])
        chord = (p, a.chord[1]) if i == 0 else (a.chord[0], p)
        support_first = DirectedLine(chord[0], a.support_first.direction)
        support_second = DirectedLine(chord[1], a.support_second.direction)
        return ChordState(
            chord, support_first, support_second,
            a.first_vertex if i == 1 else -1, a.second_vertex if i == 0 else -1,
            a.first_side, a.second_side,
        )
    if kind == "revolve_first":
        ang = _lerp_angle(angle_of(a.support_first.direction), angle_of(b.support_first.direction), u)
        return ChordState(
            a.chord, DirectedLine.at_angle(a.chord[0], ang), a.support_second,
            a.first_vertex, a.second_vertex, -1, a.second_side,
        )
    ang = _lerp_angle(angle_of(a.support_second.direction), angle_of(b.support_second.direction), u)
    return ChordState(
        a.chord, a.support_first, DirectedLine.at_angle(a.chord[1], ang),
        a.first_vertex, a.second_vertex, a.first_side, -1,
    )


def interpolate_motion(states: list[ChordState], samples_per_step: int):
    """Stream of states along the whole motion, samples_per_step per step.

    With samples_per_step=2 the stream is exactly the discrete state
    list.  Yields the opening state once, then samples_per_step - 1 new
    states per transition.
    """
    if samples_per_step < 2:
        raise GeometryError("samples_per_step must be at least 2")
    yield states[0]
    for a, b in zip(states, states[1:]):
        for j in range(1, samples_per_step):
            yield interpolate_state(a, b, j / (samples_per_step - 1))


def transition_angle_arrays(
    a: ChordState, b: ChordState, n: int, body_point: Point
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(beta, alpha, defect) at n uniform samples of one step, vectorized.

    defect is L_left - L_right with lengths measured from the support
    intersection to the chord endpoints.  Matches state_angles and the
    chord geometry of interpolate_state exactly.
    """
    u = np.linspace(0.0, 1.0, n)
    kind = _transition_kind(a, b)
    a1, a2 = a.chord
    if kind == "identity":
        e1x, e1y = np.full(n, a1.x), np.full(n, a1.y)
        e2x, e2y = np.full(n, a2.x), np.full(n, a2.y)
        apex = state_apex(a)
        apx, apy = np.full(n, apex.x), np.full(n, apex.y)
    elif kind in ("slide_first", "slide_second"):
        b1, b2 = b.chord
        e1x, e1y = a1.x + u * (b1.x - a1.x), a1.y + u * (b1.y - a1.y)
        e2x, e2y = a2.x + u * (b2.x - a2.x), a2.y + u * (b2.y - a2.y)
        apex = state_apex(a)
        apx, apy = np.full(n, apex.x), np.full(n, apex.y)
    else:
        e1x, e1y = np.full(n, a1.x), np.full(n, a1.y)
        e2x, e2y = np.full(n, a2.x), np.full(n, a2.y)
        if kind == "revolve_first":
            moving_a, moving_b = a.support_first, b.support_first
            fixed = a.support_second
            pivot = a1
        else:
            moving_a, moving_b = a.support_second, b.support_second
            fixed = a.support_first
            pivot = a2
        ang = _lerp_angle(angle_of(moving_a.direction), angle_of(moving_b.direction), u)
        dx_, dy_ = np.cos(ang), np.sin(ang)
        # intersection of the rotating line (pivot, ang) with the fixed line
        fo, fd = fixed.origin, fixed.direction
        denom = dx_ * fd.y - dy_ * fd.x
        t = ((fo.x - pivot.x) * fd.y - (fo.y - pivot.y) * fd.x) / denom
        apx, apy = pivot.x + t * dx_, pivot.y + t * dy_

    def ray_angles(px, py, qx, qy, wx, wy):
        ux, uy = qx - px, qy - py
        vx, vy = wx - px, wy - py
        return np.arctan2(np.abs(ux * vy - uy * vx), ux * vx + uy * vy)

    ang1 = ray_angles(e1x, e1y, e2x, e2y, apx, apy)
    ang2 = ray_angles(e2x, e2y, e1x, e1y, apx, apy)
    gx, gy = body_point.x - apx, body_point.y - apy
    c1 = gx * (e1y - apy) - gy * (e1x - apx)
    c2 = gx * (e2y - apy) - gy * (e2x - apx)
    first_is_left = c1 >= c2
    ang_left = np.where(first_is_left, ang1, ang2)
    ang_right = np.where(first_is_left, ang2, ang1)
    len1 = np.hypot(e1x - apx, e1y - apy)
    len2 = np.hypot(e2x - apx, e2y - apy)
    len_left = np.where(first_is_left, len1, len2)
    len_right = np.where(first_is_left, len2, len1)
    if ALPHA_SIDE == "right":
        beta, alpha = ang_left, ang_right
    else:
        beta, alpha = ang_right, ang_left
    return beta, alpha, len_left - len_right


def motion_certificate(
    poly: ConvexPolygon, states: list[ChordState], samples_per_step: int = 128
) -> dict:
    """Sweep the full interpolated motion; report worst-case inequalities."""
    center = poly.centroid()
    min_gap = math.inf
    min_defect = math.inf
    max_sum = -math.inf
    for a, b in zip(states, states[1:]):
        beta, alpha, defect = transition_angle_arrays(a, b, samples_per_step, center)
        min_gap = min(min_gap, float(np.min(alpha - beta)))
        min_defect = min(min_defect, float(np.min(defect)))
        max_sum = max(max_sum, float(np.max(alpha + beta)))
    return {"min_angle_gap": min_gap, "min_defect": min_defect, "max_angle_sum": max_sum}


@dataclass(frozen=True)
class Star:
    """Closed certificate walk: distinct polyline vertices plus the
    per-state support intersections (one per listed motion state)."""

    points: list[Point]
    state_apexes: list[Point]

    def closed_polyline(self) -> list[Point]:
        return list(self.points) + [self.points[0]]


def outer_star(states: list[ChordState], tol: float = 1e-9) -> Star:
    """Support-line intersections of the motion, coincident pairs collapsed.

    Within each nine-state block the intersections coincide pairwise
    (1,2), (3,4), (5,6), (7,8) because those state pairs share both
    support lines; a mismatch is reported, never silently accepted.
    """
    apexes = [state_apex(s) for s in states]
    scale = max(norm(p) for p in apexes)
    for block in range(len(states) // 9):
        for k in (0, 2, 4, 6):
            i = 9 * block + k
            if dist(apexes[i], apexes[i + 1]) > tol * scale:
                raise GeometryError(
                    f"star points {i} and {i + 1} expected to coincide but differ"
                )
    points: list[Point] = []
    for p in apexes:
        if not points or dist(points[-1], p) > tol * scale:
            points.append(p)
    if len(points) > 1 and dist(points[0], points[-1]) <= tol * scale:
        points.pop()
    return Star(points=points, state_apexes=apexes)


# ---------------------------------------------------------------------------
# Smoothing


def smooth(poly: ConvexPolygon, r_small: float, R_large: float) -> PiecewiseCircularCurve:
    """C1 piecewise circular approximation of a strictly convex polygon.

    Every side is replaced by an arc of radius R_large tangent to the
    side line at its midpoint from inside; every vertex by an arc of
    radius r_small whose circle is internally tangent to both adjacent
    side circles, which forces the shared tangent directions.  Arc list
    order is vertex arc 0, side arc 0, vertex arc 1, ... so arcs[2k+1]
    smooths side k.
    """
    n = poly.n
    if r_small <= 0.0 or R_large <= r_small:
        raise GeometryError("need 0 < r_small < R_large")
    side_centers = []
    for k in range(n):
        d = normalize(poly.edge_vector(k))
        mid = 0.5 * (poly.vertex(k) + poly.vertex(k + 1))
        side_centers.append(mid + R_large * perp(d))
    rr = R_large - r_small
    vertex_centers = []
    for k in range(n):
        c_prev = side_centers[(k - 1) % n]
        c_next = side_centers[k]
        sep = dist(c_prev, c_next)
        if sep < 1e-14 or sep > 2.0 * rr:
            raise GeometryError("infeasible radii: side circles do not intersect")
        m = 0.5 * (c_prev + c_next)
        q2 = rr * rr - 0.25 * sep * sep
        q = math.sqrt(max(q2, 0.0))
        offset = q * perp(normalize(c_next - c_prev))
        v = poly.vertex(k)
        o1, o2 = m + offset, m - offset
        vertex_centers.append(o1 if dist(o1, v) <= dist(o2, v) else o2)
    arcs: list[CircleArc] = []
    for k in range(n):
        o = vertex_centers[k]
        nu_in = angle_of(o - side_centers[(k - 1) % n])
        nu_out = angle_of(o - side_centers[k])
        arcs.append(CircleArc(o, r_small, nu_in, nu_out))
        nu_next = angle_of(vertex_centers[(k + 1) % n] - side_centers[k])
        arcs.append(CircleArc(side_centers[k], R_large, nu_out, nu_next))
    pcc = PiecewiseCircularCurve(arcs)
    for arc in pcc.arcs:
        if arc.sweep >= math.pi:
            raise GeometryError("infeasible radii: an arc would sweep half a turn")
    check = validate(pcc)
    if not check.ok:
        raise GeometryError(f"infeasible radii: smoothing failed validation ({check.diagnostic})")
    return pcc


def smoothed_star(pcc: PiecewiseCircularCurve, states: list[ChordState]) -> Star:
    """The certificate walk recomputed on the smoothed body.

    Each motion state names, at each chord endpoint, a side of the
    polygon and which of its ends the endpoint is; that picks the
    matching junction of the side's large arc, whose tangent line stands
    in for the polygon support line.  The formerly coinciding star
    points separate into distinct close points.
    """
    n_sides = len(pcc.arcs) // 2

    def junction_tangent(side: int, vertex: int) -> DirectedLine:
        arc = pcc.arcs[2 * side + 1]
        at_tail = vertex % n_sides == side % n_sides
        nu = arc.start_angle if at_tail else arc.end_angle
        return DirectedLine(arc.point_at(nu), arc.tangent_at(nu))

    apexes = []
    for s in states:
        l1 = junction_tangent(s.first_side, s.first_vertex)
        l2 = junction_tangent(s.second_side, s.second_vertex)
        apex = intersect_lines(l1, l2)
        if apex is PARALLEL:
            raise GeometryError("smoothed support lines are parallel")
        apexes.append(apex)
    scale = max(norm(p) for p in apexes)
    points: list[Point] = []
    for p in apexes:
        if not points or dist(points[-1], p) > 1e-12 * scale:
            points.append(p)
    if len(points) > 1 and dist(points[0], points[-1]) <= 1e-12 * scale:
        points.pop()
    return Star(points=points, state_apexes=apexes)


# ---------------------------------------------------------------------------
# Walk certificate


@dataclass
class WalkCertificate:
    min_defect: float
    min_angle_gap: float
    all_same_sign: bool
    angle_sum_ok: bool
    sign_changes: int
    rows: list[tuple]

    @property
    def verified(self) -> bool:
        return self.all_same_sign and self.min_defect > 0.0 and self.angle_sum_ok


def sample_closed_polyline(points: list[Point], n: int) -> list[Point]:
    """n arc-length-uniform samples around a closed polyline."""
    pts = list(points)
    if dist(pts[0], pts[-1]) > 0.0:
        pts.append(pts[0])
    seg = [dist(a, b) for a, b in zip(pts, pts[1:])]
    total = sum(seg)
    out = []
    cum = 0.0
    j = 0
    for k in range(n):
        target = total * k / n
        while j < len(seg) - 1 and cum + seg[j] < target:
            cum += seg[j]
            j += 1
        u = (target - cum) / seg[j] if seg[j] > 0 else 0.0
        out.append(pts[j] + u * (pts[j + 1] - pts[j]))
    return out


def certify_walk(body: ConvexBody, walk: list[Point], n_samples: int) -> WalkCertificate:
    """Probe the body from n_samples points along the walk.

    Reports the worst defect L_left - L_right, the worst angle gap
    alpha - beta, whether the defect kept one strict sign, and whether
    alpha + beta < pi held throughout.  Polygon bodies use the interval
    convention on side extensions; the defect is then the conservative
    signed gap between the two length intervals and the angles are taken
    at the interval ends realizing it.
    """
    samples = sample_closed_polyline(walk, n_samples)
    scale = body_diameter(body)
    rows = []
    min_defect = math.inf
    min_gap = math.inf
    angle_sum_ok = True
    signs = set()
    center = interior_point(body)
    for k, a in enumerate(samples):
        if isinstance(body, ConvexPolygon):
            left, right = polygon_tangent_intervals(body, a)
            defect = interval_separation(left, right)
            lp = left.point_lo if defect >= 0 else left.point_hi
            rp = right.point_hi if defect >= 0 else right.point_lo
            llen = left.lo if defect >= 0 else left.hi
            rlen = right.hi if defect >= 0 else right.lo
            ang_left = ray_angle(lp, rp, a)
            ang_right = ray_angle(rp, lp, a)
        else:
            probe = tangent_probe(body, a)
            defect = probe.defect
            llen, rlen = probe.left.length, probe.right.length
            lp, rp = probe.left.point, probe.right.point
            ang_left = ray_angle(lp, rp, a)
            ang_right = ray_angle(rp, lp, a)
        if ALPHA_SIDE == "right":
            beta, alpha = ang_left, ang_right
        else:
            beta, alpha = ang_right, ang_left
        if alpha + beta >= math.pi:
            angle_sum_ok = False
        if abs(defect) > 1e-12 * scale:
            signs.add(defect > 0.0)
        else:
            signs.add(None)
        min_defect = min(min_defect, defect)
        min_gap = min(min_gap, alpha - beta)
        rows.append((k, a.x, a.y, alpha, beta, llen, rlen, defect))
    sign_changes = 0
    seq = [r[7] for r in rows if abs(r[7]) > 1e-12 * scale]
    for d0, d1 in zip(seq, seq[1:] + seq[:1]):
        if d0 * d1 < 0.0:
            sign_changes += 1
    return WalkCertificate(
        min_defect=min_defect,
        min_angle_gap=min_gap,
        all_same_sign=len(signs) == 1 and None not in signs,
        angle_sum_ok=angle_sum_ok,
        sign_changes=sign_changes,
        rows=rows,
    )
