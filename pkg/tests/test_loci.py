import math
from collections import Counter

import numpy as np
import pytest

from equitangent.geom import DegenerateError, Point, dist
from equitangent.bodies import (
    ConvexPolygon,
    SupportOval,
    interior_point,
    tangent_probe,
)
from equitangent.loci import (
    body_boundary_distance,
    diameters,
    equal_tangent_points_on_isoptic,
    equitangent_field,
    isoptic,
    symmetry_set,
    trace_locus,
    triangle_locus_exact,
    vertices,
)
from equitangent.torus import DegenerateFieldError

ELL = SupportOval.ellipse(2.0, 1.0)
TRI = ConvexPolygon([Point(0.0, 0.0), Point(4.0, 0.0), Point(0.5, 1.0)])


# ---------------------------------------------------------------------------
# equitangent field


def test_field_zero_on_major_axis():
    field = equitangent_field(ELL)
    assert abs(field.eval(Point(3.0, 0.0))) < 1e-12


def test_field_sign_matches_dense_oracle():
    # brute-force oracle: lengths to the two tangencies found by scanning
    # one million boundary candidates for the support lines through A
    field = equitangent_field(ELL)
    a = Point(3.0, 0.5)
    th = np.linspace(0, math.tau, 1_000_000, endpoint=False)
    h = np.asarray(ELL.h(th))
    gap = np.abs(a.x * np.cos(th) + a.y * np.sin(th) - h)
    i1 = int(np.argmin(gap))
    masked = gap.copy()
    masked[max(0, i1 - 20000) : i1 + 20000] = np.inf
    i2 = int(np.argmin(masked))
    pts = []
    for i in (i1, i2):
        hv, dh = float(h[i]), float(ELL.dh(th[i]))
        c, s = math.cos(th[i]), math.sin(th[i])
        pts.append(Point(hv * c - dh * s, hv * s + dh * c))
    gz = interior_point(ELL) - a
    sides = [gz.x * (p.y - a.y) - gz.y * (p.x - a.x) for p in pts]
    left = pts[0] if sides[0] >= sides[1] else pts[1]
    right = pts[1] if sides[0] >= sides[1] else pts[0]
    oracle = dist(a, left) - dist(a, right)
    got = field.eval(a)
    assert oracle != 0.0
    assert math.copysign(1.0, got) == math.copysign(1.0, oracle)
    # the grid oracle resolves each tangent length to about rho * (tau/1e6)
    assert math.isclose(got, oracle, abs_tol=1e-4)


def test_field_grid_matches_scalar():
    field = equitangent_field(ELL)
    xs = np.array([3.0, -2.5, 0.5, 1.8])
    ys = np.array([0.5, 1.0, 2.2, -1.7])
    grid = field.eval_grid(xs, ys)
    for k in range(4):
        assert math.isclose(float(grid[k]), field.eval(Point(xs[k], ys[k])), rel_tol=1e-9)


# ---------------------------------------------------------------------------
# tracing


def test_ellipse_locus_components():
    field = equitangent_field(ELL, box=(-6.0, 6.0, -6.0, 6.0))
    comps = trace_locus(field, 512)
    assert len(comps) == 4
    assert all(c.kind == "boundary_to_infinity" for c in comps)
    for comp in comps:
        off_axis = min(
            max(abs(p.x) for p in comp.points), max(abs(p.y) for p in comp.points)
        )
        assert off_axis < 1e-2


def test_circle_field_degenerate():
    circ = SupportOval.circle(1.0)
    with pytest.raises(DegenerateFieldError):
        trace_locus(equitangent_field(circ), 128)


def test_census_stable_under_resolution_doubling():
    field = equitangent_field(ELL, box=(-6.0, 6.0, -6.0, 6.0))
    c512 = Counter(c.kind for c in trace_locus(field, 512))
    c1024 = Counter(c.kind for c in trace_locus(field, 1024))
    assert c512 == c1024
    tfield = equitangent_field(TRI)
    t512 = Counter(c.kind for c in trace_locus(tfield, 512))
    t1024 = Counter(c.kind for c in trace_locus(tfield, 1024))
    assert t512 == t1024 == Counter({"boundary_to_infinity": 4, "boundary_to_boundary": 1})


def test_locus_and_symmetry_set_correspondence():
    # every traced equal-tangent point admits a bitangent circle: the
    # normals at its tangency pair meet equidistantly
    field = equitangent_field(ELL, box=(-6.0, 6.0, -6.0, 6.0))
    comps = trace_locus(field, 256)
    checked = 0
    for comp in comps:
        for p in comp.points[:: max(1, len(comp.points) // 8)]:
            probe = tangent_probe(ELL, p)
            s = probe.left.param
            t = probe.right.param
            denom = math.sin(t - s)
            if abs(denom) < 1e-6:
                continue
            x1, x2 = probe.left.point, probe.right.point
            # normal lines x1 + u*(cos s, sin s), x2 + v*(cos t, sin t)
            u = ((x2.x - x1.x) * math.sin(t) - (x2.y - x1.y) * math.cos(t)) / denom
            center = Point(x1.x + u * math.cos(s), x1.y + u * math.sin(s))
            r1, r2 = dist(center, x1), dist(center, x2)
            assert abs(r1 - r2) <= 1e-6 * max(r1, r2)
            checked += 1
    assert checked > 10


# ---------------------------------------------------------------------------
# triangle


def test_triangle_exact_census():
    comps = triangle_locus_exact(TRI)
    census = Counter(c.kind for c in comps)
    assert census == Counter({"boundary_to_infinity": 4, "boundary_to_boundary": 1})


def test_triangle_exact_known_features():
    comps = triangle_locus_exact(TRI)

    def has_point(comp, q, tol=1e-4):
        return any(dist(p, q) < tol for p in comp.points)

    bounded = next(c for c in comps if c.kind == "boundary_to_boundary")
    # bounded component runs from the obtuse vertex to the midpoint of
    # the adjacent side, bending at (-29/12, 11/6)
    assert has_point(bounded, Point(0.5, 1.0), 1e-6)
    assert has_point(bounded, Point(0.25, 0.5), 1e-6)
    assert has_point(bounded, Point(-29.0 / 12.0, 11.0 / 6.0), 1e-5)
    unbounded = [c for c in comps if c.kind == "boundary_to_infinity"]
    # the zig-zag component bends at (2, 4) and (59/12, 59/6)
    zig = [c for c in unbounded if has_point(c, Point(2.0, 4.0), 1e-5)]
    assert len(zig) == 1
    assert has_point(zig[0], Point(59.0 / 12.0, 59.0 / 6.0), 1e-4)
    assert has_point(zig[0], Point(2.25, 0.5), 1e-6)
    # base extensions start at the base vertices, bisector at the base midpoint ray
    starts = set()
    for c in unbounded:
        for q in (Point(0, 0), Point(4, 0), Point(2, 0)):
            if has_point(c, q, 1e-6):
                starts.add((q.x, q.y))
    assert starts == {(0.0, 0.0), (4.0, 0.0), (2.0, 0.0)}


def test_equilateral_triangle_bisectors():
    tri = ConvexPolygon(
        [Point(0.0, 0.0), Point(1.0, 0.0), Point(0.5, math.sqrt(3) / 2)]
    )
    comps = triangle_locus_exact(tri)
    # symmetry: three bisector rays to infinity plus side segments
    assert all("infinity" in c.kind for c in comps)
    field = equitangent_field(tri)
    for c in comps:
        mid = c.points[len(c.points) // 2]
        v = field.eval(mid)
        assert abs(v) < 1e-9


def test_triangle_traced_close_to_exact():
    exact = triangle_locus_exact(TRI)
    field = equitangent_field(TRI)
    traced = trace_locus(field, 1024)
    cell = (field.domain[1] - field.domain[0]) / 1023
    segs = []
    for c in exact:
        for a, b in zip(c.points, c.points[1:]):
            segs.append((a.x, a.y, b.x, b.y))
    S = np.array(segs)
    ex, ey = S[:, 2] - S[:, 0], S[:, 3] - S[:, 1]
    L2 = np.where(ex**2 + ey**2 > 0, ex**2 + ey**2, 1.0)
    for c in traced:
        for q in c.points:
            t = np.clip(((q.x - S[:, 0]) * ex + (q.y - S[:, 1]) * ey) / L2, 0, 1)
            d = np.min(np.hypot(S[:, 0] + t * ex - q.x, S[:, 1] + t * ey - q.y))
            assert d <= 2.0 * cell


# ---------------------------------------------------------------------------
# isoptics


def test_circle_isoptic_is_concentric_circle():
    circ = SupportOval.circle(1.0)
    pts = isoptic(circ, math.pi / 2, 128)
    for p in pts:
        assert math.isclose(math.hypot(p.x, p.y), math.sqrt(2.0), rel_tol=1e-9)


def test_ellipse_director_circle():
    pts = isoptic(ELL, math.pi / 2, 256)
    for p in pts:
        assert abs(math.hypot(p.x, p.y) - math.sqrt(5.0)) < 1e-3


def test_isoptic_nesting():
    inner = isoptic(ELL, 3.0, 128)
    outer = isoptic(ELL, 2.0, 128)
    c = interior_point(ELL)
    for p, q in zip(inner, outer):
        assert dist(p, c) < dist(q, c)


def test_isoptic_rejects_tiny_angle():
    with pytest.raises(Exception):
        isoptic(ELL, 0.005, 64)


def test_equal_tangent_points_pi_over_2():
    pts = equal_tangent_points_on_isoptic(ELL, math.pi / 2, 512)
    assert len(pts) == 4
    for p in pts:
        assert abs(math.hypot(p.x, p.y) - math.sqrt(5.0)) < 1e-3
        assert min(abs(p.x), abs(p.y)) < 1e-3


def test_equal_tangent_points_two_thirds_pi():
    pts = equal_tangent_points_on_isoptic(ELL, 2.0 * math.pi / 3.0, 512)
    assert len(pts) >= 4


def test_equal_tangent_points_circle_degenerate():
    with pytest.raises(DegenerateFieldError):
        equal_tangent_points_on_isoptic(SupportOval.circle(1.0), math.pi / 2, 128)


def test_isoptic_limit_approaches_vertices():
    dist_prev = None
    for phi in (2.8, 3.0, 3.1):
        pts = equal_tangent_points_on_isoptic(ELL, phi, 512)
        assert len(pts) >= 4
        dmax = max(body_boundary_distance(ELL, p) for p in pts)
        offsets = []
        for p in pts:
            th = math.atan2(p.y, p.x) % math.tau
            offsets.append(
                min(
                    abs((th - v + math.pi) % math.tau - math.pi)
                    for v in (0.0, math.pi / 2, math.pi, 3 * math.pi / 2)
                )
            )
        assert max(offsets) < 0.05
        if dist_prev is not None:
            assert dmax < dist_prev
        dist_prev = dmax


# ---------------------------------------------------------------------------
# vertices and diameters


def test_ellipse_vertices():
    vs = vertices(ELL)
    assert len(vs) == 4
    angles = [t for t, _ in vs]
    for want in (0.0, math.pi / 2, math.pi, 3 * math.pi / 2):
        assert min(abs(t - want) for t in angles) < 1e-6
    kappas = sorted(k for _, k in vs)
    assert math.isclose(kappas[0], 0.25, rel_tol=1e-9)  # b / a^2
    assert math.isclose(kappas[-1], 2.0, rel_tol=1e-9)  # a / b^2


def test_perturbed_oval_six_vertices():
    # extrema of the curvature radius 1 - 0.8 cos 3t: six per period
    oval = SupportOval.fourier(1.0, [(0, 0), (0, 0), (0.1, 0.0)])
    vs = vertices(oval)
    assert len(vs) == 6
    for t, _ in vs:
        assert min(abs(t - k * math.pi / 3.0) for k in range(7)) < 1e-6


def test_circle_vertices_degenerate():
    with pytest.raises(DegenerateError):
        vertices(SupportOval.circle(1.0))


def test_ellipse_diameters():
    ds = diameters(ELL)
    assert len(ds) == 2
    lengths = sorted(d.length for d in ds)
    assert math.isclose(lengths[0], 2.0, rel_tol=1e-9)
    assert math.isclose(lengths[1], 4.0, rel_tol=1e-9)
    for d in ds:
        chord = d.p2 - d.p1
        n = Point(math.cos(d.theta), math.sin(d.theta))
        assert abs(chord.x * n.y - chord.y * n.x) < 1e-6 * d.length


def test_circle_diameters_degenerate():
    with pytest.raises(DegenerateError):
        diameters(SupportOval.circle(1.0))


def test_constant_width_oval_degenerate():
    # odd harmonics cancel in the width h(t) + h(t + pi)
    oval = SupportOval.fourier(1.0, [(0, 0), (0, 0), (0.1, 0.0)])
    with pytest.raises(DegenerateError):
        diameters(oval)


def test_even_harmonic_diameter_counts():
    two = SupportOval.fourier(1.0, [(0, 0), (0.05, 0.0)])
    assert len(diameters(two)) == 2
    four = SupportOval.fourier(1.0, [(0, 0), (0, 0), (0, 0), (0.02, 0.0)])
    assert len(diameters(four)) == 4


# ---------------------------------------------------------------------------
# symmetry set


def test_circle_symmetry_set_is_center():
    branches = symmetry_set(SupportOval.circle(2.0), 128)
    assert len(branches) == 1
    assert len(branches[0].points) == 1
    assert dist(branches[0].points[0], Point(0, 0)) < 1e-9


def test_ellipse_symmetry_set_axes():
    branches = symmetry_set(ELL, 256)
    assert len(branches) == 2
    spans = []
    for b in branches:
        real = [p for p in b.points if p is not None]
        markers = sum(1 for p in b.points if p is None)
        assert markers >= 1  # the diameter pair has parallel normals
        xs = max(abs(p.x) for p in real)
        ys = max(abs(p.y) for p in real)
        spans.append((xs, ys))
    spans.sort()
    # major-axis branch reaches (a^2-b^2)/a, minor-axis branch (a^2-b^2)/b
    assert spans[0][0] < 1e-9 and abs(spans[0][1] - 3.0) < 0.1
    assert spans[1][1] < 1e-9 and abs(spans[1][0] - 1.5) < 0.01
