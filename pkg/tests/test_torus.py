import math

import numpy as np
import pytest

from equitangent.geom import DegenerateError, GeometryError, Point, dist
from equitangent.bodies import ConvexPolygon, SupportOval, boundary_point, tangent_probe
from equitangent.dodecagon import smoothed_star
from equitangent.torus import (
    DegenerateFieldError,
    TorusLoop,
    count_intersections,
    essential_loops,
    field_arrays,
    torus_field,
    trace_torus_curve,
    walk_loop_on_torus,
)

ELL = SupportOval.ellipse(2.0, 1.0)
TAU = math.tau


def test_field_antisymmetric():
    rng = np.random.default_rng(2)
    s = rng.uniform(0, TAU, 10_000)
    t = rng.uniform(0, TAU, 10_000)
    keep = np.abs((t - s + math.pi) % TAU - math.pi) > 0.02 * TAU
    s, t = s[keep], t[keep]
    g1 = field_arrays(ELL, s, t, continuous=False)
    g2 = field_arrays(ELL, t, s, continuous=False)
    assert float(np.max(np.abs(g1 + g2))) < 1e-9


def test_field_zero_on_mirror_pairs():
    g = torus_field(ELL)
    for s in (0.3, 1.0, 2.2, 4.0):
        assert abs(g(s, (TAU - s) % TAU)) < 1e-12
        assert abs(g(s, (math.pi - s) % TAU)) < 1e-12


def test_field_diagonal_band_guarded():
    g = torus_field(ELL)
    with pytest.raises(DegenerateError):
        g(1.0, 1.0 + 0.001)


def test_field_sign_matches_length_oracle():
    g = torus_field(ELL)
    rng = np.random.default_rng(9)
    checked = 0
    while checked < 200:
        s, t = rng.uniform(0, TAU, 2)
        if abs((t - s + math.pi) % TAU - math.pi) < 0.05 * TAU:
            continue
        xs, txs = boundary_point(ELL, s)
        xt, txt = boundary_point(ELL, t)
        denom = txs.x * txt.y - txs.y * txt.x
        if abs(denom) < 1e-3:
            continue
        a = ((xt.x - xs.x) * txt.y - (xt.y - xs.y) * txt.x) / denom
        apex = Point(xs.x + a * txs.x, xs.y + a * txs.y)
        ls, lt = dist(apex, xs), dist(apex, xt)
        if abs(ls - lt) < 1e-9:
            continue
        val = g(s, t)
        assert math.copysign(1.0, val) == math.copysign(1.0, lt - ls)
        checked += 1


def test_traced_field_continuous_across_antipodal():
    s = 0.7
    vals = [
        float(field_arrays(ELL, np.array([s]), np.array([s + math.pi + eps]), continuous=True)[0])
        for eps in (-1e-3, -1e-7, 1e-7, 1e-3)
    ]
    assert max(vals) - min(vals) < 5e-3


def test_polygon_rejected():
    square = ConvexPolygon([Point(0, 0), Point(1, 0), Point(1, 1), Point(0, 1)])
    with pytest.raises(GeometryError):
        torus_field(square)


def test_circle_degenerate():
    with pytest.raises(DegenerateFieldError):
        trace_torus_curve(SupportOval.circle(1.0), 128)


def test_ellipse_loops():
    loops = trace_torus_curve(ELL, 256)
    ess = essential_loops(loops)
    assert len(ess) == 2
    for lp in ess:
        assert lp.homotopy_class in ((1, -1), (-1, 1))
        assert lp.residual < 0.01
    diag = [lp for lp in loops if lp.kind == "diagonal"]
    assert len(diag) == 1
    assert diag[0].homotopy_class == (1, 1)


def test_ellipse_loops_match_reflection_pairs():
    # the two essential components consist of the mirror pairs (s, -s)
    # and (s, pi - s) of the elliptic support parametrization
    loops = trace_torus_curve(ELL, 256)
    ess = essential_loops(loops)
    sums = []
    for lp in ess:
        vals = [((s + t) % TAU) for s, t in lp.points]
        # (s, -s) pairs have s+t = 0 mod tau, (s, pi-s) pairs s+t = pi
        ref = min(
            (0.0, math.pi),
            key=lambda base: np.median(
                [abs((v - base + math.pi) % TAU - math.pi) for v in vals]
            ),
        )
        devs = [abs((v - ref + math.pi) % TAU - math.pi) for v in vals]
        sums.append(ref)
        assert np.median(devs) < 0.05
    assert sorted(sums) == [0.0, math.pi]


def test_traced_set_swap_symmetric():
    loops = trace_torus_curve(ELL, 256)
    cell = TAU / 256
    pts = [
        (s, t)
        for lp in loops
        if lp.kind == "loop"
        for s, t in lp.points
    ]
    arr = np.array(pts)
    for s, t in pts[:: max(1, len(pts) // 64)]:
        ds = np.abs((arr[:, 0] - t + math.pi) % TAU - math.pi)
        dt = np.abs((arr[:, 1] - s + math.pi) % TAU - math.pi)
        assert float(np.min(np.hypot(ds, dt))) < 1.5 * cell


def test_dodecagon_free_of_essential_loops(default_smoothed):
    loops = trace_torus_curve(default_smoothed, 256)
    assert len(essential_loops(loops)) == 0


def test_intersection_counts_straight_representatives():
    u = np.linspace(0, TAU, 256, endpoint=False)
    diag = TorusLoop(points=[(x, x) for x in u], homotopy_class=(1, 1))
    anti = TorusLoop(points=[(x, (TAU - x) % TAU) for x in u], homotopy_class=(1, -1))
    shifted = TorusLoop(
        points=[(x, (TAU - x + 1.0) % TAU) for x in u], homotopy_class=(1, -1)
    )
    assert count_intersections(diag, anti) == 2
    assert count_intersections(anti, shifted) == 0


def test_diagonal_crosses_each_essential_loop():
    loops = trace_torus_curve(ELL, 256)
    diag = next(lp for lp in loops if lp.kind == "diagonal")
    for lp in essential_loops(loops):
        assert count_intersections(diag, lp) >= 2


def test_walk_loop_is_diagonal_class(default_smoothed, default_states):
    sstar = smoothed_star(default_smoothed, default_states)
    walk_loop = walk_loop_on_torus(default_smoothed, sstar.points, 256)
    assert walk_loop.homotopy_class == (1, 1)
    assert walk_loop.residual < 0.01
    loops = trace_torus_curve(default_smoothed, 256)
    assert len(essential_loops(loops)) == 0  # nothing for the walk to cross


def test_probe_params_consistent_with_torus_points():
    # tangency parameters recovered by the probe evaluate back to the
    # tangency points through the boundary parametrization
    a = Point(3.0, 1.0)
    probe = tangent_probe(ELL, a)
    for contact in (probe.left, probe.right):
        p, _ = boundary_point(ELL, contact.param)
        assert dist(p, contact.point) < 1e-9
