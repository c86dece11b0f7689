import math

import numpy as np
import pytest

from equitangent.geom import GeometryError, Point, dist, rotate
from equitangent.bodies import SupportOval, validate
from equitangent.dodecagon import (
    DodecagonParams,
    build_dodecagon,
    certify_walk,
    chord_motion,
    derived_angles,
    interpolate_motion,
    interpolate_state,
    motion_certificate,
    outer_star,
    smooth,
    smoothed_star,
    state_angles,
    symbolic_angle_table,
    transition_angle_arrays,
)


def deg(x):
    return math.radians(x)


# ---------------------------------------------------------------------------
# construction


def test_equal_angles_rejected():
    with pytest.raises(GeometryError):
        build_dodecagon(DodecagonParams(side=1.0, phi=deg(2.0), psi=deg(2.0)))


def test_reversed_angles_rejected():
    with pytest.raises(GeometryError):
        build_dodecagon(DodecagonParams(side=1.0, phi=deg(3.0), psi=deg(2.0)))


def test_apex_length_sine_rule(default_poly, default_params):
    # sine rule on base A1A2: |A1B1| = sin(psi) * side / sin(phi + psi)
    p = default_params
    expect = math.sin(p.psi) * p.side / math.sin(p.phi + p.psi)
    a1, b1 = default_poly.vertices[0], default_poly.vertices[1]
    assert math.isclose(dist(a1, b1), expect, rel_tol=1e-12)


def test_sixfold_rotation_symmetry(default_poly):
    for k in range(12):
        rotated = rotate(default_poly.vertex(k), math.tau / 6)
        assert dist(rotated, default_poly.vertex(k + 2)) < 1e-9


def test_apexes_outside_hexagon(default_poly, default_params):
    hexagon = [
        Point(
            default_params.side * math.cos(k * math.tau / 6),
            default_params.side * math.sin(k * math.tau / 6),
        )
        for k in range(6)
    ]
    from equitangent.bodies import ConvexPolygon

    hull = ConvexPolygon(hexagon)
    for i in range(6):
        assert not hull.contains(default_poly.vertex(2 * i + 1))


def test_apex_closer_to_next_vertex(default_poly):
    for i in range(6):
        b = default_poly.vertex(2 * i + 1)
        a_i = default_poly.vertex(2 * i)
        a_next = default_poly.vertex(2 * i + 2)
        assert dist(b, a_next) < dist(b, a_i)


def test_construction_is_strictly_convex(default_poly):
    assert validate(default_poly).ok


# ---------------------------------------------------------------------------
# derived angles


def _oracle_angles(poly, v, p, q):
    """Independent angle oracle from raw coordinates."""
    vx, vy = poly.vertices[v].x, poly.vertices[v].y
    ux, uy = poly.vertices[p].x - vx, poly.vertices[p].y - vy
    wx, wy = poly.vertices[q].x - vx, poly.vertices[q].y - vy
    nu = math.hypot(ux, uy)
    nw = math.hypot(wx, wy)
    return math.acos((ux * wx + uy * wy) / (nu * nw))


def test_derived_angles_match_coordinate_oracle(default_poly, default_params):
    d = derived_angles(default_poly, default_params)
    # theta at A3 (vertex 4) between A2 (vertex 2) and B1 (vertex 1)
    assert math.isclose(d.theta, _oracle_angles(default_poly, 4, 2, 1), rel_tol=1e-10)
    # delta at A2 (vertex 2) between B3 (vertex 5) and A4 (vertex 6)
    assert math.isclose(d.delta, _oracle_angles(default_poly, 2, 5, 6), rel_tol=1e-10)
    assert default_params.phi < d.theta
    assert default_params.phi < d.delta


@pytest.mark.parametrize("phi_deg", [0.5, 1.0, 2.0, 3.0, 4.0, 5.0])
def test_derived_angle_inequality_sweep(phi_deg):
    p = DodecagonParams(side=1.0, phi=deg(phi_deg), psi=deg(1.5 * phi_deg))
    poly = build_dodecagon(p)
    d = derived_angles(poly, p)
    assert p.phi < d.theta
    assert p.phi < d.delta


# ---------------------------------------------------------------------------
# chord motion


def test_motion_has_54_states(default_states):
    assert len(default_states) == 54


def test_first_state_chord(default_poly, default_states):
    s = default_states[0]
    assert s.chord[0] == default_poly.vertex(0)  # A1
    assert s.chord[1] == default_poly.vertex(4)  # A3


def test_ninth_state_is_rotated_first(default_poly, default_states):
    s9 = default_states[8]
    assert s9.chord[0] == default_poly.vertex(2)  # A2
    assert s9.chord[1] == default_poly.vertex(6)  # A4
    assert s9.first_side == 2
    assert s9.second_side == 6


def test_one_element_changes_per_transition(default_states):
    def key(s):
        return (s.first_vertex, s.second_vertex, s.first_side, s.second_side)

    for i in range(len(default_states) - 1):
        a, b = default_states[i], default_states[i + 1]
        changes = sum(x != y for x, y in zip(key(a), key(b)))
        if i % 9 == 8:  # block boundary repeats the state
            assert changes == 0
        else:
            assert changes == 1


def test_supports_pass_through_chord_endpoints(default_states):
    for s in default_states:
        assert abs(s.support_first.side_of(s.chord[0])) < 1e-12
        assert abs(s.support_second.side_of(s.chord[1])) < 1e-12


def test_angle_table_reproduction(default_poly, default_params, default_states):
    d = derived_angles(default_poly, default_params)
    table = symbolic_angle_table(default_params, d)
    center = default_poly.centroid()
    for k in range(8):
        beta, alpha = state_angles(default_states[k], center)
        tb, ta = table[k]
        assert abs(beta - tb) < 1e-9
        assert abs(alpha - ta) < 1e-9
        assert beta < alpha


def test_angle_table_holds_for_other_parameters():
    p = DodecagonParams(side=2.0, phi=deg(1.0), psi=deg(2.5))
    poly = build_dodecagon(p)
    d = derived_angles(poly, p)
    table = symbolic_angle_table(p, d)
    states = chord_motion(poly)
    center = poly.centroid()
    for k in range(8):
        beta, alpha = state_angles(states[k], center)
        tb, ta = table[k]
        assert abs(beta - tb) < 1e-9
        assert abs(alpha - ta) < 1e-9


def test_interpolation_reproduces_endpoints(default_states):
    stream = list(interpolate_motion(default_states, 2))
    assert len(stream) == len(default_states)
    for got, want in zip(stream, default_states):
        assert dist(got.chord[0], want.chord[0]) == 0.0
        assert dist(got.chord[1], want.chord[1]) == 0.0


def test_interpolation_midpoint_of_first_slide(default_poly, default_states):
    mid = interpolate_state(default_states[0], default_states[1], 0.5)
    expect = 0.5 * (default_poly.vertex(0) + default_poly.vertex(1))
    assert dist(mid.chord[0], expect) < 1e-15
    assert dist(mid.chord[1], default_poly.vertex(4)) == 0.0


def test_angles_monotone_within_steps(default_poly, default_states):
    center = default_poly.centroid()
    for a, b in zip(default_states, default_states[1:]):
        beta, alpha, _ = transition_angle_arrays(a, b, 10_000, center)
        for arr in (beta, alpha):
            d = np.diff(arr)
            assert np.all(d >= -1e-12) or np.all(d <= 1e-12)


def test_motion_certificate_positive(default_poly, default_states):
    report = motion_certificate(default_poly, default_states, 512)
    assert report["min_angle_gap"] > 0.0
    assert report["min_defect"] > 0.0
    assert report["max_angle_sum"] < math.pi


# ---------------------------------------------------------------------------
# the star


def test_star_has_24_distinct_points(default_states):
    star = outer_star(default_states)
    assert len(star.points) == 24
    assert len(star.state_apexes) == 54


def test_star_first_point_matches_linear_solve(default_poly, default_params, default_states):
    # independent 2x2 solve of line(A1, B1) against line(A3, B3)
    a1, b1 = default_poly.vertices[0], default_poly.vertices[1]
    a3, b3 = default_poly.vertices[4], default_poly.vertices[5]
    d1 = (b1.x - a1.x, b1.y - a1.y)
    d2 = (b3.x - a3.x, b3.y - a3.y)
    denom = d1[0] * d2[1] - d1[1] * d2[0]
    t = ((a3.x - a1.x) * d2[1] - (a3.y - a1.y) * d2[0]) / denom
    expect = Point(a1.x + t * d1[0], a1.y + t * d1[1])
    star = outer_star(default_states)
    assert dist(star.points[0], expect) < 1e-12


def test_star_sixfold_symmetry(default_states):
    star = outer_star(default_states)
    for i in range(24):
        assert dist(rotate(star.points[i], math.tau / 6), star.points[(i + 4) % 24]) < 1e-9


def test_star_points_outside_polygon(default_poly, default_states):
    star = outer_star(default_states)
    for p in star.points:
        assert not default_poly.contains(p)


def test_star_pairing(default_states):
    star = outer_star(default_states)  # raises on pairing mismatch
    side = 1.0
    for block in range(6):
        for k in (0, 2, 4, 6):
            i = 9 * block + k
            assert dist(star.state_apexes[i], star.state_apexes[i + 1]) < 1e-9 * side


# ---------------------------------------------------------------------------
# smoothing


def test_smooth_produces_24_valid_arcs(default_smoothed):
    assert len(default_smoothed.arcs) == 24
    assert validate(default_smoothed).ok


def test_smooth_junctions_are_c1(default_smoothed):
    arcs = default_smoothed.arcs
    for i, arc in enumerate(arcs):
        nxt = arcs[(i + 1) % len(arcs)]
        assert dist(arc.end_point(), nxt.start_point()) < 1e-9
        gap = (arc.end_angle - nxt.start_angle + math.pi) % math.tau - math.pi
        assert abs(gap) < 1e-9


def test_smooth_alternates_radii(default_smoothed):
    radii = [arc.radius for arc in default_smoothed.arcs]
    assert radii[::2] == [1e-3] * 12
    assert radii[1::2] == [1e3] * 12


def test_smooth_extreme_radii_hausdorff(default_poly):
    pcc = smooth(default_poly, 1e-6, 1e6)
    d1 = 0.0
    for i in range(12):
        a, b = default_poly.vertex(i), default_poly.vertex(i + 1)
        for k in range(200):
            q = a + (k / 199) * (b - a)
            d1 = max(d1, pcc.boundary_distance(q))
    d2 = 0.0
    for arc in pcc.arcs:
        for k in range(200):
            ang = arc.start_angle + arc.sweep * k / 199
            d2 = max(d2, default_poly.boundary_distance(arc.point_at(ang)))
    assert max(d1, d2) < 1e-5


def test_smooth_hausdorff_within_stated_bound(default_poly, default_smoothed):
    r_small, sagitta = 1e-3, 0.0
    for arc in default_smoothed.arcs[1::2]:
        sagitta = max(sagitta, arc.radius * (1.0 - math.cos(arc.sweep / 2.0)))
    bound = max(r_small, sagitta)
    worst = 0.0
    for i in range(12):
        a, b = default_poly.vertex(i), default_poly.vertex(i + 1)
        for k in range(400):
            q = a + (k / 399) * (b - a)
            worst = max(worst, default_smoothed.boundary_distance(q))
    assert worst <= bound + 1e-12


def test_smooth_infeasible_radii_rejected(default_poly):
    with pytest.raises(GeometryError):
        smooth(default_poly, 0.4, 1.0)


def test_smoothed_star_pairs_separate(default_poly, default_states, default_smoothed):
    sstar = smoothed_star(default_smoothed, default_states)
    assert len(sstar.points) == 48
    for block in range(6):
        for k in (0, 2, 4, 6):
            i = 9 * block + k
            assert dist(sstar.state_apexes[i], sstar.state_apexes[i + 1]) > 0.0


# ---------------------------------------------------------------------------
# certificates


def test_smoothed_certificate(default_smoothed, default_states):
    sstar = smoothed_star(default_smoothed, default_states)
    cert = certify_walk(default_smoothed, sstar.points, 2000)
    assert cert.min_defect > 0.0
    assert cert.min_angle_gap > 0.0
    assert cert.all_same_sign
    assert cert.angle_sum_ok
    assert cert.verified


def test_circle_concentric_walk_not_strict():
    circ = SupportOval.circle(1.0)
    walk = [Point(3 * math.cos(t), 3 * math.sin(t)) for t in np.linspace(0, math.tau, 64, endpoint=False)]
    cert = certify_walk(circ, walk, 100)
    assert abs(cert.min_defect) < 1e-9
    assert not cert.all_same_sign
    assert not cert.verified


def test_ellipse_circular_walk_sign_changes():
    ell = SupportOval.ellipse(2.0, 1.0)
    walk = [Point(3 * math.cos(t), 3 * math.sin(t)) for t in np.linspace(0, math.tau, 64, endpoint=False)]
    cert = certify_walk(ell, walk, 400)
    assert cert.sign_changes >= 4
    assert not cert.verified


def test_walk_sample_inside_rejected(default_smoothed):
    walk = [Point(0.1, 0.0), Point(0.0, 0.1), Point(-0.1, 0.0)]
    with pytest.raises(GeometryError):
        certify_walk(default_smoothed, walk, 16)


def test_defect_convergence_to_motion_certificate(default_poly, default_states):
    target = motion_certificate(default_poly, default_states, 2048)["min_defect"]
    gaps = []
    for r in (1e-2, 1e-3, 1e-4):
        pcc = smooth(default_poly, r, 1.0 / r)
        sstar = smoothed_star(pcc, default_states)
        cert = certify_walk(pcc, sstar.points, 20_000)
        gaps.append(abs(cert.min_defect - target))
    assert gaps[0] > gaps[1] > gaps[2]
