"""Acceptance criteria, runnable from pytest or the verify-all command.

Each criterion returns a CriterionResult; expected values marked as
derived were computed by the independent oracles in the test suite
before being frozen here.
"""

import math
import time
from dataclasses import dataclass

import numpy as np

from .geom import TAU, DegenerateError, Point, dist
from .bodies import SupportOval, ConvexPolygon, tangent_probe, boundary_point
from .dodecagon import (
    DodecagonParams,
    build_dodecagon,
    certify_walk,
    chord_motion,
    derived_angles,
    outer_star,
    smooth,
    smoothed_star,
    state_angles,
    symbolic_angle_table,
    transition_angle_arrays,
)
from .loci import (
    diameters,
    equal_tangent_points_on_isoptic,
    equitangent_field,
    trace_locus,
    triangle_locus_exact,
    vertices,
)
from .torus import (
    count_intersections,
    essential_loops,
    field_arrays,
    trace_torus_curve,
)


@dataclass
class CriterionResult:
    number: str
    name: str
    passed: bool
    detail: str
    runtime: float

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] criterion {self.number}: {self.name} ({self.runtime:.2f}s) {self.detail}"


def _result(number, name, t0, passed, detail) -> CriterionResult:
    return CriterionResult(number, name, passed, detail, time.time() - t0)


def _default_build():
    p = DodecagonParams()
    poly = build_dodecagon(p)
    return p, poly


def criterion_01_angle_table() -> CriterionResult:
    t0 = time.time()
    p, poly = _default_build()
    d = derived_angles(poly, p)
    table = symbolic_angle_table(p, d)
    states = chord_motion(poly)
    center = poly.centroid()
    worst = 0.0
    for k in range(8):
        beta, alpha = state_angles(states[k], center)
        tb, ta = table[k]
        worst = max(worst, abs(beta - tb), abs(alpha - ta))
    ok = worst < 1e-9 and (time.time() - t0) < 1.0
    return _result("1", "angle-table reproduction", t0, ok, f"max deviation {worst:.2e} rad")


def criterion_02_discrete_inequality(samples_per_step: int = 10_000) -> CriterionResult:
    t0 = time.time()
    p, poly = _default_build()
    states = chord_motion(poly)
    center = poly.centroid()
    min_gap = math.inf
    max_sum = -math.inf
    for k in range(len(states)):
        beta, alpha = state_angles(states[k], center)
        min_gap = min(min_gap, alpha - beta)
        max_sum = max(max_sum, alpha + beta)
    for a, b in zip(states, states[1:]):
        beta, alpha, _ = transition_angle_arrays(a, b, samples_per_step, center)
        min_gap = min(min_gap, float(np.min(alpha - beta)))
        max_sum = max(max_sum, float(np.max(alpha + beta)))
    elapsed = time.time() - t0
    ok = min_gap > 0.0 and max_sum < math.pi and elapsed < 10.0
    return _result(
        "2",
        "beta<alpha and alpha+beta<pi along the whole motion",
        t0,
        ok,
        f"min(alpha-beta)={min_gap:.6f} rad, max(alpha+beta)={max_sum:.6f} rad",
    )


def criterion_03_derived_angle_sweep() -> CriterionResult:
    t0 = time.time()
    results = []
    for phi_deg in (0.5, 1.0, 2.0, 4.0):
        p = DodecagonParams(side=1.0, phi=math.radians(phi_deg), psi=math.radians(1.5 * phi_deg))
        poly = build_dodecagon(p)
        d = derived_angles(poly, p)
        results.append(p.phi < d.theta and p.phi < d.delta)
    ok = all(results) and (time.time() - t0) < 1.0
    return _result("3", "phi<theta and phi<delta across the sweep", t0, ok, f"{sum(results)}/4 parameter sets")


def criterion_04_headline_certificate(n_samples: int = 10_000) -> CriterionResult:
    t0 = time.time()
    p, poly = _default_build()
    states = chord_motion(poly)
    pcc = smooth(poly, 1e-3, 1e3)
    star = smoothed_star(pcc, states)
    cert = certify_walk(pcc, star.points, n_samples)
    elapsed = time.time() - t0
    ok = cert.min_defect > 0.0 and cert.all_same_sign and cert.angle_sum_ok and elapsed < 30.0
    return _result(
        "4",
        "smoothed body keeps the right tangent segment strictly shorter",
        t0,
        ok,
        f"min defect {cert.min_defect:.6f} over {n_samples} walk samples",
    )


def criterion_05_star_pairing() -> CriterionResult:
    t0 = time.time()
    p, poly = _default_build()
    states = chord_motion(poly)
    star = outer_star(states)  # raises if the pairs fail to coincide within 1e-9
    worst_pair = 0.0
    for block in range(6):
        for k in (0, 2, 4, 6):
            i = 9 * block + k
            worst_pair = max(worst_pair, dist(star.state_apexes[i], star.state_apexes[i + 1]))
    pcc = smooth(poly, 1e-3, 1e3)
    sstar = smoothed_star(pcc, states)
    min_sep = math.inf
    for block in range(6):
        for k in (0, 2, 4, 6):
            i = 9 * block + k
            min_sep = min(min_sep, dist(sstar.state_apexes[i], sstar.state_apexes[i + 1]))
    ok = worst_pair < 1e-9 and min_sep > 0.0
    return _result(
        "5",
        "star points coincide pairwise, then separate after smoothing",
        t0,
        ok,
        f"polygon pair gap {worst_pair:.2e}, smoothed pair separation >= {min_sep:.2e}",
    )


def criterion_06_triangle_census(resolution: int = 1024) -> CriterionResult:
    t0 = time.time()
    tri = ConvexPolygon([Point(0.0, 0.0), Point(4.0, 0.0), Point(0.5, 1.0)])
    exact = triangle_locus_exact(tri)
    field = equitangent_field(tri)
    traced = trace_locus(field, resolution)
    census = sorted(c.kind for c in traced)
    want = sorted(["boundary_to_infinity"] * 4 + ["boundary_to_boundary"])
    cell = (field.domain[1] - field.domain[0]) / (resolution - 1)
    segs = []
    for c in exact:
        for a, b in zip(c.points, c.points[1:]):
            segs.append((a.x, a.y, b.x, b.y))
    S = np.array(segs)
    ex, ey = S[:, 2] - S[:, 0], S[:, 3] - S[:, 1]
    L2 = np.where(ex**2 + ey**2 > 0, ex**2 + ey**2, 1.0)
    worst = 0.0
    for c in traced:
        for q in c.points:
            tpar = np.clip(((q.x - S[:, 0]) * ex + (q.y - S[:, 1]) * ey) / L2, 0.0, 1.0)
            d = np.min(np.hypot(S[:, 0] + tpar * ex - q.x, S[:, 1] + tpar * ey - q.y))
            worst = max(worst, float(d))
    ok = census == want and worst <= 2.0 * cell
    return _result(
        "6",
        "obtuse-triangle locus census 4+1 and closeness to the exact lines",
        t0,
        ok,
        f"census {census == want}, max distance {worst:.4f} vs 2 cells {2 * cell:.4f}",
    )


def criterion_07_isoptic_points() -> CriterionResult:
    t0 = time.time()
    ell = SupportOval.ellipse(2.0, 1.0)
    counts = []
    for phi in (math.pi / 3.0, math.pi / 2.0, 2.0 * math.pi / 3.0):
        pts = equal_tangent_points_on_isoptic(ell, phi, 512)
        counts.append(len(pts))
    pts = equal_tangent_points_on_isoptic(ell, math.pi / 2.0, 512)
    r_err = max(abs(math.hypot(p.x, p.y) - math.sqrt(5.0)) for p in pts)
    ax_err = max(min(abs(p.x), abs(p.y)) for p in pts)
    ok = all(c >= 4 for c in counts) and r_err < 1e-3 and ax_err < 1e-3
    return _result(
        "7",
        "at least four equal-tangent points on each isoptic; director circle at pi/2",
        t0,
        ok,
        f"counts {counts}, director-circle error {r_err:.2e}, axis error {ax_err:.2e}",
    )


def criterion_08a_ellipse_limit_counts() -> CriterionResult:
    t0 = time.time()
    ell = SupportOval.ellipse(2.0, 1.0)
    vs = vertices(ell)
    ds = diameters(ell)
    ok = len(vs) == 4 and len(ds) == 2
    return _result(
        "8a",
        "ellipse has exactly 4 curvature vertices and exactly 2 diameters",
        t0,
        ok,
        f"vertices {len(vs)}, diameters {len(ds)}",
    )


def criterion_08b_perturbed_vertices() -> CriterionResult:
    t0 = time.time()
    pert = SupportOval.fourier(1.0, [(0.0, 0.0), (0.0, 0.0), (0.1, 0.0)])
    vs = vertices(pert)
    ok = len(vs) == 6
    return _result("8b", "perturbed oval h=1+0.1cos3t has 6 vertices", t0, ok, f"vertices {len(vs)}")


def criterion_08c_perturbed_diameters() -> CriterionResult:
    """The stated count of 3 isolated diameters for h=1+0.1cos3t.

    The mandated oracle check (critical points of the width) finds the
    width 2 + 0.1cos(3t) + 0.1cos(3t+3pi) identically 2: the oval has
    constant width, so every direction is a double normal and no finite
    count exists.  The criterion is reported honestly as failed; the
    degenerate detection is the oracle-confirmed behavior.
    """
    t0 = time.time()
    pert = SupportOval.fourier(1.0, [(0.0, 0.0), (0.0, 0.0), (0.1, 0.0)])
    th = np.linspace(0.0, math.pi, 4096, endpoint=False)
    width = np.asarray(pert.h(th), dtype=float) + np.asarray(pert.h(th + math.pi), dtype=float)
    width_range = float(width.max() - width.min())
    try:
        found = len(diameters(pert))
        detail = f"found {found} isolated diameters"
        ok = found == 3
    except DegenerateError:
        ok = False
        detail = (
            f"width range {width_range:.2e}: constant width, continuum of double normals; "
            "the stated count 3 is unattainable (cos(3(t+pi)) = -cos(3t))"
        )
    return _result("8c", "perturbed oval has 3 diameters as stated", t0, ok, detail)


def criterion_09_torus(grid: int = 512) -> CriterionResult:
    t0 = time.time()
    p, poly = _default_build()
    pcc = smooth(poly, 1e-3, 1e3)
    dodeca_ess = essential_loops(trace_torus_curve(pcc, grid))
    ell = SupportOval.ellipse(2.0, 1.0)
    loops = trace_torus_curve(ell, grid)
    ess = essential_loops(loops)
    diag = next(lp for lp in loops if lp.kind == "diagonal")
    crossings = [count_intersections(diag, e) for e in ess]
    elapsed = time.time() - t0
    ok = (
        len(dodeca_ess) == 0
        and len(ess) == 2
        and all(c >= 2 for c in crossings)
        and elapsed < 60.0
    )
    return _result(
        "9",
        "essential loops: none for the smoothed dodecagon, two for the ellipse",
        t0,
        ok,
        f"dodecagon {len(dodeca_ess)}, ellipse {len(ess)}, diagonal crossings {crossings}",
    )


def criterion_10_property_suites(seed: int = 0) -> CriterionResult:
    t0 = time.time()
    rng = np.random.default_rng(seed)
    worst_rel = 0.0
    checked = 0
    while checked < 1000:
        c0 = 1.0
        coeffs = [
            (rng.uniform(-0.03, 0.03) / (k * k), rng.uniform(-0.03, 0.03) / (k * k))
            for k in range(1, 5)
        ]
        oval = SupportOval.fourier(c0, coeffs)
        theta = rng.uniform(0.0, TAU)
        offset = rng.uniform(0.2, 3.0)
        base, _ = boundary_point(oval, theta)
        a = Point(
            base.x + offset * math.cos(theta), base.y + offset * math.sin(theta)
        )
        probe = tangent_probe(oval, a)
        chord = dist(probe.left.point, probe.right.point)
        # side opposite each triangle vertex: left segment faces the
        # right tangency's angle (alpha), right segment faces beta
        ratios = (
            probe.left.length / math.sin(probe.alpha),
            probe.right.length / math.sin(probe.beta),
            chord / math.sin(probe.subtended),
        )
        m = max(ratios)
        worst_rel = max(worst_rel, (m - min(ratios)) / m)
        checked += 1
    ell = SupportOval.ellipse(2.0, 1.0)
    s = rng.uniform(0.0, TAU, 10_000)
    t = rng.uniform(0.0, TAU, 10_000)
    keep = np.abs((t - s + math.pi) % TAU - math.pi) > 0.02 * TAU
    s, t = s[keep], t[keep]
    g1 = field_arrays(ell, s, t, continuous=False)
    g2 = field_arrays(ell, t, s, continuous=False)
    anti = float(np.max(np.abs(g1 + g2)))
    ok = worst_rel < 1e-6 and anti < 1e-9
    return _result(
        "10",
        "law-of-sines probe consistency and field antisymmetry",
        t0,
        ok,
        f"law-of-sines worst rel dev {worst_rel:.2e} over {checked} probes, antisymmetry {anti:.2e}",
    )


ALL_CRITERIA = [
    criterion_01_angle_table,
    criterion_02_discrete_inequality,
    criterion_03_derived_angle_sweep,
    criterion_04_headline_certificate,
    criterion_05_star_pairing,
    criterion_06_triangle_census,
    criterion_07_isoptic_points,
    criterion_08a_ellipse_limit_counts,
    criterion_08b_perturbed_vertices,
    criterion_08c_perturbed_diameters,
    criterion_09_torus,
    criterion_10_property_suites,
]


def run_all(seed: int = 0) -> list[CriterionResult]:
    out = []
    for fn in ALL_CRITERIA:
        if fn is criterion_10_property_suites:
            out.append(fn(seed=seed))
        else:
            out.append(fn())
    return out
