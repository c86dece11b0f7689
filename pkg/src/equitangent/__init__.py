"""Tangent-segment geometry of convex plane curves.

Builds and certifies a convex oval that can be circled while the right
tangent segment stays strictly shorter than the left one, and computes
the surrounding objects: equitangent loci, isoptic curves, symmetry
sets, and the curve of equal-tangent pairs on the parameter torus.
"""

from .geom import (
    PARALLEL,
    CircleArc,
    DegenerateError,
    DirectedLine,
    GeometryError,
    Point,
    angle_between,
    intersect_lines,
    tangent_points_to_circle,
)
from .bodies import (
    ALPHA_SIDE,
    ConvexBody,
    ConvexPolygon,
    PiecewiseCircularCurve,
    SideExtensionProbe,
    SupportOval,
    TangentProbe,
    body_from_dict,
    body_to_dict,
    boundary_point,
    curvature,
    dump_body,
    load_body,
    side_extension_probe,
    tangent_probe,
    validate,
)
from .dodecagon import (
    ChordState,
    DerivedAngles,
    DodecagonParams,
    Star,
    WalkCertificate,
    build_dodecagon,
    certify_walk,
    chord_motion,
    derived_angles,
    interpolate_motion,
    motion_certificate,
    outer_star,
    smooth,
    smoothed_star,
    state_angles,
    symbolic_angle_table,
)
from .loci import (
    Diameter,
    LocusComponent,
    ScalarField,
    SymmetrySetBranch,
    diameters,
    equal_tangent_points_on_isoptic,
    equitangent_field,
    isoptic,
    symmetry_set,
    trace_locus,
    triangle_locus_exact,
    vertices,
)
from .torus import (
    TorusLoop,
    count_intersections,
    essential_loops,
    torus_field,
    trace_torus_curve,
    walk_loop_on_torus,
)

__all__ = [name for name in dir() if not name.startswith("_")]
