"""Planar primitives: points, directed lines, circular arcs.

Angles are radians everywhere inside the library; degrees exist only at
the CLI boundary.  Tolerances default to 1e-9 and are absolute for
unit-scale geometry; callers working at other scales pass an ``eps``
already multiplied by their length scale.
"""

import math
from dataclasses import dataclass

TAU = 2.0 * math.pi

PARALLEL_EPS = 1e-12


class GeometryError(ValueError):
    """A geometric precondition was violated."""


class DegenerateError(GeometryError):
    """The configuration admits no well-defined answer."""


class _Parallel:
    """Distinguished non-error outcome of intersecting parallel lines."""

    __slots__ = ()

    def __repr__(self) -> str:
        return "PARALLEL"


PARALLEL = _Parallel()


@dataclass(frozen=True)
class Point:
    x: float
    y: float

    def __add__(self, other: "Point") -> "Point":
        return Point(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Point") -> "Point":
        return Point(self.x - other.x, self.y - other.y)

    def __mul__(self, k: float) -> "Point":
        return Point(self.x * k, self.y * k)

    __rmul__ = __mul__

    def __neg__(self) -> "Point":
        return Point(-self.x, -self.y)

    def as_tuple(self) -> tuple[float, float]:
        return (self.x, self.y)


def dot(a: Point, b: Point) -> float:
    return a.x * b.x + a.y * b.y


def cross(a: Point, b: Point) -> float:
    return a.x * b.y - a.y * b.x


def norm(a: Point) -> float:
    return math.hypot(a.x, a.y)


def dist(a: Point, b: Point) -> float:
    return math.hypot(a.x - b.x, a.y - b.y)


def normalize(a: Point) -> Point:
    n = norm(a)
    if n < PARALLEL_EPS:
        raise DegenerateError("cannot normalize a near-zero vector")
    return Point(a.x / n, a.y / n)


def perp(a: Point) -> Point:
    """Rotate a vector by +90 degrees."""
    return Point(-a.y, a.x)


def from_polar(r: float, angle: float) -> Point:
    return Point(r * math.cos(angle), r * math.sin(angle))


def angle_of(a: Point) -> float:
    return math.atan2(a.y, a.x)


def rotate(p: Point, angle: float, about: Point | None = None) -> Point:
    c, s = math.cos(angle), math.sin(angle)
    if about is None:
        return Point(c * p.x - s * p.y, s * p.x + c * p.y)
    dx, dy = p.x - about.x, p.y - about.y
    return Point(about.x + c * dx - s * dy, about.y + s * dx + c * dy)


@dataclass(frozen=True)
class DirectedLine:
    """A line through ``origin`` with unit ``direction``."""

    origin: Point
    direction: Point

    def __post_init__(self) -> None:
        if abs(norm(self.direction) - 1.0) > 1e-12:
            raise GeometryError("direction must be a unit vector")

    @staticmethod
    def through(a: Point, b: Point) -> "DirectedLine":
        return DirectedLine(a, normalize(b - a))

    @staticmethod
    def at_angle(origin: Point, angle: float) -> "DirectedLine":
        return DirectedLine(origin, Point(math.cos(angle), math.sin(angle)))

    def point_at(self, t: float) -> Point:
        return self.origin + t * self.direction

    def side_of(self, p: Point) -> float:
        """Positive when p lies left of the directed line, negative right."""
        return cross(self.direction, p - self.origin)


def intersect_lines(a: DirectedLine, b: DirectedLine, eps: float = PARALLEL_EPS):
    """Intersection point of two lines, or PARALLEL.

    Parallel is a value, not an error: callers branch on ``is PARALLEL``.
    """
    denom = cross(a.direction, b.direction)
    if abs(denom) < eps:
        return PARALLEL
    diff = b.origin - a.origin
    t = cross(diff, b.direction) / denom
    return a.point_at(t)


def ray_angle(vertex: Point, p: Point, q: Point) -> float:
    """Angle at ``vertex`` between the rays toward p and q, in (0, pi).

    Uses atan2 of (|cross|, dot) so small angles keep full precision.
    """
    u = p - vertex
    v = q - vertex
    if norm(u) < PARALLEL_EPS or norm(v) < PARALLEL_EPS:
        raise DegenerateError("ray endpoint coincides with vertex")
    return math.atan2(abs(cross(u, v)), dot(u, v))


def angle_between(chord: DirectedLine, tangent: DirectedLine, witness: Point) -> float:
    """Angle in (0, pi) from the chord to the tangent, opened toward witness.

    The tangent ray is taken pointing into the witness's half-plane of the
    chord, so the answer depends on the chord's direction: reversing it
    maps the angle to its supplement.
    """
    x = cross(chord.direction, tangent.direction)
    if abs(x) < PARALLEL_EPS:
        raise DegenerateError("chord and tangent are parallel or identical")
    side = chord.side_of(witness)
    if abs(side) < PARALLEL_EPS:
        raise DegenerateError("witness lies on the chord")
    d = tangent.direction if x * side > 0 else -tangent.direction
    return math.atan2(abs(cross(chord.direction, d)), dot(chord.direction, d))


def tangent_points_to_circle(a: Point, c: Point, r: float) -> tuple[Point, Point]:
    """Both tangency points on circle (c, r) seen from an exterior point a.

    The first point is the one on the counterclockwise side of the gaze
    a -> c (the left one looking at the circle from a).
    """
    if r <= 0.0:
        raise GeometryError("radius must be positive")
    d = dist(a, c)
    if d <= r:
        raise GeometryError("point is inside or on the circle")
    ahat = normalize(a - c)
    phi = math.acos(r / d)
    left = c + r * rotate(ahat, -phi)
    right = c + r * rotate(ahat, phi)
    return left, right


@dataclass(frozen=True)
class CircleArc:
    """Circular arc from start_angle to end_angle around center.

    Angles are positions seen from the center; for a ccw arc the sweep is
    (end - start) mod 2*pi, with equal angles meaning the full circle.
    """

    center: Point
    radius: float
    start_angle: float
    end_angle: float
    orientation: str = "ccw"

    def __post_init__(self) -> None:
        if self.radius <= 0.0:
            raise GeometryError("arc radius must be positive")
        if self.orientation not in ("ccw", "cw"):
            raise GeometryError("orientation must be 'ccw' or 'cw'")

    @property
    def sweep(self) -> float:
        """Arc sweep in (0, 2*pi]."""
        if self.orientation == "ccw":
            d = (self.end_angle - self.start_angle) % TAU
        else:
            d = (self.start_angle - self.end_angle) % TAU
        return TAU if d == 0.0 else d

    @property
    def length(self) -> float:
        return self.sweep * self.radius

    def point_at(self, angle: float) -> Point:
        return self.center + from_polar(self.radius, angle)

    def start_point(self) -> Point:
        return self.point_at(self.start_angle)

    def end_point(self) -> Point:
        return self.point_at(self.end_angle)

    def tangent_at(self, angle: float) -> Point:
        """Unit tangent in the traversal direction at position ``angle``."""
        t = Point(-math.sin(angle), math.cos(angle))
        return t if self.orientation == "ccw" else -t

    def contains_angle(self, angle: float, tol: float = 1e-12) -> bool:
        if self.orientation == "ccw":
            d = (angle - self.start_angle) % TAU
        else:
            d = (self.start_angle - angle) % TAU
        return d <= self.sweep + tol or d >= TAU - tol

    def distance_to(self, p: Point) -> float:
        """Exact distance from p to the arc (not the full circle)."""
        if norm(p - self.center) < PARALLEL_EPS:
            return self.radius
        if self.contains_angle(angle_of(p - self.center)):
            return abs(dist(p, self.center) - self.radius)
        return min(dist(p, self.start_point()), dist(p, self.end_point()))
