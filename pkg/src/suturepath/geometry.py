"""Planar geometry for a wound cross-section: tissue frame, half-lines, circles, arcs.

Coordinate conventions (the wound frame, used everywhere in this package):

  * origin at the wound centerline, at tissue-edge height
  * +y points up (out of the tissue), +x points toward the exit side
  * units are millimetres; angles are radians

The cross-section is mirror symmetric about x = 0.  The two tissue edges sit
at (-wound_width/2, 0) and (+wound_width/2, 0).  From each edge a surface
half-line runs away from the wound, sloped (pi - tissue_angle)/2 below the
horizontal under the default "descending-away" convention (a tent shape;
tissue_angle = pi means flat tissue).  "ascending-away" flips the slope sign
(a valley).  Tissue material lies below the surface half-lines and below
y = 0 inside the wound gap.

Desired bite points sit on the two surfaces, symmetric about the centerline,
separated by the prescribed bite distance measured edge to edge through the
wound, i.e. 2 * (wound_width/2 + t*cos(slope)) = bite_distance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

Point = tuple[float, float]

# On-circle / on-line acceptance tolerance, mm.
GEOMETRIC_TOL = 1e-9
# Quadratic discriminant below this is a tangential touch, not a pierce.
TANGENCY_TOL = 1e-12

SLOPE_CONVENTIONS = ("descending-away", "ascending-away")

TAU = 2.0 * math.pi


# ---------------------------------------------------------------------------
# types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TissueGeometry:
    """Scalar description of the wound cross-section.

    tissue_angle is the opening angle between the two tissue surfaces
    (pi = flat).  bite_distance is the desired entry-to-exit separation
    measured along the surfaces through the wound.
    """

    tissue_angle: float
    wound_width: float
    bite_distance: float
    slope_convention: str = "descending-away"

    def __post_init__(self) -> None:
        if not 0.0 < self.tissue_angle <= math.pi:
            raise ValueError(f"tissue_angle must be in (0, pi], got {self.tissue_angle}")
        if self.wound_width < 0.0:
            raise ValueError(f"wound_width must be >= 0, got {self.wound_width}")
        if self.bite_distance <= self.wound_width:
            raise ValueError(
                "bite_distance must exceed wound_width "
                f"(got bite_distance={self.bite_distance}, wound_width={self.wound_width})"
            )
        if self.slope_convention not in SLOPE_CONVENTIONS:
            raise ValueError(f"slope_convention must be one of {SLOPE_CONVENTIONS}")


@dataclass(frozen=True)
class HalfLine:
    """Ray from origin along a unit direction; parameter t >= 0 (origin included)."""

    origin: Point
    direction: Point

    def __post_init__(self) -> None:
        dx, dy = self.direction
        if abs(math.hypot(dx, dy) - 1.0) > 1e-12:
            raise ValueError("direction must be a unit vector")

    def point_at(self, t: float) -> Point:
        return (self.origin[0] + t * self.direction[0], self.origin[1] + t * self.direction[1])

    def parameter_of(self, p: Point) -> float:
        """Signed arc-length coordinate of p's projection onto the ray."""
        return (p[0] - self.origin[0]) * self.direction[0] + (p[1] - self.origin[1]) * self.direction[1]

    def offset_of(self, p: Point) -> float:
        """Signed perpendicular offset of p from the carrying line."""
        return (p[0] - self.origin[0]) * -self.direction[1] + (p[1] - self.origin[1]) * self.direction[0]


@dataclass(frozen=True)
class WoundFrame:
    """Fully constructed cross-section: edges, surface half-lines, desired bite points."""

    tissue: TissueGeometry
    left_edge: Point
    right_edge: Point
    left_surface: HalfLine
    right_surface: HalfLine
    desired_entry: Point
    desired_exit: Point

    @property
    def centerline_x(self) -> float:
        # wound centerline is the line x = 0 by construction
        return 0.0


@dataclass(frozen=True)
class Circle:
    center: Point
    radius: float

    def __post_init__(self) -> None:
        if not self.radius > 0.0:
            raise ValueError(f"radius must be > 0, got {self.radius}")

    def point_at(self, angle: float) -> Point:
        return (
            self.center[0] + self.radius * math.cos(angle),
            self.center[1] + self.radius * math.sin(angle),
        )

    def angle_of(self, p: Point) -> float:
        return math.atan2(p[1] - self.center[1], p[0] - self.center[0])

    def lowest_point(self) -> Point:
        return (self.center[0], self.center[1] - self.radius)


@dataclass(frozen=True)
class ArcSegment:
    """Directed arc on a circle; swept angle is strictly inside (0, 2*pi)."""

    circle: Circle
    start_angle: float
    end_angle: float
    direction: str  # "counterclockwise" | "clockwise"

    def __post_init__(self) -> None:
        if self.direction not in ("counterclockwise", "clockwise"):
            raise ValueError("direction must be 'counterclockwise' or 'clockwise'")
        if not 0.0 < self.swept_angle < TAU:
            raise ValueError(f"swept angle must be in (0, 2*pi), got {self.swept_angle}")

    @property
    def swept_angle(self) -> float:
        if self.direction == "counterclockwise":
            return (self.end_angle - self.start_angle) % TAU
        return (self.start_angle - self.end_angle) % TAU

    def angle_at_fraction(self, f: float) -> float:
        """Circle angle after sweeping fraction f in the arc's direction (f in [0, 1])."""
        sign = 1.0 if self.direction == "counterclockwise" else -1.0
        return self.start_angle + sign * f * self.swept_angle

    def point_at_fraction(self, f: float) -> Point:
        return self.circle.point_at(self.angle_at_fraction(f))

    @property
    def length(self) -> float:
        return self.circle.radius * self.swept_angle

    def contains_angle_strictly(self, angle: float) -> bool:
        """True when angle lies strictly inside the arc (endpoints excluded)."""
        if self.direction == "counterclockwise":
            rel = (angle - self.start_angle) % TAU
        else:
            rel = (self.start_angle - angle) % TAU
        return 1e-12 < rel < self.swept_angle - 1e-12


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------


def build_wound_frame(tissue: TissueGeometry) -> WoundFrame:
    """Construct the symmetric wound frame with desired bite points on the surfaces.

    The left side is computed, the right side is its exact mirror (x -> -x),
    so symmetric inputs stay symmetric to the last bit.
    """
    slope = (math.pi - tissue.tissue_angle) / 2.0  # angle below horizontal, in [0, pi/2)
    dir_y = -math.sin(slope) if tissue.slope_convention == "descending-away" else math.sin(slope)
    left_dir = (-math.cos(slope), dir_y)
    right_dir = (-left_dir[0], left_dir[1])

    half_w = tissue.wound_width / 2.0
    left_edge = (-half_w, 0.0)
    right_edge = (half_w, 0.0)

    # 2 * (wound_width/2 + t*cos(slope)) = bite_distance; cos(slope) > 0 always.
    t = (tissue.bite_distance - tissue.wound_width) / (2.0 * math.cos(slope))
    desired_entry = (left_edge[0] + t * left_dir[0], t * left_dir[1] + 0.0)  # +0.0 avoids -0.0
    desired_exit = (-desired_entry[0], desired_entry[1])

    return WoundFrame(
        tissue=tissue,
        left_edge=left_edge,
        right_edge=right_edge,
        left_surface=HalfLine(left_edge, left_dir),
        right_surface=HalfLine(right_edge, right_dir),
        desired_entry=desired_entry,
        desired_exit=desired_exit,
    )


def _halfline_hits(circle: Circle, halfline: HalfLine) -> tuple[list[float], bool]:
    """Ray parameters where the circle meets the half-line, plus a tangency flag.

    Solves |o + t*d - c|^2 = r^2 with unit d.  A discriminant below
    TANGENCY_TOL is a tangential touch (one double root).  Roots are kept
    when t >= -GEOMETRIC_TOL and returned in ascending order.
    """
    ox, oy = halfline.origin
    dx, dy = halfline.direction
    fx = ox - circle.center[0]
    fy = oy - circle.center[1]
    b = 2.0 * (dx * fx + dy * fy)
    c0 = fx * fx + fy * fy - circle.radius * circle.radius
    disc = b * b - 4.0 * c0

    if disc < -TANGENCY_TOL:
        return [], False
    if disc < TANGENCY_TOL:
        roots = [-b / 2.0]
        tangent = True
    else:
        s = math.sqrt(disc)
        roots = [(-b - s) / 2.0, (-b + s) / 2.0]
        tangent = False
    return [t for t in roots if t >= -GEOMETRIC_TOL], tangent


def circle_halfline_intersections(circle: Circle, halfline: HalfLine) -> list[Point]:
    """Intersection points of a circle with a half-line, sorted by ray parameter.

    Returns 0, 1 (including tangential touches) or 2 points.
    """
    ts, _ = _halfline_hits(circle, halfline)
    return [halfline.point_at(t) for t in ts]


def transversal_pierces(circle: Circle, halfline: HalfLine) -> list[Point]:
    """Like circle_halfline_intersections but excluding tangential touches.

    A tangential touch does not cross the surface, so it never counts as a
    pierce.
    """
    ts, tangent = _halfline_hits(circle, halfline)
    if tangent:
        return []
    return [halfline.point_at(t) for t in ts]


def _require_on_circle(circle: Circle, p: Point, name: str) -> None:
    d = math.hypot(p[0] - circle.center[0], p[1] - circle.center[1])
    if abs(d - circle.radius) > GEOMETRIC_TOL:
        raise ValueError(f"{name} is not on the circle (|distance - radius| = {abs(d - circle.radius):.3e})")


def arc_between(circle: Circle, p_a: Point, p_b: Point, side: str = "below-surface") -> ArcSegment:
    """Arc from p_a to p_b that passes through the circle's lowest point.

    This is the tissue-side arc: of the two arcs joining the points, the one
    containing (center_x, center_y - r).  Both points must lie on the circle
    and must be distinct.
    """
    if side != "below-surface":
        raise ValueError("side must be 'below-surface'")
    _require_on_circle(circle, p_a, "p_a")
    _require_on_circle(circle, p_b, "p_b")
    if math.hypot(p_b[0] - p_a[0], p_b[1] - p_a[1]) <= GEOMETRIC_TOL:
        raise ValueError("p_a and p_b must be distinct points")

    a = circle.angle_of(p_a)
    b = circle.angle_of(p_b)
    ccw_swept = (b - a) % TAU
    low_rel = (-math.pi / 2.0 - a) % TAU  # lowest point, relative to p_a going ccw
    # When the lowest point coincides with an endpoint the ccw arc is returned.
    if low_rel <= ccw_swept:
        return ArcSegment(circle, a, b, "counterclockwise")
    return ArcSegment(circle, a, b, "clockwise")
