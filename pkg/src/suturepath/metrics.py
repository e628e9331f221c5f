"""Suture quality metrics: where a circular needle crosses the tissue and how well.

A needle is a circle of diameter `diameter` centered at (center_x, center_y)
in the wound frame, of which only the fraction `shape` (1/4, 3/8, 1/2 or 5/8
of the full circumference) physically exists.  The six quality parameters,
always in this order:

  entry_angle      angle between needle and left surface at the entry pierce
  entry_error      distance from the actual to the desired entry point
  depth            perpendicular distance from the entry-exit chord to the
                   deepest point of the tissue-side arc
  symmetry_offset  |center_x|, lateral offset of the needle center from the
                   wound centerline
  exit_angle       like entry_angle, on the right surface
  exit_error       like entry_error, for the exit point

Angles are measured between the needle tangent pointing into the tissue and
the surface direction pointing toward the wound (equivalently: the
protruding needle tangent against the surface direction away from the
wound).  On flat tissue with the needle center a height c above the surface
this gives arccos(c / r).  A perpendicular pass is pi/2; values are in the
open interval (0, pi).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .geometry import (
    GEOMETRIC_TOL,
    ArcSegment,
    Circle,
    HalfLine,
    Point,
    WoundFrame,
    arc_between,
    transversal_pierces,
)

# Arc fractions of commercially available needle bodies.
NEEDLE_SHAPES = (0.25, 0.375, 0.5, 0.625)

PARAMETER_NAMES = (
    "entry_angle",
    "entry_error",
    "depth",
    "symmetry_offset",
    "exit_angle",
    "exit_error",
)

# Indices of angle-valued components within the canonical order.
ANGLE_COMPONENTS = (0, 4)


@dataclass(frozen=True)
class NeedleVariables:
    """Decision variables of the planner: center position, diameter, arc fraction."""

    center_x: float
    center_y: float
    diameter: float
    shape: float

    def __post_init__(self) -> None:
        if not self.diameter > 0.0:
            raise ValueError(f"diameter must be > 0, got {self.diameter}")
        if self.shape not in NEEDLE_SHAPES:
            raise ValueError(f"shape must be one of {NEEDLE_SHAPES}, got {self.shape}")

    @property
    def circle(self) -> Circle:
        return Circle((self.center_x, self.center_y), self.diameter / 2.0)

    @property
    def arc_angle(self) -> float:
        """Total angular extent of the physical needle body."""
        return math.tau * self.shape


def _validated_six(obj) -> None:
    for name in ("entry_angle", "exit_angle"):
        v = getattr(obj, name)
        if not 0.0 < v < math.pi:
            raise ValueError(f"{name} must be in (0, pi), got {v}")
    for name in ("entry_error", "exit_error", "symmetry_offset"):
        v = getattr(obj, name)
        if not v >= 0.0:
            raise ValueError(f"{name} must be >= 0, got {v}")
    for name in PARAMETER_NAMES:
        if not math.isfinite(getattr(obj, name)):
            raise ValueError(f"{name} must be finite")


@dataclass(frozen=True)
class SutureParameters:
    """The six measured suture quality parameters, canonical order as listed."""

    entry_angle: float
    entry_error: float
    depth: float
    symmetry_offset: float
    exit_angle: float
    exit_error: float

    def __post_init__(self) -> None:
        _validated_six(self)

    def as_tuple(self) -> tuple[float, float, float, float, float, float]:
        return (
            self.entry_angle,
            self.entry_error,
            self.depth,
            self.symmetry_offset,
            self.exit_angle,
            self.exit_error,
        )


@dataclass(frozen=True)
class DesiredParameters:
    """Target values for the six parameters.

    Defaults encode the textbook ideal: perpendicular passes, zero placement
    error, centered needle, depth of half the bite distance.  Build with
    ``DesiredParameters.for_bite_distance(bite)`` and override as needed.
    """

    entry_angle: float
    entry_error: float
    depth: float
    symmetry_offset: float
    exit_angle: float
    exit_error: float

    def __post_init__(self) -> None:
        _validated_six(self)

    @classmethod
    def for_bite_distance(cls, bite_distance: float, **overrides: float) -> "DesiredParameters":
        base = cls(
            entry_angle=math.pi / 2.0,
            entry_error=0.0,
            depth=bite_distance / 2.0,
            symmetry_offset=0.0,
            exit_angle=math.pi / 2.0,
            exit_error=0.0,
        )
        return replace(base, **overrides) if overrides else base

    def as_tuple(self) -> tuple[float, float, float, float, float, float]:
        return (
            self.entry_angle,
            self.entry_error,
            self.depth,
            self.symmetry_offset,
            self.exit_angle,
            self.exit_error,
        )


# ---------------------------------------------------------------------------
# crossing geometry
# ---------------------------------------------------------------------------


def entry_exit_points(needle: NeedleVariables, frame: WoundFrame) -> tuple[Point, Point] | None:
    """The unique pierce points on the left and right surfaces.

    Returns None unless the needle circle crosses each surface half-line
    exactly once transversally (0 or 2 pierces on a side, or a tangential
    touch, leave the crossing ill-defined).  Independent of `shape`.
    """
    circle = needle.circle
    left = transversal_pierces(circle, frame.left_surface)
    right = transversal_pierces(circle, frame.right_surface)
    if len(left) != 1 or len(right) != 1:
        return None
    return left[0], right[0]


def _into_tissue_tangent(circle: Circle, surface: HalfLine, point: Point) -> Point:
    """Unit needle tangent at `point`, oriented into the tissue below `surface`."""
    vx = point[0] - circle.center[0]
    vy = point[1] - circle.center[1]
    tx, ty = -vy / circle.radius, vx / circle.radius
    # inward surface normal: the perpendicular with negative y (tissue is below);
    # surfaces are never vertical, so the choice is well defined
    nx, ny = -surface.direction[1], surface.direction[0]
    if ny > 0.0:
        nx, ny = -nx, -ny
    s = tx * nx + ty * ny
    if abs(s) < 1e-12:
        raise ValueError("tangential crossing: needle angle would be 0 or pi")
    if s > 0.0:
        return (tx, ty)
    return (-tx, -ty)


def _crossing_angle(circle: Circle, surface: HalfLine, point: Point, toward_wound: Point) -> float:
    _require_near_circle(circle, point)
    t = _into_tissue_tangent(circle, surface, point)
    d = max(-1.0, min(1.0, t[0] * toward_wound[0] + t[1] * toward_wound[1]))
    return math.acos(d)


def _require_near_circle(circle: Circle, p: Point) -> None:
    d = math.hypot(p[0] - circle.center[0], p[1] - circle.center[1])
    if abs(d - circle.radius) > GEOMETRIC_TOL:
        raise ValueError("point is not on the needle circle")


def entry_exit_angles(
    needle: NeedleVariables, frame: WoundFrame, entry: Point, exit: Point
) -> tuple[float, float]:
    """(entry_angle, exit_angle) at the given pierce points.

    Raises ValueError for tangential crossings or points off the circle.
    """
    circle = needle.circle
    toward_left = (-frame.left_surface.direction[0], -frame.left_surface.direction[1])
    toward_right = (-frame.right_surface.direction[0], -frame.right_surface.direction[1])
    beta_in = _crossing_angle(circle, frame.left_surface, entry, toward_left)
    beta_out = _crossing_angle(circle, frame.right_surface, exit, toward_right)
    return beta_in, beta_out


def needle_depth(arc: ArcSegment, entry: Point, exit: Point) -> float:
    """Perpendicular distance from the entry-exit chord to the arc's deepest point.

    Equals r - c where c is the signed distance of the circle center from the
    chord, measured away from the arc's bulge side.
    """
    dx = exit[0] - entry[0]
    dy = exit[1] - entry[1]
    chord = math.hypot(dx, dy)
    if chord <= GEOMETRIC_TOL:
        raise ValueError("entry and exit must be distinct")
    for p, name in ((entry, "entry"), (exit, "exit")):
        sa = arc.circle.point_at(arc.start_angle)
        ea = arc.circle.point_at(arc.end_angle)
        if (
            math.hypot(p[0] - sa[0], p[1] - sa[1]) > GEOMETRIC_TOL
            and math.hypot(p[0] - ea[0], p[1] - ea[1]) > GEOMETRIC_TOL
        ):
            raise ValueError(f"arc does not pass through {name}")
    ux, uy = dx / chord, dy / chord
    nx, ny = uy, -ux
    mid = arc.point_at_fraction(0.5)
    if (mid[0] - entry[0]) * nx + (mid[1] - entry[1]) * ny < 0.0:
        nx, ny = -nx, -ny
    c = arc.circle.center
    return arc.circle.radius + (c[0] - entry[0]) * nx + (c[1] - entry[1]) * ny


def wound_symmetry(needle: NeedleVariables, frame: WoundFrame) -> float:
    """Lateral offset of the needle center from the wound centerline."""
    return abs(needle.center_x - frame.centerline_x)


def compute_suture_parameters(needle: NeedleVariables, frame: WoundFrame) -> SutureParameters | None:
    """All six parameters for a candidate needle, or None without a clean crossing.

    None when either surface is pierced zero or two times, or only touched
    tangentially.  The result does not depend on `shape`.
    """
    points = entry_exit_points(needle, frame)
    if points is None:
        return None
    entry, exit = points
    try:
        beta_in, beta_out = entry_exit_angles(needle, frame, entry, exit)
    except ValueError:
        return None  # tangential touch: no defined crossing
    arc = arc_between(needle.circle, entry, exit)
    return SutureParameters(
        entry_angle=beta_in,
        entry_error=math.hypot(entry[0] - frame.desired_entry[0], entry[1] - frame.desired_entry[1]),
        depth=needle_depth(arc, entry, exit),
        symmetry_offset=wound_symmetry(needle, frame),
        exit_angle=beta_out,
        exit_error=math.hypot(exit[0] - frame.desired_exit[0], exit[1] - frame.desired_exit[1]),
    )
