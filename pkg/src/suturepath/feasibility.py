"""Feasibility screening for candidate needle passes.

A candidate is workable only when all of these hold:

  bilateral_crossing     the circle pierces the left and the right surface
  single_pierce_per_side exactly one transversal pierce on each surface
  submerged              the embedded arc stays strictly below the tissue
                         boundary between entry and exit
  grasp_margin_ok        the needle body is long enough to protrude past
                         both pierce points by the policy margin
  depth_positive         the measured depth is positive

`embedded_arc_angle` is the swept angle of the tissue-side arc between the
pierce points; `margin_each_end` is the spare needle arc beyond the embedded
portion, split evenly between the two ends (negative when the needle is too
short).  Submersion is tested by sampling the arc interior at 0.1 mm
arc-length resolution plus an exact check against the wound-gap chord.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import ArcSegment, WoundFrame, arc_between, transversal_pierces
from .metrics import NeedleVariables, needle_depth

# Arc-length spacing of submersion samples, mm.  Well below any needle radius
# in scope, so grazing violations larger than the sample spacing cannot hide.
SUBMERSION_STEP = 0.1


@dataclass(frozen=True)
class GraspPolicy:
    """How much free needle arc must remain past each pierce at switching time."""

    min_margin: float = math.pi / 18.0

    def __post_init__(self) -> None:
        if self.min_margin < 0.0:
            raise ValueError(f"min_margin must be >= 0, got {self.min_margin}")


@dataclass(frozen=True)
class FeasibilityReport:
    bilateral_crossing: bool
    single_pierce_per_side: bool
    submerged: bool
    grasp_margin_ok: bool
    depth_positive: bool
    overall: bool
    embedded_arc_angle: float
    margin_each_end: float


def grasp_margin_check(
    needle: NeedleVariables, embedded_arc_angle: float, policy: GraspPolicy
) -> tuple[bool, float]:
    """(ok, margin_each_end) for a needle spanning `embedded_arc_angle` of tissue.

    ok requires needle arc >= embedded + 2 * min_margin; the boundary case
    passes.  margin_each_end = (needle arc - embedded) / 2, reported even
    when negative.
    """
    total = needle.arc_angle
    margin = (total - embedded_arc_angle) / 2.0
    ok = total >= embedded_arc_angle + 2.0 * policy.min_margin
    return ok, margin


def _boundary_height(x: np.ndarray, frame: WoundFrame) -> np.ndarray:
    """Tissue boundary height over x: surfaces outside the edges, y=0 in the gap."""
    lx = frame.left_edge[0]
    rx = frame.right_edge[0]
    ldir = frame.left_surface.direction
    rdir = frame.right_surface.direction
    left_y = (x - lx) * (ldir[1] / ldir[0])
    right_y = (x - rx) * (rdir[1] / rdir[0])
    return np.where(x < lx, left_y, np.where(x > rx, right_y, 0.0))


def _gap_chord_clear(arc: ArcSegment, frame: WoundFrame) -> bool:
    """Exact check: the arc interior never reaches y = 0 inside the wound gap."""
    cx, cy = arc.circle.center
    r = arc.circle.radius
    under = r * r - cy * cy
    if under < 0.0:
        return True
    half_gap = frame.tissue.wound_width / 2.0
    s = math.sqrt(under)
    for x0 in (cx - s, cx + s):
        if -half_gap < x0 < half_gap:
            if arc.contains_angle_strictly(math.atan2(-cy, x0 - cx)):
                return False
    return True


def _is_submerged(arc: ArcSegment, frame: WoundFrame) -> bool:
    """Every interior point of the arc lies strictly below the tissue boundary."""
    if not _gap_chord_clear(arc, frame):
        return False
    n = max(2, math.ceil(arc.length / SUBMERSION_STEP))
    f = np.linspace(0.0, 1.0, n + 1)[1:-1]  # interior samples only
    sign = 1.0 if arc.direction == "counterclockwise" else -1.0
    phi = arc.start_angle + sign * f * arc.swept_angle
    x = arc.circle.center[0] + arc.circle.radius * np.cos(phi)
    y = arc.circle.center[1] + arc.circle.radius * np.sin(phi)
    return bool(np.all(y < _boundary_height(x, frame)))


def check_feasibility(
    needle: NeedleVariables, frame: WoundFrame, policy: GraspPolicy
) -> FeasibilityReport:
    """Evaluate all feasibility flags; overall is their conjunction.

    Without a unique transversal pierce on each side the arc-dependent fields
    are reported as 0.0 and the dependent flags as False.
    """
    circle = needle.circle
    left = transversal_pierces(circle, frame.left_surface)
    right = transversal_pierces(circle, frame.right_surface)
    bilateral = len(left) >= 1 and len(right) >= 1
    single = len(left) == 1 and len(right) == 1
    if not single:
        return FeasibilityReport(
            bilateral_crossing=bilateral,
            single_pierce_per_side=False,
            submerged=False,
            grasp_margin_ok=False,
            depth_positive=False,
            overall=False,
            embedded_arc_angle=0.0,
            margin_each_end=0.0,
        )

    entry, exit = left[0], right[0]
    arc = arc_between(circle, entry, exit)
    embedded = arc.swept_angle
    grasp_ok, margin = grasp_margin_check(needle, embedded, policy)
    submerged = _is_submerged(arc, frame)
    depth_ok = needle_depth(arc, entry, exit) > 0.0
    overall = bilateral and single and submerged and grasp_ok and depth_ok
    return FeasibilityReport(
        bilateral_crossing=bilateral,
        single_pierce_per_side=single,
        submerged=submerged,
        grasp_margin_ok=grasp_ok,
        depth_positive=depth_ok,
        overall=overall,
        embedded_arc_angle=embedded,
        margin_each_end=margin,
    )
