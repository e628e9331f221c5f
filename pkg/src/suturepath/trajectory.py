"""Rotation-only needle driving: the tip sweeps the tissue-side arc about a fixed center.

The needle center stays put; the body rotates about it, so the tip travels
along the needle circle.  Rotation angle 0 places the tip at the entry
pierce; the drive ends once the tip has passed the exit pierce by
margin_each_end, i.e. total rotation = embedded arc + margin, when the
trailing end still protrudes by the same margin at the entry side and the
instrument must regrasp.  The travel direction is the one taking the tip
through the tissue-side (lower) arc from entry to exit, which in the wound
frame is counterclockwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .feasibility import GraspPolicy, grasp_margin_check
from .geometry import Point, TAU, WoundFrame
from .metrics import entry_exit_points
from .optimizer import Plan

PHASE_APPROACH = "approach"  # reserved: trajectories start at tissue contact
PHASE_EMBEDDED = "embedded"
PHASE_EXITED = "exited"


@dataclass(frozen=True)
class Waypoint:
    tip_position: Point
    tip_heading: float  # direction of tip travel, radians in [-pi, pi)
    rotation_angle: float  # accumulated rotation since tip-at-entry
    phase: str


@dataclass(frozen=True)
class SwitchingPose:
    """Tip pose at the end of the drive; exited is False when the margin is zero."""

    waypoint: Waypoint
    exited: bool


def _wrap_angle(a: float) -> float:
    return (a + math.pi) % TAU - math.pi


def fcm_trajectory(
    plan: Plan, frame: WoundFrame, policy: GraspPolicy, n_waypoints: int
) -> list[Waypoint]:
    """Uniformly spaced waypoints of the tip from entry contact to drive end.

    Waypoints are spaced uniformly in rotation angle over
    [0, embedded + margin_each_end].  The phase is embedded until the tip
    passes the exit pierce, exited afterwards.  Requires a feasible plan
    under the given policy and n_waypoints >= 2.
    """
    if n_waypoints < 2:
        raise ValueError(f"n_waypoints must be >= 2, got {n_waypoints}")
    if not plan.feasibility.overall:
        raise ValueError("plan is not feasible")
    ok, margin = grasp_margin_check(plan.needle, plan.feasibility.embedded_arc_angle, policy)
    if not ok:
        raise ValueError("plan violates the grasp margin policy")

    points = entry_exit_points(plan.needle, frame)
    if points is None:
        raise ValueError("plan does not cross the wound in this frame")
    entry, _ = points
    circle = plan.needle.circle
    embedded = plan.feasibility.embedded_arc_angle
    total = embedded + margin
    phi0 = circle.angle_of(entry)

    waypoints = []
    last = n_waypoints - 1
    for i in range(n_waypoints):
        rot = total * (i / last)
        phi = phi0 + rot  # tissue-side travel is counterclockwise in the wound frame
        waypoints.append(
            Waypoint(
                tip_position=circle.point_at(phi),
                tip_heading=_wrap_angle(phi + math.pi / 2.0),
                rotation_angle=rot,
                phase=PHASE_EMBEDDED if rot <= embedded else PHASE_EXITED,
            )
        )
    return waypoints


def switching_pose(
    plan: Plan, frame: WoundFrame, policy: GraspPolicy, require_exit: bool = False
) -> SwitchingPose:
    """Final waypoint of the drive, where the instrument must regrasp.

    With margin_each_end = 0 the tip ends exactly at the exit pierce; that
    pose is returned with exited=False unless require_exit is set, in which
    case it is an error.
    """
    _, margin = grasp_margin_check(plan.needle, plan.feasibility.embedded_arc_angle, policy)
    if require_exit and margin <= 0.0:
        raise ValueError("zero grasp margin: no strictly-exited pose exists")
    final = fcm_trajectory(plan, frame, policy, 2)[-1]
    return SwitchingPose(waypoint=final, exited=margin > 0.0)
