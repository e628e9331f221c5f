"""Geometric planning of constant-curvature suture passes.

The package models a wound cross section, scores candidate circular needles
by how closely their entry/exit geometry matches desired suturing practice,
searches a discrete catalog-aware grid for the best feasible needle pose,
and exports rotation-only insertion trajectories for the winning plan.
"""

from .config import ConfigError, RunConfig, format_shape, load_catalog, load_config, parse_shape
from .feasibility import FeasibilityReport, GraspPolicy, check_feasibility, grasp_margin_check
from .geometry import (
    ArcSegment,
    Circle,
    HalfLine,
    TissueGeometry,
    WoundFrame,
    arc_between,
    build_wound_frame,
    circle_halfline_intersections,
    transversal_pierces,
)
from .metrics import (
    NEEDLE_SHAPES,
    PARAMETER_NAMES,
    DesiredParameters,
    NeedleVariables,
    SutureParameters,
    compute_suture_parameters,
    entry_exit_angles,
    entry_exit_points,
    needle_depth,
    wound_symmetry,
)
from .optimizer import (
    CatalogEntry,
    CostBreakdown,
    NeedleCatalog,
    Plan,
    SearchSpace,
    Weights,
    enumerate_candidates,
    grid_values,
    match_catalog,
    normalize_deltas,
    optimize,
    raw_cost,
)
from .svg import render_svg, render_svg_text
from .trajectory import SwitchingPose, Waypoint, fcm_trajectory, switching_pose

__version__ = "0.1.0"

__all__ = [
    "ArcSegment",
    "CatalogEntry",
    "Circle",
    "ConfigError",
    "CostBreakdown",
    "DesiredParameters",
    "FeasibilityReport",
    "GraspPolicy",
    "HalfLine",
    "NEEDLE_SHAPES",
    "NeedleCatalog",
    "NeedleVariables",
    "PARAMETER_NAMES",
    "Plan",
    "RunConfig",
    "SearchSpace",
    "SutureParameters",
    "SwitchingPose",
    "TissueGeometry",
    "Waypoint",
    "Weights",
    "WoundFrame",
    "arc_between",
    "build_wound_frame",
    "check_feasibility",
    "circle_halfline_intersections",
    "compute_suture_parameters",
    "entry_exit_angles",
    "entry_exit_points",
    "enumerate_candidates",
    "fcm_trajectory",
    "format_shape",
    "grasp_margin_check",
    "grid_values",
    "load_catalog",
    "load_config",
    "match_catalog",
    "needle_depth",
    "normalize_deltas",
    "optimize",
    "parse_shape",
    "raw_cost",
    "render_svg",
    "render_svg_text",
    "switching_pose",
    "transversal_pierces",
    "wound_symmetry",
    "__version__",
]
