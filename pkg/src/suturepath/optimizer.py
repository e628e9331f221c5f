"""Brute-force grid search for the best feasible needle pass.

Candidates are enumerated lexicographically: shape ascending, then diameter,
then center_x, then center_y, all ascending; the enumeration index is the
tie-breaker, so results are fully deterministic and independent of how the
evaluation work is split across processes.

Cost of a candidate: per-component absolute deviations of the six measured
parameters from their desired values (canonical order), combined as a
weighted sum.  The reported score normalizes each component to [0, 1] first,
either by min-max over the feasible set (default; a degenerate component
normalizes to 0) or by fixed scales (angles against pi/2, distances against
the bite distance, clamped).  Min-max normalization is a barrier: every
feasible candidate's deltas must exist before any score can be computed.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .feasibility import FeasibilityReport, GraspPolicy, check_feasibility, grasp_margin_check
from .geometry import TissueGeometry, WoundFrame, build_wound_frame
from .metrics import (
    ANGLE_COMPONENTS,
    NEEDLE_SHAPES,
    DesiredParameters,
    NeedleVariables,
    SutureParameters,
    compute_suture_parameters,
)

NORMALIZATION_MODES = ("minmax", "fixed")


# ---------------------------------------------------------------------------
# types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Weights:
    """Non-negative weight per parameter, canonical order; at least one positive."""

    values: tuple[float, float, float, float, float, float]

    def __post_init__(self) -> None:
        if len(self.values) != 6:
            raise ValueError("weights must have exactly 6 entries")
        if any(not math.isfinite(w) or w < 0.0 for w in self.values):
            raise ValueError("weights must be finite and >= 0")
        if not any(w > 0.0 for w in self.values):
            raise ValueError("at least one weight must be > 0")

    @classmethod
    def uniform(cls) -> "Weights":
        return cls((1.0, 1.0, 1.0, 1.0, 1.0, 1.0))


def grid_values(lo: float, hi: float, step: float) -> tuple[float, ...]:
    """Inclusive arithmetic grid lo, lo+step, ... <= hi (tolerant of float drift)."""
    if step <= 0.0:
        raise ValueError(f"grid step must be > 0, got {step}")
    if hi < lo:
        raise ValueError(f"grid upper bound {hi} is below lower bound {lo}")
    n = int(math.floor((hi - lo) / step + 1e-9)) + 1
    return tuple(lo + i * step for i in range(n))


@dataclass(frozen=True)
class SearchSpace:
    """Grids over center position plus explicit diameter and shape choices.

    Diameters come either from an explicit list (e.g. a needle catalog) or
    from an arithmetic range; exactly one of the two must be given.
    """

    center_x_grid: tuple[float, float, float]
    center_y_grid: tuple[float, float, float]
    diameters: tuple[float, ...] | None = None
    diameter_range: tuple[float, float, float] | None = None
    shapes: tuple[float, ...] = NEEDLE_SHAPES

    def __post_init__(self) -> None:
        if (self.diameters is None) == (self.diameter_range is None):
            raise ValueError("exactly one of diameters / diameter_range is required")
        for name, grid in (("center_x", self.center_x_grid), ("center_y", self.center_y_grid)):
            try:
                grid_values(*grid)
            except ValueError as exc:
                raise ValueError(f"{name} grid: {exc}") from None
        if self.diameters is not None:
            if not self.diameters:
                raise ValueError("diameters must not be empty")
            if any(d <= 0.0 for d in self.diameters):
                raise ValueError("diameters must be > 0")
        else:
            try:
                grid_values(*self.diameter_range)
            except ValueError as exc:
                raise ValueError(f"diameter grid: {exc}") from None
            if self.diameter_range[0] <= 0.0:
                raise ValueError("diameters must be > 0")
        if not self.shapes:
            raise ValueError("shapes must not be empty")
        for s in self.shapes:
            if s not in NEEDLE_SHAPES:
                raise ValueError(f"shape {s} is not one of {NEEDLE_SHAPES}")

    def center_x_values(self) -> tuple[float, ...]:
        return grid_values(*self.center_x_grid)

    def center_y_values(self) -> tuple[float, ...]:
        return grid_values(*self.center_y_grid)

    def diameter_values(self) -> tuple[float, ...]:
        if self.diameters is not None:
            return tuple(sorted(set(self.diameters)))
        return grid_values(*self.diameter_range)

    def shape_values(self) -> tuple[float, ...]:
        return tuple(sorted(set(self.shapes)))

    @property
    def size(self) -> int:
        return (
            len(self.shape_values())
            * len(self.diameter_values())
            * len(self.center_x_values())
            * len(self.center_y_values())
        )


@dataclass(frozen=True)
class CostBreakdown:
    """Per-component deviations and their weighted sums, raw and normalized."""

    deltas: tuple[float, float, float, float, float, float]
    raw_cost: float
    normalized_deltas: tuple[float, float, float, float, float, float] | None = None
    normalized_cost: float | None = None

    def __post_init__(self) -> None:
        if len(self.deltas) != 6:
            raise ValueError("deltas must have exactly 6 entries")
        if self.normalized_deltas is not None:
            if len(self.normalized_deltas) != 6:
                raise ValueError("normalized_deltas must have exactly 6 entries")
            if any(not 0.0 <= d <= 1.0 for d in self.normalized_deltas):
                raise ValueError("normalized deltas must lie in [0, 1]")


@dataclass(frozen=True)
class Plan:
    """A feasible winning candidate with its full evaluation."""

    needle: NeedleVariables
    parameters: SutureParameters
    cost: CostBreakdown
    feasibility: FeasibilityReport
    candidate_index: int

    def __post_init__(self) -> None:
        if not self.feasibility.overall:
            raise ValueError("a Plan requires a feasible candidate")
        if self.candidate_index < 0:
            raise ValueError("candidate_index must be >= 0")


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    shape: float
    diameter: float

    def __post_init__(self) -> None:
        if self.shape not in NEEDLE_SHAPES:
            raise ValueError(f"catalog shape {self.shape} is not one of {NEEDLE_SHAPES}")
        if self.diameter <= 0.0:
            raise ValueError(f"catalog diameter must be > 0, got {self.diameter}")


@dataclass(frozen=True)
class NeedleCatalog:
    entries: tuple[CatalogEntry, ...]

    def __post_init__(self) -> None:
        if not self.entries:
            raise ValueError("catalog must not be empty")
        names = [e.name for e in self.entries]
        if len(set(names)) != len(names):
            raise ValueError("catalog names must be unique")


# ---------------------------------------------------------------------------
# cost
# ---------------------------------------------------------------------------


def raw_cost(actual: SutureParameters, desired: DesiredParameters, weights: Weights) -> CostBreakdown:
    """Absolute per-component deviations and their weighted sum (unnormalized)."""
    deltas = tuple(abs(a - d) for a, d in zip(actual.as_tuple(), desired.as_tuple()))
    return CostBreakdown(deltas=deltas, raw_cost=weighted_sum(weights, deltas))


def weighted_sum(weights: Weights, values) -> float:
    """Plain left-to-right weighted sum in canonical component order."""
    total = 0.0
    for w, v in zip(weights.values, values):
        total += w * v
    return total


def normalize_deltas(deltas_list, mode: str = "minmax", bite_distance: float | None = None):
    """Map each component of each delta tuple into [0, 1].

    minmax: per component over the given set, (d - min) / (max - min) with a
    degenerate component (max == min) mapping to 0.  fixed: angles divided by
    pi/2 and distances by bite_distance, clamped to [0, 1].
    """
    deltas_list = list(deltas_list)
    if mode == "minmax":
        if not deltas_list:
            raise ValueError("minmax normalization needs at least one delta tuple")
        mins = [min(d[i] for d in deltas_list) for i in range(6)]
        maxs = [max(d[i] for d in deltas_list) for i in range(6)]
        widths = [mx - mn for mn, mx in zip(mins, maxs)]
        return [
            tuple(0.0 if widths[i] == 0.0 else (d[i] - mins[i]) / widths[i] for i in range(6))
            for d in deltas_list
        ]
    if mode == "fixed":
        if bite_distance is None or bite_distance <= 0.0:
            raise ValueError("fixed normalization needs a positive bite_distance")
        half_pi = math.pi / 2.0
        scales = [half_pi if i in ANGLE_COMPONENTS else bite_distance for i in range(6)]
        return [
            tuple(min(1.0, max(0.0, d[i] / scales[i])) for i in range(6)) for d in deltas_list
        ]
    raise ValueError(f"normalization mode must be one of {NORMALIZATION_MODES}")


# ---------------------------------------------------------------------------
# search
# ---------------------------------------------------------------------------


def enumerate_candidates(space: SearchSpace) -> list[NeedleVariables]:
    """All candidates in deterministic order: shape, diameter, center_x, center_y."""
    return [
        NeedleVariables(x, y, dc, an)
        for an in space.shape_values()
        for dc in space.diameter_values()
        for x in space.center_x_values()
        for y in space.center_y_values()
    ]


@dataclass(frozen=True)
class _EvalContext:
    frame: WoundFrame
    policy: GraspPolicy
    desired: tuple[float, float, float, float, float, float]
    x_values: tuple[float, ...]
    y_values: tuple[float, ...]
    dc_values: tuple[float, ...]
    shapes: tuple[float, ...]


def _eval_cells(ctx: _EvalContext, cells: list[tuple[int, int]]):
    """Evaluate all candidates for the given (diameter index, center_x index) cells.

    Geometry is shared across shapes: the six parameters, the embedded arc
    and submersion do not depend on the shape, only the grasp margin does.
    Returns feasible candidates as (index, needle, parameters, report, deltas).
    """
    n_dc = len(ctx.dc_values)
    n_x = len(ctx.x_values)
    n_y = len(ctx.y_values)
    out = []
    for i_dc, i_x in cells:
        dc = ctx.dc_values[i_dc]
        x = ctx.x_values[i_x]
        for i_y, y in enumerate(ctx.y_values):
            probe = NeedleVariables(x, y, dc, ctx.shapes[0])
            report0 = check_feasibility(probe, ctx.frame, ctx.policy)
            if not (
                report0.single_pierce_per_side and report0.submerged and report0.depth_positive
            ):
                continue
            params = compute_suture_parameters(probe, ctx.frame)
            if params is None:  # defensive; single transversal pierces imply parameters
                continue
            deltas = tuple(abs(a - d) for a, d in zip(params.as_tuple(), ctx.desired))
            for i_an, an in enumerate(ctx.shapes):
                needle = NeedleVariables(x, y, dc, an)
                ok, margin = grasp_margin_check(needle, report0.embedded_arc_angle, ctx.policy)
                if not ok:
                    continue
                report = FeasibilityReport(
                    bilateral_crossing=True,
                    single_pierce_per_side=True,
                    submerged=True,
                    grasp_margin_ok=True,
                    depth_positive=True,
                    overall=True,
                    embedded_arc_angle=report0.embedded_arc_angle,
                    margin_each_end=margin,
                )
                index = ((i_an * n_dc + i_dc) * n_x + i_x) * n_y + i_y
                out.append((index, needle, params, report, deltas))
    return out


def optimize(
    tissue: TissueGeometry,
    desired: DesiredParameters,
    weights: Weights,
    space: SearchSpace,
    policy: GraspPolicy,
    mode: str = "minmax",
    workers: int = 1,
) -> Plan | None:
    """Exhaustively score the search space; None when nothing is feasible.

    The winner minimizes the normalized weighted cost; exact ties go to the
    smallest enumeration index.  `workers` > 1 splits candidate evaluation
    across processes; the result is identical to the sequential one because
    every candidate is evaluated independently and the reduction is keyed by
    enumeration index.
    """
    if mode not in NORMALIZATION_MODES:
        raise ValueError(f"normalization mode must be one of {NORMALIZATION_MODES}")
    if workers < 1:
        raise ValueError("workers must be >= 1")
    frame = build_wound_frame(tissue)
    ctx = _EvalContext(
        frame=frame,
        policy=policy,
        desired=desired.as_tuple(),
        x_values=space.center_x_values(),
        y_values=space.center_y_values(),
        dc_values=space.diameter_values(),
        shapes=space.shape_values(),
    )
    cells = [(i_dc, i_x) for i_dc in range(len(ctx.dc_values)) for i_x in range(len(ctx.x_values))]

    if workers == 1 or len(cells) < 2:
        feasible = _eval_cells(ctx, cells)
    else:
        n_chunks = min(len(cells), workers * 4)
        chunks = [cells[i::n_chunks] for i in range(n_chunks)]
        feasible = []
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(_eval_cells, [ctx] * len(chunks), chunks):
                feasible.extend(part)

    feasible.sort(key=lambda item: item[0])
    if not feasible:
        return None

    normalized = normalize_deltas(
        [item[4] for item in feasible], mode=mode, bite_distance=tissue.bite_distance
    )
    best = None
    best_score = math.inf
    for item, nd in zip(feasible, normalized):
        score = weighted_sum(weights, nd)
        if score < best_score:
            best = (item, nd, score)
            best_score = score
    (index, needle, params, report, deltas), nd, score = best
    cost = CostBreakdown(
        deltas=deltas,
        raw_cost=weighted_sum(weights, deltas),
        normalized_deltas=nd,
        normalized_cost=score,
    )
    return Plan(
        needle=needle, parameters=params, cost=cost, feasibility=report, candidate_index=index
    )


def match_catalog(plan: Plan, catalog: NeedleCatalog) -> tuple[CatalogEntry, float]:
    """Closest catalog needle of the plan's shape and the diameter residual.

    The shape must match exactly; among those entries the nearest diameter
    wins, ties going to the smaller diameter.
    """
    same_shape = [e for e in catalog.entries if e.shape == plan.needle.shape]
    if not same_shape:
        raise ValueError(f"catalog has no entry with shape {plan.needle.shape}")
    best = min(same_shape, key=lambda e: (abs(e.diameter - plan.needle.diameter), e.diameter))
    return best, abs(best.diameter - plan.needle.diameter)
