"""Command line interface: plan a suture pass, evaluate a candidate, export a trajectory.

Commands
--------
plan --config FILE --out REPORT [--svg FILE] [--normalization minmax|fixed] [--workers N]
    Run the grid search and write a JSON report (and optionally an SVG
    drawing).  The report embeds the effective inputs, the winning needle,
    its six parameters, cost breakdown, feasibility report, catalog match,
    a desired/actual comparison table, and a side-by-side comparison with
    the bundled reference values.

eval --config FILE --s0 MM --l0 MM --dc MM --an FRACTION
    Evaluate a single candidate (center x, center y, diameter, arc fraction)
    against the configured wound and print its parameters and feasibility.

trajectory --config FILE --n COUNT --out FILE
    Plan, then export COUNT tip waypoints as CSV with columns
    index, x_mm, y_mm, heading_rad, rotation_rad, phase.

Exit codes: 0 success, 1 no feasible candidate, 2 invalid input.
All numbers in reports and tables are radians and millimetres.
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from pathlib import Path

from .config import ConfigError, RunConfig, format_shape, load_config, parse_shape
from .feasibility import check_feasibility
from .geometry import build_wound_frame
from .metrics import NeedleVariables, compute_suture_parameters
from .optimizer import NORMALIZATION_MODES, Plan, match_catalog, optimize
from .svg import render_svg
from .trajectory import fcm_trajectory

EXIT_OK = 0
EXIT_INFEASIBLE = 1
EXIT_INVALID = 2

REPORT_PARAMETER_KEYS = (
    "entry_angle_rad",
    "entry_error_mm",
    "depth_mm",
    "symmetry_offset_mm",
    "exit_angle_rad",
    "exit_error_mm",
)


def load_reference_values() -> dict:
    text = resources.files("suturepath").joinpath("data/reference_values.json").read_text()
    return json.loads(text)


def run_plan(config: RunConfig, normalization: str | None = None, workers: int = 1):
    """Optimize and assemble the JSON-ready report.  Returns (report, plan or None)."""
    mode = normalization if normalization is not None else config.normalization
    plan = optimize(
        config.tissue,
        config.desired,
        config.weights,
        config.space,
        config.policy,
        mode=mode,
        workers=workers,
    )
    inputs = config.echo()
    inputs["normalization"] = mode

    if plan is None:
        report = {
            "status": "no feasible candidate",
            "inputs": inputs,
            "plan": None,
            "comparison": None,
            "reference_comparison": None,
        }
        return report, None

    desired_values = config.desired.as_tuple()
    actual_values = plan.parameters.as_tuple()
    comparison = [
        {"parameter": key, "desired": d, "actual": a, "error": abs(a - d)}
        for key, d, a in zip(REPORT_PARAMETER_KEYS, desired_values, actual_values)
    ]

    reference = load_reference_values()
    reference_comparison = {
        "parameters": reference["parameters"],
        "desired": reference["desired"],
        "simulation": reference["simulation"],
        "experiment_mean": reference["experiment_mean"],
        "experiment_std": reference["experiment_std"],
        "planned": list(actual_values),
        "note": reference["description"],
    }

    catalog_match = None
    if config.catalog is not None:
        entry, residual = match_catalog(plan, config.catalog)
        catalog_match = {
            "name": entry.name,
            "shape": format_shape(entry.shape),
            "diameter_mm": entry.diameter,
            "diameter_residual_mm": residual,
        }

    report = {
        "status": "ok",
        "inputs": inputs,
        "plan": {
            "candidate_index": plan.candidate_index,
            "needle": {
                "center_x_mm": plan.needle.center_x,
                "center_y_mm": plan.needle.center_y,
                "diameter_mm": plan.needle.diameter,
                "shape": format_shape(plan.needle.shape),
            },
            "parameters": dict(zip(REPORT_PARAMETER_KEYS, actual_values)),
            "cost": {
                "deltas": list(plan.cost.deltas),
                "raw_cost": plan.cost.raw_cost,
                "normalized_deltas": list(plan.cost.normalized_deltas),
                "normalized_cost": plan.cost.normalized_cost,
            },
            "feasibility": {
                "bilateral_crossing": plan.feasibility.bilateral_crossing,
                "single_pierce_per_side": plan.feasibility.single_pierce_per_side,
                "submerged": plan.feasibility.submerged,
                "grasp_margin_ok": plan.feasibility.grasp_margin_ok,
                "depth_positive": plan.feasibility.depth_positive,
                "overall": plan.feasibility.overall,
                "embedded_arc_angle_rad": plan.feasibility.embedded_arc_angle,
                "margin_each_end_rad": plan.feasibility.margin_each_end,
            },
            "catalog_match": catalog_match,
        },
        "comparison": comparison,
        "reference_comparison": reference_comparison,
    }
    return report, plan


def write_report(report: dict, path: str | Path) -> None:
    Path(path).write_bytes((json.dumps(report, indent=2) + "\n").encode("utf-8"))


def export_trajectory(config: RunConfig, plan: Plan, n_waypoints: int, path: str | Path) -> None:
    """Write tip waypoints as CSV: index, x_mm, y_mm, heading_rad, rotation_rad, phase."""
    frame = build_wound_frame(config.tissue)
    waypoints = fcm_trajectory(plan, frame, config.policy, n_waypoints)
    rows = ["index,x_mm,y_mm,heading_rad,rotation_rad,phase"]
    for i, wp in enumerate(waypoints):
        rows.append(
            f"{i},{wp.tip_position[0]:.9f},{wp.tip_position[1]:.9f},"
            f"{wp.tip_heading:.9f},{wp.rotation_angle:.9f},{wp.phase}"
        )
    Path(path).write_bytes(("\n".join(rows) + "\n").encode("utf-8"))


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def _cmd_plan(args: argparse.Namespace) -> int:
    config = load_config(args.config)
    report, plan = run_plan(config, normalization=args.normalization, workers=args.workers)
    write_report(report, args.out)
    if plan is None:
        print("no feasible candidate")
        return EXIT_INFEASIBLE
    if args.svg:
        render_svg(config, plan, args.svg)
    print(
        f"planned needle: center=({plan.needle.center_x:.3f}, {plan.needle.center_y:.3f}) mm, "
        f"diameter={plan.needle.diameter:.2f} mm, shape={format_shape(plan.needle.shape)}, "
        f"normalized cost={plan.cost.normalized_cost:.6f}"
    )
    return EXIT_OK


def _cmd_eval(args: argparse.Namespace) -> int:
    config = load_config(args.config)
    try:
        needle = NeedleVariables(
            center_x=args.s0, center_y=args.l0, diameter=args.dc, shape=parse_shape(args.an, "--an")
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    frame = build_wound_frame(config.tissue)
    params = compute_suture_parameters(needle, frame)
    feas = check_feasibility(needle, frame, config.policy)

    if params is None:
        print("parameters: undefined (no single transversal pierce per side)")
    else:
        for key, value in zip(REPORT_PARAMETER_KEYS, params.as_tuple()):
            print(f"{key:<22s} {value:.9f}")
    for name in (
        "bilateral_crossing",
        "single_pierce_per_side",
        "submerged",
        "grasp_margin_ok",
        "depth_positive",
        "overall",
    ):
        print(f"{name:<22s} {str(getattr(feas, name)).lower()}")
    print(f"{'embedded_arc_angle_rad':<22s} {feas.embedded_arc_angle:.9f}")
    print(f"{'margin_each_end_rad':<22s} {feas.margin_each_end:.9f}")
    return EXIT_OK if feas.overall else EXIT_INFEASIBLE


def _cmd_trajectory(args: argparse.Namespace) -> int:
    config = load_config(args.config)
    if args.n < 2:
        raise ConfigError(f"--n must be >= 2, got {args.n}")
    report, plan = run_plan(config)
    if plan is None:
        print("no feasible candidate")
        return EXIT_INFEASIBLE
    export_trajectory(config, plan, args.n, args.out)
    print(f"wrote {args.n} waypoints to {args.out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="suturepath", description="Constant-curvature suture path planning."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_plan = sub.add_parser("plan", help="run the grid search and write a report")
    p_plan.add_argument("--config", required=True, help="JSON run configuration")
    p_plan.add_argument("--out", required=True, help="JSON report output path")
    p_plan.add_argument("--svg", help="optional SVG drawing output path")
    p_plan.add_argument(
        "--normalization", choices=NORMALIZATION_MODES, help="override the configured mode"
    )
    p_plan.add_argument("--workers", type=int, default=1, help="parallel evaluation processes")
    p_plan.set_defaults(func=_cmd_plan)

    p_eval = sub.add_parser("eval", help="evaluate a single candidate needle")
    p_eval.add_argument("--config", required=True)
    p_eval.add_argument("--s0", type=float, required=True, help="needle center x, mm")
    p_eval.add_argument("--l0", type=float, required=True, help="needle center y, mm")
    p_eval.add_argument("--dc", type=float, required=True, help="needle diameter, mm")
    p_eval.add_argument("--an", required=True, help="needle arc fraction, e.g. 1/2")
    p_eval.set_defaults(func=_cmd_eval)

    p_traj = sub.add_parser("trajectory", help="plan and export tip waypoints as CSV")
    p_traj.add_argument("--config", required=True)
    p_traj.add_argument("--n", type=int, required=True, help="number of waypoints (>= 2)")
    p_traj.add_argument("--out", required=True, help="CSV output path")
    p_traj.set_defaults(func=_cmd_trajectory)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    raise SystemExit(main())
