"""Deterministic SVG rendering of a planned suture pass.

The drawing shows the tissue surfaces, the wound gap, desired and actual
pierce points, the full needle circle (dashed), the embedded tissue-side arc
(the single solid arc path), the needle center and a legend.  Output is a
pure function of the inputs: fixed canvas, fixed formatting, no timestamps,
so identical plans render byte-identical files.

Image mapping: world (mm, y up) to image (px, y down) via
X = (x - x_min) * scale + pad, Y = (y_max - y) * scale + pad.  The scale in
px/mm is exposed as a data-px-per-mm attribute on the root element.
"""

from __future__ import annotations

import math
from pathlib import Path

from .config import RunConfig
from .geometry import WoundFrame, arc_between, build_wound_frame
from .metrics import entry_exit_points
from .optimizer import Plan

CANVAS_W = 800.0
CANVAS_H = 620.0
PAD = 50.0

COL_SURFACE = "#7a5230"
COL_GAP = "#c0392b"
COL_CIRCLE = "#888888"
COL_ARC = "#1f6fb2"
COL_DESIRED = "#2c9e4b"
COL_ACTUAL = "#d35400"
COL_CENTER = "#333333"


def _fmt(v: float) -> str:
    return f"{v:.6f}"


def render_svg_text(config: RunConfig, plan: Plan) -> str:
    """Render the plan to an SVG document string."""
    frame = build_wound_frame(config.tissue)
    points = entry_exit_points(plan.needle, frame)
    if points is None:
        raise ValueError("plan does not cross the wound in this frame")
    entry, exit = points
    circle = plan.needle.circle
    arc = arc_between(circle, entry, exit)

    xs = [
        frame.desired_entry[0],
        frame.desired_exit[0],
        frame.left_edge[0],
        frame.right_edge[0],
        entry[0],
        exit[0],
        circle.center[0] - circle.radius,
        circle.center[0] + circle.radius,
    ]
    ys = [
        frame.desired_entry[1],
        frame.desired_exit[1],
        0.0,
        entry[1],
        exit[1],
        circle.center[1] - circle.radius,
        circle.center[1] + circle.radius,
    ]
    x_min, x_max = min(xs) - 3.0, max(xs) + 3.0
    y_min, y_max = min(ys) - 3.0, max(ys) + 3.0
    scale = min((CANVAS_W - 2 * PAD) / (x_max - x_min), (CANVAS_H - 2 * PAD) / (y_max - y_min))

    def im(p: tuple[float, float]) -> tuple[float, float]:
        return ((p[0] - x_min) * scale + PAD, (y_max - p[1]) * scale + PAD)

    def surface_end(surface, x_bound: float) -> tuple[float, float]:
        t = (x_bound - surface.origin[0]) / surface.direction[0]
        return surface.point_at(t)

    lines: list[str] = []
    lines.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(CANVAS_W)}" height="{_fmt(CANVAS_H)}" '
        f'viewBox="0 0 {_fmt(CANVAS_W)} {_fmt(CANVAS_H)}" data-px-per-mm="{_fmt(scale)}">'
    )
    lines.append(f'<rect x="0" y="0" width="{_fmt(CANVAS_W)}" height="{_fmt(CANVAS_H)}" fill="#ffffff"/>')

    # tissue boundary
    le = im(frame.left_edge)
    re = im(frame.right_edge)
    lend = im(surface_end(frame.left_surface, x_min))
    rend = im(surface_end(frame.right_surface, x_max))
    lines.append(
        f'<polyline id="surface-left" points="{_fmt(lend[0])},{_fmt(lend[1])} {_fmt(le[0])},{_fmt(le[1])}" '
        f'stroke="{COL_SURFACE}" stroke-width="2" fill="none"/>'
    )
    lines.append(
        f'<polyline id="surface-right" points="{_fmt(re[0])},{_fmt(re[1])} {_fmt(rend[0])},{_fmt(rend[1])}" '
        f'stroke="{COL_SURFACE}" stroke-width="2" fill="none"/>'
    )
    lines.append(
        f'<line id="wound-gap" x1="{_fmt(le[0])}" y1="{_fmt(le[1])}" x2="{_fmt(re[0])}" y2="{_fmt(re[1])}" '
        f'stroke="{COL_GAP}" stroke-width="3" stroke-dasharray="2 2"/>'
    )

    # needle circle (dashed) and embedded arc (the one solid arc path)
    c_im = im(circle.center)
    r_im = circle.radius * scale
    lines.append(
        f'<circle id="needle-circle" cx="{_fmt(c_im[0])}" cy="{_fmt(c_im[1])}" r="{_fmt(r_im)}" '
        f'stroke="{COL_CIRCLE}" stroke-width="1.5" stroke-dasharray="6 4" fill="none"/>'
    )
    e_im = im(entry)
    x_im = im(exit)
    large = 1 if arc.swept_angle > math.pi else 0
    sweep = 0 if arc.direction == "counterclockwise" else 1  # y-flip inverts handedness
    lines.append(
        f'<path id="embedded-arc" d="M {_fmt(e_im[0])} {_fmt(e_im[1])} '
        f'A {_fmt(r_im)} {_fmt(r_im)} 0 {large} {sweep} {_fmt(x_im[0])} {_fmt(x_im[1])}" '
        f'stroke="{COL_ARC}" stroke-width="3" fill="none"/>'
    )

    # needle center cross
    lines.append(f'<g id="needle-center" stroke="{COL_CENTER}" stroke-width="1.5">')
    lines.append(
        f'<line x1="{_fmt(c_im[0] - 5)}" y1="{_fmt(c_im[1])}" x2="{_fmt(c_im[0] + 5)}" y2="{_fmt(c_im[1])}"/>'
    )
    lines.append(
        f'<line x1="{_fmt(c_im[0])}" y1="{_fmt(c_im[1] - 5)}" x2="{_fmt(c_im[0])}" y2="{_fmt(c_im[1] + 5)}"/>'
    )
    lines.append("</g>")

    # desired and actual pierce markers
    for pid, p in (("desired-entry", frame.desired_entry), ("desired-exit", frame.desired_exit)):
        q = im(p)
        lines.append(
            f'<circle id="{pid}" class="marker-desired" cx="{_fmt(q[0])}" cy="{_fmt(q[1])}" r="5" '
            f'stroke="{COL_DESIRED}" stroke-width="2" fill="none"/>'
        )
    for pid, p in (("actual-entry", entry), ("actual-exit", exit)):
        q = im(p)
        lines.append(
            f'<circle id="{pid}" class="marker-actual" cx="{_fmt(q[0])}" cy="{_fmt(q[1])}" r="3.5" '
            f'fill="{COL_ACTUAL}"/>'
        )

    # legend
    rows = (
        (COL_SURFACE, "tissue surface"),
        (COL_GAP, "wound gap"),
        (COL_CIRCLE, "needle circle"),
        (COL_ARC, "embedded arc"),
        (COL_DESIRED, "desired pierce points"),
        (COL_ACTUAL, "actual pierce points"),
    )
    lines.append('<g id="legend" font-family="sans-serif" font-size="13">')
    for i, (color, label) in enumerate(rows):
        y = 20.0 + 18.0 * i
        lines.append(
            f'<line x1="12" y1="{_fmt(y - 4)}" x2="34" y2="{_fmt(y - 4)}" stroke="{color}" stroke-width="3"/>'
        )
        lines.append(f'<text x="40" y="{_fmt(y)}" fill="#222222">{label}</text>')
    lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def render_svg(config: RunConfig, plan: Plan, path: str | Path) -> None:
    """Write the plan drawing to `path` (byte-deterministic for fixed inputs)."""
    Path(path).write_bytes(render_svg_text(config, plan).encode("utf-8"))
