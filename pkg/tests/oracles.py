"""Slow independent reference implementations used to cross-check the package.

Everything here favors brute force over closed forms: dense sampling plus
bisection instead of quadratic roots, sampled arcs instead of angle algebra,
finite differences instead of analytic tangents, and a plain quadruple loop
instead of the package's cached search.  Tests compare the fast analytic
code against these.
"""

import math

import numpy as np

from suturepath import (
    NeedleVariables,
    Weights,
    build_wound_frame,
    check_feasibility,
    compute_suture_parameters,
)

TAU = 2.0 * math.pi


# ---------------------------------------------------------------------------
# intersections by scan + bisection
# ---------------------------------------------------------------------------


def halfline_circle_ts(circle, halfline, n=8192):
    """Ray parameters t >= 0 where |P(t) - center| = radius.

    Scans n points for sign changes of the squared-distance residual, then
    bisects each bracket down to full double precision.
    """
    cx, cy = circle.center
    ox, oy = halfline.origin
    dx, dy = halfline.direction
    r2 = circle.radius * circle.radius

    def g(t):
        x = ox + t * dx - cx
        y = oy + t * dy - cy
        return x * x + y * y - r2

    t_hi = math.hypot(ox - cx, oy - cy) + 4.0 * circle.radius + 10.0
    ts = np.linspace(0.0, t_hi, n)
    vals = (ts * dx + ox - cx) ** 2 + (ts * dy + oy - cy) ** 2 - r2
    roots = [float(ts[i]) for i in np.flatnonzero(vals == 0.0)]
    for i in np.flatnonzero(vals[:-1] * vals[1:] < 0.0):
        lo, hi = float(ts[i]), float(ts[i + 1])
        glo = g(lo)
        for _ in range(100):
            mid = 0.5 * (lo + hi)
            gm = g(mid)
            if glo * gm <= 0.0:
                hi = mid
            else:
                lo, glo = mid, gm
        roots.append(0.5 * (lo + hi))
    return sorted(roots)


def halfline_circle_points(circle, halfline, n=8192):
    return [halfline.point_at(t) for t in halfline_circle_ts(circle, halfline, n)]


# ---------------------------------------------------------------------------
# arcs by dense sampling
# ---------------------------------------------------------------------------


def tissue_side_arc(circle, p_a, p_b, n=65536):
    """(swept_angle, direction) of the arc from p_a to p_b through the lowest point.

    Decided by sampling both candidate arcs and picking the one that dips
    closer to the circle's global minimum y.  An exact tie (endpoint at the
    lowest point) resolves to the counterclockwise arc.
    """
    cx, cy = circle.center
    a = math.atan2(p_a[1] - cy, p_a[0] - cx)
    b = math.atan2(p_b[1] - cy, p_b[0] - cx)
    ccw = (b - a) % TAU
    f = np.linspace(0.0, 1.0, n)
    y_ccw = (cy + circle.radius * np.sin(a + ccw * f)).min()
    y_cw = (cy + circle.radius * np.sin(a - (TAU - ccw) * f)).min()
    if y_ccw <= y_cw:
        return ccw, "counterclockwise"
    return TAU - ccw, "clockwise"


def arc_points(circle, p_a, p_b, n=16384):
    """Dense samples along the tissue-side arc from p_a to p_b."""
    cx, cy = circle.center
    a = math.atan2(p_a[1] - cy, p_a[0] - cx)
    swept, direction = tissue_side_arc(circle, p_a, p_b)
    sign = 1.0 if direction == "counterclockwise" else -1.0
    phi = a + sign * swept * np.linspace(0.0, 1.0, n)
    return cx + circle.radius * np.cos(phi), cy + circle.radius * np.sin(phi)


def depth_from_chord(circle, entry, exit, n=16384):
    """Max distance of tissue-side arc points from the entry-exit chord line."""
    x, y = arc_points(circle, entry, exit, n)
    ex, ey = entry
    ux = exit[0] - ex
    uy = exit[1] - ey
    chord = math.hypot(ux, uy)
    return float(np.max(np.abs((x - ex) * uy - (y - ey) * ux)) / chord)


# ---------------------------------------------------------------------------
# crossing angle by finite differences
# ---------------------------------------------------------------------------


def _boundary_y(frame, x):
    """Tissue boundary height at x: surface lines outside, edge height in the gap."""
    if x <= frame.left_edge[0]:
        s = frame.left_surface
    elif x >= frame.right_edge[0]:
        s = frame.right_surface
    else:
        return 0.0
    return s.origin[1] + (x - s.origin[0]) * s.direction[1] / s.direction[0]


def crossing_angle(circle, frame, point, toward_wound, eps=1e-6):
    """Angle between the into-tissue needle tangent and toward_wound.

    The tangent comes from a central difference of the circle, oriented so a
    small step along it goes strictly below the tissue boundary.
    """
    cx, cy = circle.center
    phi = math.atan2(point[1] - cy, point[0] - cx)
    tx = math.cos(phi + eps) - math.cos(phi - eps)
    ty = math.sin(phi + eps) - math.sin(phi - eps)
    norm = math.hypot(tx, ty)
    tx, ty = tx / norm, ty / norm
    step = 1e-5 * max(1.0, circle.radius)
    probe = (point[0] + step * tx, point[1] + step * ty)
    if probe[1] >= _boundary_y(frame, probe[0]):
        tx, ty = -tx, -ty
    d = max(-1.0, min(1.0, tx * toward_wound[0] + ty * toward_wound[1]))
    return math.acos(d)


def suture_parameters(needle, frame):
    """All six parameters by sampling only; None without one pierce per side."""
    circle = needle.circle
    lts = halfline_circle_ts(circle, frame.left_surface)
    rts = halfline_circle_ts(circle, frame.right_surface)
    if len(lts) != 1 or len(rts) != 1:
        return None
    entry = frame.left_surface.point_at(lts[0])
    exit = frame.right_surface.point_at(rts[0])
    toward_left = (-frame.left_surface.direction[0], -frame.left_surface.direction[1])
    toward_right = (-frame.right_surface.direction[0], -frame.right_surface.direction[1])
    return (
        crossing_angle(circle, frame, entry, toward_left),
        math.hypot(entry[0] - frame.desired_entry[0], entry[1] - frame.desired_entry[1]),
        depth_from_chord(circle, entry, exit),
        abs(needle.center_x),
        crossing_angle(circle, frame, exit, toward_right),
        math.hypot(exit[0] - frame.desired_exit[0], exit[1] - frame.desired_exit[1]),
    )


def submerged_by_sampling(circle, entry, exit, frame, n=16384):
    """True when all interior tissue-side arc points are strictly below the boundary."""
    x, y = arc_points(circle, entry, exit, n)
    bound = np.array([_boundary_y(frame, xi) for xi in x[1:-1]])
    return bool(np.all(y[1:-1] < bound))


# ---------------------------------------------------------------------------
# desired bite points by bisection
# ---------------------------------------------------------------------------


def desired_points(frame):
    """Surface points straddling the wound at the bite distance, by bisection."""
    bite = frame.tissue.bite_distance

    def separation(t):
        lp = frame.left_surface.point_at(t)
        rp = frame.right_surface.point_at(t)
        return math.hypot(rp[0] - lp[0], rp[1] - lp[1]) - bite

    lo, hi = 0.0, bite + frame.tissue.wound_width + 10.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if separation(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    t = 0.5 * (lo + hi)
    return frame.left_surface.point_at(t), frame.right_surface.point_at(t)


# ---------------------------------------------------------------------------
# exhaustive search
# ---------------------------------------------------------------------------


def exhaustive_plan(tissue, desired, weights, space, policy, mode):
    """Reference optimizer: quadruple loop, no caching, own normalization.

    Returns None or a dict of the winning candidate's fields for comparison
    against a Plan.
    """
    frame = build_wound_frame(tissue)
    desired_t = desired.as_tuple()
    rows = []
    index = -1
    for an in space.shape_values():
        for dc in space.diameter_values():
            for x in space.center_x_values():
                for y in space.center_y_values():
                    index += 1
                    needle = NeedleVariables(x, y, dc, an)
                    report = check_feasibility(needle, frame, policy)
                    if not report.overall:
                        continue
                    params = compute_suture_parameters(needle, frame)
                    rows.append((index, needle, params, report))
    if not rows:
        return None

    deltas = [
        tuple(abs(a - d) for a, d in zip(row[2].as_tuple(), desired_t)) for row in rows
    ]
    if mode == "minmax":
        lows = [min(col) for col in zip(*deltas)]
        highs = [max(col) for col in zip(*deltas)]
        normalized = [
            tuple(
                0.0 if highs[i] == lows[i] else (d[i] - lows[i]) / (highs[i] - lows[i])
                for i in range(6)
            )
            for d in deltas
        ]
    else:
        scales = (
            math.pi / 2.0,
            tissue.bite_distance,
            tissue.bite_distance,
            tissue.bite_distance,
            math.pi / 2.0,
            tissue.bite_distance,
        )
        normalized = [
            tuple(min(1.0, max(0.0, d[i] / scales[i])) for i in range(6)) for d in deltas
        ]

    best_row = None
    best_score = math.inf
    for row, d, nd in zip(rows, deltas, normalized):
        score = sum(w * v for w, v in zip(weights.values, nd))
        if score < best_score:
            best_row = (row, d, nd, score)
            best_score = score
    (index, needle, params, report), d, nd, score = best_row
    return {
        "candidate_index": index,
        "needle": needle,
        "parameters": params.as_tuple(),
        "deltas": d,
        "raw_cost": sum(w * v for w, v in zip(weights.values, d)),
        "normalized_deltas": nd,
        "normalized_cost": score,
        "feasibility": report,
    }


def random_search_setup(rng):
    """A randomized (tissue, desired, weights, space, policy, mode) tuple.

    Grids are sized so the whole space stays at or below 10^4 candidates.
    """
    from suturepath import DesiredParameters, GraspPolicy, SearchSpace, TissueGeometry

    gamma = rng.uniform(0.6 * math.pi, math.pi) if rng.random() < 0.8 else math.pi
    width = rng.uniform(1.0, 8.0)
    bite = width + rng.uniform(3.0, 18.0)
    tissue = TissueGeometry(
        tissue_angle=gamma,
        wound_width=width,
        bite_distance=bite,
        slope_convention=rng.choice(["descending-away", "ascending-away"]),
    )

    overrides = {}
    if rng.random() < 0.3:
        overrides["depth"] = rng.uniform(0.3 * bite, 0.7 * bite)
    if rng.random() < 0.2:
        overrides["entry_angle"] = rng.uniform(1.2, 1.9)
        overrides["exit_angle"] = rng.uniform(1.2, 1.9)
    desired = DesiredParameters.for_bite_distance(bite, **overrides)

    values = [rng.uniform(0.1, 3.0) for _ in range(6)]
    if rng.random() < 0.3:
        values[rng.randrange(6)] = 0.0
    weights = Weights(tuple(values))

    nx = rng.randint(3, 9)
    ny = rng.randint(3, 9)
    x_step = rng.uniform(0.3, 1.5)
    y_step = rng.uniform(0.3, 1.5)
    x_lo = -0.5 * (nx - 1) * x_step + rng.uniform(-1.0, 1.0)
    y_lo = rng.uniform(-0.6 * bite, -0.1 * bite)
    n_dc = rng.randint(1, 3)
    diameters = tuple(sorted(rng.uniform(0.8 * bite, 2.2 * bite) for _ in range(n_dc)))
    all_shapes = (0.25, 0.375, 0.5, 0.625)
    shapes = tuple(sorted(rng.sample(all_shapes, rng.randint(1, 4))))
    space = SearchSpace(
        center_x_grid=(x_lo, x_lo + (nx - 1) * x_step, x_step),
        center_y_grid=(y_lo, y_lo + (ny - 1) * y_step, y_step),
        diameters=diameters,
        shapes=shapes,
    )

    policy = GraspPolicy(min_margin=rng.choice([0.0, math.pi / 18.0, math.pi / 12.0]))
    mode = rng.choice(["minmax", "fixed"])
    return tissue, desired, weights, space, policy, mode
