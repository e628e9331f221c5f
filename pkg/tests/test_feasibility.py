"""Feasibility flags: crossing counts, submersion, grasp margin, depth."""

import math
import random

import pytest

import oracles
from suturepath import (
    GraspPolicy,
    NeedleVariables,
    TissueGeometry,
    build_wound_frame,
    check_feasibility,
    entry_exit_points,
    grasp_margin_check,
)

FLAT = TissueGeometry(tissue_angle=math.pi, wound_width=4.0, bite_distance=16.0)
SLOPED = TissueGeometry(tissue_angle=4.0 * math.pi / 5.0, wound_width=5.5, bite_distance=16.0)
DEFAULT_MARGIN = math.pi / 18.0


class TestGraspPolicy:
    def test_default_margin(self):
        assert GraspPolicy().min_margin == DEFAULT_MARGIN

    def test_rejects_negative_margin(self):
        with pytest.raises(ValueError, match="min_margin"):
            GraspPolicy(min_margin=-0.01)


class TestGraspMarginCheck:
    def test_margin_is_half_the_free_arc(self):
        needle = NeedleVariables(0.0, 0.0, 16.0, 0.5)
        ok, margin = grasp_margin_check(needle, 2.0, GraspPolicy(min_margin=DEFAULT_MARGIN))
        assert ok
        assert margin == (math.pi - 2.0) / 2.0

    def test_exact_policy_boundary_passes(self):
        # total arc exactly equals embedded + 2 * min_margin
        needle = NeedleVariables(0.0, 0.0, 16.0, 0.5)
        embedded = math.pi - 2.0 * DEFAULT_MARGIN
        ok, margin = grasp_margin_check(needle, embedded, GraspPolicy(DEFAULT_MARGIN))
        assert ok
        assert margin == pytest.approx(DEFAULT_MARGIN, abs=1e-15)

    def test_embedded_beyond_needle_arc_fails(self):
        needle = NeedleVariables(0.0, 0.0, 16.0, 0.5)
        ok, margin = grasp_margin_check(needle, 3.3, GraspPolicy(min_margin=0.0))
        assert not ok
        assert margin < 0.0  # reported even when negative

    def test_five_eighths_circle_margin_on_half_turn(self):
        needle = NeedleVariables(0.0, 0.0, 16.0, 0.625)
        ok, margin = grasp_margin_check(needle, math.pi, GraspPolicy(DEFAULT_MARGIN))
        assert ok
        assert margin == math.pi * 0.125


class TestCheckFeasibility:
    def test_flat_centered_five_eighths_fully_feasible(self):
        frame = build_wound_frame(FLAT)
        report = check_feasibility(
            NeedleVariables(0.0, 0.0, 16.0, 0.625), frame, GraspPolicy(DEFAULT_MARGIN)
        )
        assert report.bilateral_crossing
        assert report.single_pierce_per_side
        assert report.submerged
        assert report.grasp_margin_ok
        assert report.depth_positive
        assert report.overall
        assert report.embedded_arc_angle == pytest.approx(math.pi, abs=1e-12)
        assert report.margin_each_end == pytest.approx(math.pi * 0.125, abs=1e-12)

    def test_flat_centered_half_circle_fails_only_grasp(self):
        # embedded arc is the full half circle: no free arc left to hold
        frame = build_wound_frame(FLAT)
        report = check_feasibility(
            NeedleVariables(0.0, 0.0, 16.0, 0.5), frame, GraspPolicy(DEFAULT_MARGIN)
        )
        assert report.bilateral_crossing
        assert report.single_pierce_per_side
        assert report.submerged
        assert not report.grasp_margin_ok
        assert report.depth_positive
        assert not report.overall

    def test_out_of_reach_needle_reports_all_false(self):
        frame = build_wound_frame(FLAT)
        report = check_feasibility(
            NeedleVariables(0.0, 20.0, 16.0, 0.5), frame, GraspPolicy(DEFAULT_MARGIN)
        )
        assert not report.bilateral_crossing
        assert not report.single_pierce_per_side
        assert not report.submerged
        assert not report.grasp_margin_ok
        assert not report.depth_positive
        assert not report.overall
        assert report.embedded_arc_angle == 0.0
        assert report.margin_each_end == 0.0

    def test_double_crossing_is_bilateral_but_not_single(self):
        steep = TissueGeometry(tissue_angle=0.5, wound_width=5.5, bite_distance=16.0)
        frame = build_wound_frame(steep)
        report = check_feasibility(
            NeedleVariables(0.0, -3.0, 8.0, 0.5), frame, GraspPolicy(min_margin=0.0)
        )
        assert report.bilateral_crossing
        assert not report.single_pierce_per_side
        assert not report.overall

    def test_infeasible_whenever_parameters_undefined(self):
        # no unique crossing ever yields a feasible report
        from suturepath import compute_suture_parameters

        rng = random.Random(29)
        frame = build_wound_frame(SLOPED)
        for _ in range(300):
            needle = NeedleVariables(
                rng.uniform(-8.0, 8.0), rng.uniform(-10.0, 10.0), rng.uniform(4.0, 30.0), 0.5
            )
            report = check_feasibility(needle, frame, GraspPolicy(min_margin=0.0))
            if compute_suture_parameters(needle, frame) is None:
                assert not report.overall

    def test_submersion_agrees_with_boundary_oracle(self):
        rng = random.Random(31)
        tissues = [
            FLAT,
            SLOPED,
            TissueGeometry(
                tissue_angle=4.0 * math.pi / 5.0,
                wound_width=5.5,
                bite_distance=16.0,
                slope_convention="ascending-away",
            ),
        ]
        checked = 0
        while checked < 60:
            tissue = tissues[rng.randrange(3)]
            frame = build_wound_frame(tissue)
            needle = NeedleVariables(
                rng.uniform(-4.0, 4.0), rng.uniform(-6.0, 4.0), rng.uniform(12.0, 32.0), 0.5
            )
            report = check_feasibility(needle, frame, GraspPolicy(min_margin=0.0))
            if not report.single_pierce_per_side:
                continue
            entry, exit = entry_exit_points(needle, frame)
            ref = oracles.submerged_by_sampling(needle.circle, entry, exit, frame)
            assert report.submerged == ref
            checked += 1

    def test_depth_positive_on_all_single_crossings(self):
        # transversal double-sided crossings always embed below the chord
        rng = random.Random(37)
        frame = build_wound_frame(SLOPED)
        checked = 0
        while checked < 60:
            needle = NeedleVariables(
                rng.uniform(-4.0, 4.0), rng.uniform(-6.0, 4.0), rng.uniform(12.0, 32.0), 0.5
            )
            report = check_feasibility(needle, frame, GraspPolicy(min_margin=0.0))
            if not report.single_pierce_per_side:
                continue
            assert report.depth_positive
            checked += 1

    def test_overall_is_conjunction_of_flags(self):
        rng = random.Random(41)
        frame = build_wound_frame(SLOPED)
        for _ in range(200):
            needle = NeedleVariables(
                rng.uniform(-6.0, 6.0), rng.uniform(-8.0, 6.0), rng.uniform(8.0, 34.0),
                (0.25, 0.375, 0.5, 0.625)[rng.randrange(4)],
            )
            r = check_feasibility(needle, frame, GraspPolicy())
            assert r.overall == (
                r.bilateral_crossing
                and r.single_pierce_per_side
                and r.submerged
                and r.grasp_margin_ok
                and r.depth_positive
            )
