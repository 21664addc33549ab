"""Tests for the plane geometry primitives."""

import math

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from bicentric.errors import (
    CollinearPoints,
    DegenerateInput,
    ParallelLines,
    PointInsideCircle,
    PointOnCircle,
)
from bicentric.geometry import (
    Circle,
    Line,
    Point2,
    angle_of,
    circumcircle,
    distance_point_line,
    fit_circle,
    intersect_lines,
    line_circle_intersection,
    line_through,
    polygon_area,
    signed_area,
    tangent_lines_from_point,
)

ORIGIN = Point2(0.0, 0.0)
UNIT = Circle(ORIGIN, 1.0)

coords = st.floats(min_value=-100.0, max_value=100.0, allow_nan=False, allow_infinity=False)
points = st.builds(Point2, coords, coords)
angles = st.floats(min_value=0.0, max_value=2.0 * math.pi, allow_nan=False)


class TestPrimitives:
    def test_point_arithmetic(self):
        p, q = Point2(1.0, 2.0), Point2(3.0, -1.0)
        assert p + q == Point2(4.0, 1.0)
        assert q - p == Point2(2.0, -3.0)
        assert 2.0 * p == Point2(2.0, 4.0)
        assert p.dot(q) == 1.0
        assert p.cross(q) == -7.0
        assert Point2(3.0, 4.0).norm() == 5.0
        assert Point2(1.0, 0.0).perp() == Point2(0.0, 1.0)

    def test_point_rejects_non_finite(self):
        with pytest.raises(DegenerateInput):
            Point2(float("nan"), 0.0)

    def test_circle_rejects_non_positive_radius(self):
        with pytest.raises(DegenerateInput):
            Circle(ORIGIN, 0.0)

    def test_line_rejects_non_canonical_normal(self):
        with pytest.raises(DegenerateInput):
            Line(-1.0, 0.0, 1.0)
        with pytest.raises(DegenerateInput):
            Line(0.6, 0.6, 1.0)

    def test_angle_of_range(self):
        assert angle_of(Point2(0.0, -1.0), ORIGIN) == pytest.approx(1.5 * math.pi)
        assert angle_of(Point2(1.0, 0.0), ORIGIN) == 0.0


class TestLineThrough:
    def test_axis_case(self):
        line = line_through(Point2(0.0, 0.0), Point2(1.0, 0.0))
        assert (line.normal_x, line.normal_y, line.offset) == (0.0, 1.0, 0.0)

    def test_diagonal(self):
        line = line_through(Point2(0.0, 1.0), Point2(1.0, 0.0))
        h = 1.0 / math.sqrt(2.0)
        np.testing.assert_allclose([line.normal_x, line.normal_y, line.offset], [h, h, h], atol=1e-15)

    def test_coincident_points(self):
        with pytest.raises(DegenerateInput):
            line_through(Point2(1.0, 1.0), Point2(1.0, 1.0))

    @given(points, points)
    def test_symmetric_and_canonical(self, p, q):
        assume(p.distance_to(q) >= 1e-6)
        line = line_through(p, q)
        assert line == line_through(q, p)
        assert line.normal_x > 0.0 or (line.normal_x == 0.0 and line.normal_y > 0.0)
        scale = max(1.0, p.norm(), q.norm())
        assert abs(line.signed_distance(p)) <= 1e-12 * scale
        assert abs(line.signed_distance(q)) <= 1e-12 * scale


class TestTangents:
    def test_from_external_point(self):
        ccw_line, cw_line, ccw_point, cw_point = tangent_lines_from_point(UNIT, Point2(2.0, 0.0))
        np.testing.assert_allclose(ccw_point.as_tuple(), (0.5, math.sqrt(3.0) / 2.0), atol=1e-15)
        np.testing.assert_allclose(cw_point.as_tuple(), (0.5, -math.sqrt(3.0) / 2.0), atol=1e-15)
        for line in (ccw_line, cw_line):
            assert distance_point_line(ORIGIN, line) == pytest.approx(1.0, abs=1e-15)
            assert distance_point_line(Point2(2.0, 0.0), line) == pytest.approx(0.0, abs=1e-15)

    def test_mirror_symmetry(self):
        circle = Circle(ORIGIN, 0.5)
        _, _, ccw_point, cw_point = tangent_lines_from_point(circle, Point2(0.0, 1.0))
        assert ccw_point.x == pytest.approx(-cw_point.x, abs=1e-15)
        assert ccw_point.y == pytest.approx(cw_point.y, abs=1e-15)
        assert ccw_point.x < 0.0

    def test_inside(self):
        with pytest.raises(PointInsideCircle):
            tangent_lines_from_point(UNIT, Point2(0.5, 0.0))

    def test_on_circle(self):
        with pytest.raises(PointOnCircle):
            tangent_lines_from_point(UNIT, Point2(0.0, 1.0))

    @given(st.floats(min_value=1.01, max_value=50.0), angles)
    def test_tangency_points_lie_on_circle(self, dist, angle):
        p = Point2.polar(ORIGIN, dist, angle)
        ccw_line, cw_line, ccw_point, cw_point = tangent_lines_from_point(UNIT, p)
        for line, touch in ((ccw_line, ccw_point), (cw_line, cw_point)):
            assert UNIT.residual(touch) <= 1e-12
            assert abs(distance_point_line(ORIGIN, line) - 1.0) <= 1e-12
            assert abs(line.signed_distance(p)) <= 1e-12 * dist
        assert p.cross(ccw_point) > 0.0 > p.cross(cw_point)


class TestIntersections:
    def test_chord_through_center(self):
        hits = line_circle_intersection(Line(1.0, 0.0, 1.0), Circle(Point2(1.0, 0.0), 3.0))
        assert len(hits) == 2
        np.testing.assert_allclose(hits[0].as_tuple(), (1.0, 3.0), atol=1e-15)
        np.testing.assert_allclose(hits[1].as_tuple(), (1.0, -3.0), atol=1e-15)

    def test_miss(self):
        assert line_circle_intersection(Line(0.0, 1.0, 2.0), UNIT) == []

    def test_tangency(self):
        hits = line_circle_intersection(Line(0.0, 1.0, 1.0), UNIT)
        assert hits == [Point2(0.0, 1.0)]

    def test_random_chords_satisfy_both_constraints(self):
        rng = np.random.default_rng(20240607)
        chords = 0
        for _ in range(10_000):
            center = Point2(*rng.uniform(-10.0, 10.0, size=2))
            r = float(10.0 ** rng.uniform(-1.0, 1.0))
            phi = rng.uniform(0.0, 2.0 * math.pi)
            s = rng.uniform(-1.2, 1.2) * r
            nx, ny = math.cos(phi), math.sin(phi)
            line = Line.from_normal(nx, ny, nx * center.x + ny * center.y + s)
            circle = Circle(center, r)

            hits = line_circle_intersection(line, circle)
            if abs(s) < r * (1.0 - 1e-6):
                assert len(hits) == 2
                chords += 1
            elif abs(s) > r * (1.0 + 1e-6):
                assert hits == []
            for p in hits:
                assert abs(line.signed_distance(p)) <= 1e-12 * max(1.0, center.norm())
                assert circle.residual(p) <= 1e-12 * max(r, center.norm())
            if len(hits) == 2:
                assert angle_of(hits[0], center) < angle_of(hits[1], center)
        assert chords > 7_000

    def test_intersect_lines(self):
        p = intersect_lines(Line(1.0, 0.0, 1.0), Line(0.0, 1.0, 2.0))
        assert p == Point2(1.0, 2.0)

    def test_parallel_lines(self):
        with pytest.raises(ParallelLines):
            intersect_lines(Line(0.0, 1.0, 1.0), Line(0.0, 1.0, 2.0))


class TestCircles:
    def test_circumcircle(self):
        circle = circumcircle(Point2(0.0, 0.0), Point2(1.0, 3.0), Point2(1.0, -3.0))
        np.testing.assert_allclose(circle.center.as_tuple(), (5.0, 0.0), atol=1e-14)
        assert circle.radius == pytest.approx(5.0, abs=1e-14)

    def test_circumcircle_of_unit_points(self):
        circle = circumcircle(Point2(1.0, 0.0), Point2(0.0, 1.0), Point2(-1.0, 0.0))
        np.testing.assert_allclose(circle.center.as_tuple(), (0.0, 0.0), atol=1e-15)
        assert circle.radius == pytest.approx(1.0)

    def test_collinear(self):
        with pytest.raises(CollinearPoints):
            circumcircle(Point2(0.0, 0.0), Point2(1.0, 1.0), Point2(2.0, 2.0))

    def test_fit_exact_samples(self):
        samples = [UNIT.point_at(math.radians(a)) for a in (0, 70, 150, 220, 300)]
        fit = fit_circle(samples)
        assert fit.circle.radius == pytest.approx(1.0, abs=1e-12)
        assert fit.max_residual <= 1e-12

    def test_fit_three_points_matches_circumcircle(self):
        fit = fit_circle([Point2(0.0, 0.0), Point2(1.0, 3.0), Point2(1.0, -3.0)])
        np.testing.assert_allclose(fit.circle.center.as_tuple(), (5.0, 0.0), atol=1e-12)
        assert fit.circle.radius == pytest.approx(5.0, abs=1e-12)

    def test_fit_perturbed_sample(self):
        samples = [UNIT.point_at(math.radians(a)) for a in (0, 70, 150, 220, 300)]
        samples[1] = Point2.polar(ORIGIN, 1.0 + 1e-6, math.radians(70))
        fit = fit_circle(samples)
        assert 2e-7 <= fit.max_residual <= 1e-6

    def test_fit_collinear(self):
        with pytest.raises(CollinearPoints):
            fit_circle([Point2(float(i), 2.0 * i) for i in range(5)])

    def test_fit_needs_three_points(self):
        with pytest.raises(DegenerateInput):
            fit_circle([Point2(0.0, 0.0), Point2(1.0, 0.0)])

    @settings(max_examples=50)
    @given(coords, coords, st.floats(min_value=0.01, max_value=1e3),
           st.integers(min_value=3, max_value=12), angles,
           st.floats(min_value=0.5, max_value=1.0))
    def test_fit_recovers_circle(self, cx, cy, r, count, offset, arc):
        # points spread over at least half a turn
        thetas = [offset + arc * 2.0 * math.pi * k / count for k in range(count)]
        circle = Circle(Point2(cx, cy), r)
        fit = fit_circle([circle.point_at(t) for t in thetas])
        assert abs(fit.circle.radius - r) <= 1e-10 * r
        assert fit.circle.center.distance_to(circle.center) <= 1e-10 * r


class TestAreas:
    def test_distance_point_line(self):
        h = 1.0 / math.sqrt(2.0)
        assert distance_point_line(ORIGIN, Line(h, h, h)) == pytest.approx(h)
        assert distance_point_line(Point2(1.0, 1.0), Line(0.0, 1.0, -0.5)) == pytest.approx(1.5)
        assert distance_point_line(Point2(1.0, 0.0), Line(1.0, 0.0, 1.0)) == 0.0

    def test_signed_area_orientation(self):
        square = [Point2(0.0, 0.0), Point2(2.0, 0.0), Point2(2.0, 2.0), Point2(0.0, 2.0)]
        assert signed_area(square) == pytest.approx(4.0)
        assert signed_area(square[::-1]) == pytest.approx(-4.0)
        assert polygon_area(square[::-1]) == pytest.approx(4.0)
