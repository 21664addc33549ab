"""
Plane geometry primitives
=========================

Points, circles and normalized implicit lines, together with the
constructions everything else is built from: tangents from an external
point, line/circle intersection, circumcircles, line intersection, shoelace
areas and an algebraic least-squares circle fit.

All functions are pure. Degenerate configurations raise the errors in
``bicentric.errors`` instead of returning NaNs.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from bicentric import constants
from bicentric.errors import (
    CollinearPoints,
    DegenerateInput,
    ParallelLines,
    PointInsideCircle,
    PointOnCircle,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Point2:
    """A point (or vector) of the Euclidean plane"""

    x: float
    y: float

    def __post_init__(self):
        x, y = float(self.x), float(self.y)
        if not (math.isfinite(x) and math.isfinite(y)):
            raise DegenerateInput(f"non-finite coordinates ({self.x}, {self.y})")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    @classmethod
    def polar(cls, center: "Point2", radius: float, angle: float) -> "Point2":
        return cls(center.x + radius * math.cos(angle),
                   center.y + radius * math.sin(angle))

    def __add__(self, other: "Point2") -> "Point2":
        return Point2(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Point2") -> "Point2":
        return Point2(self.x - other.x, self.y - other.y)

    def __mul__(self, factor: float) -> "Point2":
        return Point2(self.x * factor, self.y * factor)

    __rmul__ = __mul__

    def __neg__(self) -> "Point2":
        return Point2(-self.x, -self.y)

    def dot(self, other: "Point2") -> float:
        return self.x * other.x + self.y * other.y

    def cross(self, other: "Point2") -> float:
        return self.x * other.y - self.y * other.x

    def norm(self) -> float:
        return math.hypot(self.x, self.y)

    def distance_to(self, other: "Point2") -> float:
        return math.hypot(self.x - other.x, self.y - other.y)

    def perp(self) -> "Point2":
        """Counterclockwise quarter turn"""
        return Point2(-self.y, self.x)

    def unit(self) -> "Point2":
        length = self.norm()
        if length == 0.0:
            raise DegenerateInput("zero vector has no direction")
        return Point2(self.x / length, self.y / length)

    def as_tuple(self) -> Tuple[float, float]:
        return (self.x, self.y)


@dataclass(frozen=True)
class Circle:
    center: Point2
    radius: float

    def __post_init__(self):
        radius = float(self.radius)
        if not math.isfinite(radius) or radius <= 0.0:
            raise DegenerateInput(f"circle radius must be positive and finite, got {self.radius}")
        object.__setattr__(self, "radius", radius)

    def residual(self, p: Point2) -> float:
        """| |p - center| - radius |"""
        return abs(p.distance_to(self.center) - self.radius)

    def point_at(self, angle: float) -> Point2:
        return Point2.polar(self.center, self.radius, angle)


@dataclass(frozen=True)
class Line:
    """The line {p : normal . p = offset} with a unit, sign-canonical normal.

    Canonical sign: normal_x > 0, or normal_x == 0 and normal_y > 0. Two
    constructions of the same line therefore compare equal field-for-field.
    """

    normal_x: float
    normal_y: float
    offset: float

    def __post_init__(self):
        nx, ny, off = float(self.normal_x), float(self.normal_y), float(self.offset)
        if not all(math.isfinite(v) for v in (nx, ny, off)):
            raise DegenerateInput("non-finite line coefficients")
        if abs(math.hypot(nx, ny) - 1.0) > 1e-14:
            raise DegenerateInput(f"line normal ({nx}, {ny}) is not unit length")
        if nx < 0.0 or (nx == 0.0 and ny <= 0.0):
            raise DegenerateInput(f"line normal ({nx}, {ny}) is not in canonical sign")
        object.__setattr__(self, "normal_x", nx)
        object.__setattr__(self, "normal_y", ny)
        object.__setattr__(self, "offset", off)

    @classmethod
    def from_normal(cls, nx: float, ny: float, offset: float) -> "Line":
        """Normalize (nx, ny, offset) and flip it into canonical sign"""
        length = math.hypot(nx, ny)
        if length == 0.0 or not math.isfinite(length):
            raise DegenerateInput("line normal must be a nonzero finite vector")
        nx, ny, offset = nx / length, ny / length, offset / length
        if nx < 0.0 or (nx == 0.0 and ny < 0.0):
            nx, ny, offset = -nx, -ny, -offset
        # + 0.0 turns a negative zero into 0.0
        return cls(nx + 0.0, ny + 0.0, offset + 0.0)

    @property
    def normal(self) -> Point2:
        return Point2(self.normal_x, self.normal_y)

    @property
    def direction(self) -> Point2:
        return Point2(-self.normal_y, self.normal_x)

    def signed_distance(self, p: Point2) -> float:
        return self.normal_x * p.x + self.normal_y * p.y - self.offset

    def project(self, p: Point2) -> Point2:
        """Foot of the perpendicular from p"""
        s = self.signed_distance(p)
        return Point2(p.x - s * self.normal_x, p.y - s * self.normal_y)


@dataclass(frozen=True)
class FitResult:
    circle: Circle
    rms_residual: float
    max_residual: float


def _scale(*points: Point2) -> float:
    return max([1.0] + [p.norm() for p in points])


def line_through(p: Point2, q: Point2,
                 eps_degenerate: float = constants.EPS_DEGENERATE) -> Line:
    """Line through two distinct points.

    The offset is taken at the midpoint so that line_through(p, q) and
    line_through(q, p) agree bit for bit.
    """
    dx, dy = q.x - p.x, q.y - p.y
    length = math.hypot(dx, dy)
    if length <= eps_degenerate * _scale(p, q):
        raise DegenerateInput(f"points {p.as_tuple()} and {q.as_tuple()} coincide")
    nx, ny = -dy / length, dx / length
    mx, my = (p.x + q.x) * 0.5, (p.y + q.y) * 0.5
    return Line.from_normal(nx, ny, nx * mx + ny * my)


def distance_point_line(p: Point2, line: Line) -> float:
    return abs(line.signed_distance(p))


def angle_of(p: Point2, center: Point2) -> float:
    """Polar angle of p about center, in [0, 2*pi)"""
    angle = math.atan2(p.y - center.y, p.x - center.x)
    if angle < 0.0:
        angle += constants.TWO_PI
    if angle >= constants.TWO_PI:
        angle = 0.0
    return angle


def tangent_lines_from_point(circle: Circle, p: Point2,
                             eps_tangency: float = constants.EPS_TANGENCY
                             ) -> Tuple[Line, Line, Point2, Point2]:
    """Both tangents from an external point p, with their tangency points.

    The first tangency point is counterclockwise from p as seen from the
    circle's center, the second clockwise.
    """
    offset = p - circle.center
    dist = offset.norm()
    r = circle.radius
    if abs(dist - r) <= eps_tangency * r:
        raise PointOnCircle(f"point {p.as_tuple()} lies on the circle")
    if dist < r:
        raise PointInsideCircle(f"point {p.as_tuple()} lies inside the circle")

    u = offset * (1.0 / dist)
    along = r * r / dist
    across = r * math.sqrt((dist - r) * (dist + r)) / dist
    foot = circle.center + u * along
    ccw_point = foot + u.perp() * across
    cw_point = foot - u.perp() * across

    lines = []
    for touch in (ccw_point, cw_point):
        n = touch - circle.center
        line = Line.from_normal(n.x, n.y, n.x * touch.x + n.y * touch.y)
        lines.append(line)
    return lines[0], lines[1], ccw_point, cw_point


def line_circle_intersection(line: Line, circle: Circle,
                             eps_tangency: float = constants.EPS_TANGENCY) -> List[Point2]:
    """Intersection points ordered by counterclockwise angle about the center.

    A line within eps_tangency * radius of tangency yields its single foot point.
    """
    r = circle.radius
    s = line.signed_distance(circle.center)
    foot = line.project(circle.center)
    gap = abs(s) - r
    if gap > eps_tangency * r:
        return []
    if abs(gap) <= eps_tangency * r:
        return [foot]

    half_chord = math.sqrt((r - abs(s)) * (r + abs(s)))
    d = line.direction
    points = [foot + d * half_chord, foot - d * half_chord]
    points.sort(key=lambda q: angle_of(q, circle.center))
    return points


def intersect_lines(l1: Line, l2: Line,
                    eps_parallel: float = constants.EPS_PARALLEL) -> Point2:
    det = l1.normal_x * l2.normal_y - l1.normal_y * l2.normal_x
    if abs(det) <= eps_parallel:
        raise ParallelLines(f"lines are parallel (|n1 x n2| = {abs(det):.3e})")
    x = (l1.offset * l2.normal_y - l2.offset * l1.normal_y) / det
    y = (l1.normal_x * l2.offset - l2.normal_x * l1.offset) / det
    return Point2(x, y)


def circumcircle(p1: Point2, p2: Point2, p3: Point2,
                 eps_degenerate: float = constants.EPS_DEGENERATE) -> Circle:
    b = p2 - p1
    c = p3 - p1
    span = max(b.norm(), c.norm(), p3.distance_to(p2))
    twice_area = b.cross(c)
    if span == 0.0 or 0.5 * abs(twice_area) < eps_degenerate * span * span:
        raise CollinearPoints(
            f"points {p1.as_tuple()}, {p2.as_tuple()}, {p3.as_tuple()} are collinear")

    bb, cc = b.dot(b), c.dot(c)
    denom = 2.0 * twice_area
    ux = (c.y * bb - b.y * cc) / denom
    uy = (b.x * cc - c.x * bb) / denom
    center = Point2(p1.x + ux, p1.y + uy)
    return Circle(center, math.hypot(ux, uy))


def _extremal_triple(xy: np.ndarray) -> Tuple[int, int, int]:
    """Indices of the farthest pair plus the point farthest from their line"""
    diff = xy[:, None, :] - xy[None, :, :]
    dist2 = np.einsum("ijk,ijk->ij", diff, diff)
    i, j = np.unravel_index(int(np.argmax(dist2)), dist2.shape)
    axis = xy[j] - xy[i]
    rel = xy - xy[i]
    off_axis = np.abs(axis[0] * rel[:, 1] - axis[1] * rel[:, 0])
    k = int(np.argmax(off_axis))
    return int(i), int(j), k


def fit_circle(points: Sequence[Point2],
               eps_degenerate: float = constants.EPS_DEGENERATE) -> FitResult:
    """Algebraic (Kasa) least-squares circle through the points.

    Minimizes sum (x^2 + y^2 - 2ax - 2by + c)^2 over (a, b, c). The points are
    centered and scaled before solving to keep the system well conditioned.
    """
    if len(points) < 3:
        raise DegenerateInput(f"circle fit needs at least 3 points, got {len(points)}")

    xy = np.array([p.as_tuple() for p in points], dtype=float)
    i, j, k = _extremal_triple(xy)
    # raises CollinearPoints when even the best spread triple is flat
    circumcircle(points[i], points[j], points[k], eps_degenerate)

    shift = xy.mean(axis=0)
    local = xy - shift
    scale = float(np.max(np.abs(local)))
    local = local / scale

    design = np.column_stack([2.0 * local[:, 0], 2.0 * local[:, 1], np.ones(len(local))])
    rhs = np.einsum("ij,ij->i", local, local)
    (a, b, c), *_ = np.linalg.lstsq(design, rhs, rcond=None)
    radius = math.sqrt(c + a * a + b * b) * scale
    center = Point2(shift[0] + a * scale, shift[1] + b * scale)

    residuals = np.abs(np.hypot(xy[:, 0] - center.x, xy[:, 1] - center.y) - radius)
    rms = float(np.sqrt(np.mean(residuals ** 2)))
    worst = float(np.max(residuals))
    logger.debug("fit_circle: %d points, center=(%.6g, %.6g) r=%.6g max_residual=%.3e",
                 len(points), center.x, center.y, radius, worst)
    return FitResult(Circle(center, radius), rms, max(worst, rms))


def signed_area(points: Sequence[Point2]) -> float:
    """Shoelace area, positive for counterclockwise vertex order"""
    xy = np.array([p.as_tuple() for p in points], dtype=float)
    x, y = xy[:, 0], xy[:, 1]
    return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


def polygon_area(points: Sequence[Point2]) -> float:
    return abs(signed_area(points))
