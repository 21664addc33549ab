"""
Excircle centers and theorem checks
===================================

Excenters of a bicentric polygon are the intersections of adjacent external
angle bisectors. This module computes them and measures, as residuals
normalized by R_K, how well a polygon satisfies:

* concyclicity of the excenters on E, with M_K the midpoint of M_C and M_E
  and R_E = |R_K^2 - d^2| / R_C;
* the lemma that circumcenters of (M_C, P_1, P_2) stay on a fixed circle F
  around M_K for every tangent of C;
* the quadrilateral facts (perpendicular excenter diagonals through M_C,
  R_E^2 = 2 (R_K^2 + d^2), Thales circles over M_i M_C);
* the area ratio area(B) / area(excenter polygon) = R_C / R_E for convex B.

Residuals are returned as data; only structurally impossible inputs raise.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import List, Tuple

from bicentric import constants
from bicentric.errors import (
    DegenerateE,
    DegenerateInput,
    NoChord,
    NotConvex,
    ParallelBisectors,
    ParallelLines,
    TangencyViolation,
    WrongArity,
)
from bicentric.geometry import (
    Circle,
    FitResult,
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
)
from bicentric.poncelet import BicentricPolygon, CirclePair, lemma_circle_F, trace_polygon

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ExcenterSet:
    excenters: Tuple[Point2, ...]
    exradii: Tuple[float, ...]

    @property
    def excircles(self) -> Tuple[Circle, ...]:
        return tuple(Circle(m, r) for m, r in zip(self.excenters, self.exradii))

    def __len__(self) -> int:
        return len(self.excenters)


@dataclass(frozen=True)
class MainTheoremReport:
    fitted_E: FitResult
    predicted_E: Circle
    concyclicity_residual: float
    midpoint_residual: float
    radius_residual: float


@dataclass(frozen=True)
class LemmaReport:
    tangent: Line
    chord_points: Tuple[Point2, Point2]
    circumcenter: Point2
    circumradius: float
    foot: Point2
    locus_residual: float
    identity_residual: float


@dataclass(frozen=True)
class SideLemmaReport:
    side_locus_residual: float
    thales_antipode_residual: float


@dataclass(frozen=True)
class QuadrilateralReport:
    incidence_residual: float
    perpendicularity_residual: float
    radius_residual: float
    thales_residual: float
    r_e_squared: float


@dataclass(frozen=True)
class SymmetricQuadrilateralReport:
    pythagoras_residual: float
    closed_form_residual: float
    isosceles_residual: float


@dataclass(frozen=True)
class AreaRatioReport:
    ratio: float
    residual: float
    perpendicularity_residual: float
    orthodiagonal_residual: float


@dataclass(frozen=True)
class TriangleReport:
    ratio: float
    residual: float


def external_bisector(vertex: Point2, incenter: Point2,
                      eps_degenerate: float = constants.EPS_DEGENERATE) -> Line:
    """Perpendicular at the vertex to the internal bisector vertex -> M_C"""
    axis = vertex - incenter
    if axis.norm() <= eps_degenerate * max(1.0, vertex.norm(), incenter.norm()):
        raise DegenerateInput(f"vertex {vertex.as_tuple()} coincides with the incircle center")
    return Line.from_normal(axis.x, axis.y, axis.dot(vertex))


def excenters(poly: BicentricPolygon,
              eps_parallel: float = constants.EPS_PARALLEL,
              tangency_tol: float = constants.EXCIRCLE_TANGENCY_TOL) -> ExcenterSet:
    """M_i from the external bisectors at A_i and A_{i+1}; radius = dist(M_i, a_i)"""
    incenter = poly.pair.C.center
    bisectors = [external_bisector(v, incenter) for v in poly.vertices]
    r_k = poly.pair.r_k

    centers: List[Point2] = []
    radii: List[float] = []
    for i in range(poly.n):
        try:
            m = intersect_lines(bisectors[i], bisectors[(i + 1) % poly.n], eps_parallel)
        except ParallelLines as exc:
            raise ParallelBisectors(f"excenter {i} is at infinity: {exc}") from exc
        dists = [distance_point_line(m, poly.side(j)) for j in (i - 1, i, i + 1)]
        if max(dists) - min(dists) > tangency_tol * r_k:
            raise TangencyViolation(
                f"excircle {i} distances to sides {i - 1}, {i}, {i + 1} differ: {dists}")
        if dists[1] <= 0.0:
            raise DegenerateInput(f"excircle {i} has zero radius")
        centers.append(m)
        radii.append(dists[1])
    return ExcenterSet(tuple(centers), tuple(radii))


def excircle_tangency_residual(poly: BicentricPolygon, exc: ExcenterSet) -> float:
    """Worst spread between an exradius and the distances to its three sides"""
    worst = 0.0
    for i, (m, r) in enumerate(zip(exc.excenters, exc.exradii)):
        dists = [distance_point_line(m, poly.side(j)) for j in (i - 1, i, i + 1)]
        worst = max(worst, max(abs(x - r) for x in dists))
    return worst / poly.pair.r_k


def predicted_circle_E(pair: CirclePair,
                       eps_degenerate: float = constants.EPS_DEGENERATE) -> Circle:
    r_k, d = pair.r_k, pair.d
    power = abs(r_k * r_k - d * d)
    if power <= eps_degenerate * r_k * r_k:
        raise DegenerateE("d = R_K: the excenter circle degenerates")
    center = pair.K.center * 2.0 - pair.C.center
    return Circle(center, power / pair.r_c)


def verify_main_theorem(poly: BicentricPolygon, exc: ExcenterSet) -> MainTheoremReport:
    pair = poly.pair
    r_k = pair.r_k
    fitted = fit_circle(exc.excenters)
    predicted = predicted_circle_E(pair)

    concyclicity = max(predicted.residual(m) for m in exc.excenters) / r_k
    midpoint = (pair.C.center + fitted.circle.center) * 0.5
    midpoint_residual = midpoint.distance_to(pair.K.center) / r_k
    radius_residual = abs(fitted.circle.radius - predicted.radius) / r_k
    return MainTheoremReport(fitted, predicted, concyclicity, midpoint_residual, radius_residual)


def verify_lemma_locus(pair: CirclePair, tangent_angle: float) -> LemmaReport:
    """Build the tangent of C at tangent_angle and check the circumcenter locus"""
    normal = Point2(math.cos(tangent_angle), math.sin(tangent_angle))
    touch = pair.C.point_at(tangent_angle)
    tangent = Line.from_normal(normal.x, normal.y, normal.dot(touch))

    hits = line_circle_intersection(tangent, pair.K)
    if len(hits) < 2:
        raise NoChord(f"tangent at angle {tangent_angle} does not cut K in two points")
    p1, p2 = hits
    d_circle = circumcircle(pair.C.center, p1, p2)
    foot = intersect_lines(line_through(d_circle.center, pair.K.center), tangent)

    r_k, r_c, d = pair.r_k, pair.r_c, pair.d
    power = abs(r_k * r_k - d * d)
    reach = d_circle.center.distance_to(pair.K.center)
    locus = abs(reach - power / (2.0 * r_c)) / r_k
    identity = abs(power - 2.0 * reach * r_c) / (r_k * r_k)
    return LemmaReport(tangent, (p1, p2), d_circle.center, d_circle.radius, foot, locus, identity)


def verify_side_lemma(poly: BicentricPolygon, exc: ExcenterSet) -> SideLemmaReport:
    """The lemma applied to the polygon's own sides.

    The circle through M_C, A_i, A_{i+1} is the Thales circle over M_C M_i,
    and its center lies on F.
    """
    pair = poly.pair
    f_circle = lemma_circle_F(pair)
    incenter = pair.C.center
    locus, antipode = 0.0, 0.0
    for i in range(poly.n):
        d_circle = circumcircle(incenter, poly.vertex(i), poly.vertex(i + 1))
        locus = max(locus, f_circle.residual(d_circle.center))
        mirror = d_circle.center * 2.0 - incenter
        antipode = max(antipode, mirror.distance_to(exc.excenters[i]))
    return SideLemmaReport(locus / pair.r_k, antipode / pair.r_k)


def is_convex(poly: BicentricPolygon) -> bool:
    """Winding 1 and vertex angles strictly monotone about M_K"""
    if poly.winding != 1:
        return False
    angles = [angle_of(v, poly.pair.K.center) for v in poly.vertices]
    steps = [(angles[(i + 1) % poly.n] - angles[i]) % constants.TWO_PI for i in range(poly.n)]
    for direction in (steps, [(-s) % constants.TWO_PI for s in steps]):
        if all(s > 0.0 for s in direction) and abs(sum(direction) - constants.TWO_PI) < 1e-9:
            return True
    return False


def verify_triangle_corollary(poly: BicentricPolygon, exc: ExcenterSet) -> TriangleReport:
    """For triangles E has exactly twice the circumradius"""
    if poly.n != 3:
        raise WrongArity(f"triangle corollary needs n = 3, got {poly.n}")
    ratio = fit_circle(exc.excenters).circle.radius / poly.pair.r_k
    return TriangleReport(ratio, abs(ratio - 2.0))


def verify_quadrilateral(poly: BicentricPolygon, exc: ExcenterSet) -> QuadrilateralReport:
    if poly.n != 4:
        raise WrongArity(f"quadrilateral checks need n = 4, got {poly.n}")
    if not is_convex(poly):
        raise NotConvex("quadrilateral checks are stated for convex quadrilaterals")

    pair = poly.pair
    r_k, d = pair.r_k, pair.d
    incenter = pair.C.center
    m = exc.excenters

    diagonal_13 = line_through(m[0], m[2])
    diagonal_24 = line_through(m[1], m[3])
    incidence = max(distance_point_line(incenter, diagonal_13),
                    distance_point_line(incenter, diagonal_24)) / r_k
    perpendicularity = abs(diagonal_13.normal.dot(diagonal_24.normal))

    r_e = fit_circle(m).circle.radius
    radius = abs(r_e * r_e - 2.0 * (r_k * r_k + d * d)) / (r_k * r_k)

    thales = 0.0
    for i in range(4):
        for a in (poly.vertex(i), poly.vertex(i + 1)):
            thales = max(thales, abs((a - incenter).dot(a - m[i])))
    return QuadrilateralReport(incidence, perpendicularity, radius, thales / (r_k * r_k), r_e * r_e)


def verify_symmetric_quadrilateral(pair: CirclePair) -> SymmetricQuadrilateralReport:
    """R_E^2 = 2 (R_K^2 + d^2) through the symmetric position of a Fuss pair.

    A_1 is placed where the line through M_C and M_K meets K on the side of
    M_C; there the right triangle A_1 M_1 M_E gives R_E^2 by Pythagoras.
    """
    r_k, d = pair.r_k, pair.d
    if d > 0.0:
        start_angle = angle_of(pair.C.center, pair.K.center)
    else:
        start_angle = 0.0
    poly, _ = trace_polygon(pair, start_angle, 4, 1)
    exc = excenters(poly)
    m_e = predicted_circle_E(pair).center

    a1 = poly.vertices[0]
    m1 = exc.excenters[0]
    leg = a1.distance_to(pair.C.center)
    hypotenuse_sq = m1.distance_to(m_e) ** 2
    scale = r_k * r_k
    pythagoras = abs(hypotenuse_sq - ((r_k + d) ** 2 + leg * leg)) / scale
    closed_form = abs((r_k + d) ** 2 + leg * leg - 2.0 * (r_k * r_k + d * d)) / scale
    isosceles = abs(a1.distance_to(m1) - leg) / r_k
    return SymmetricQuadrilateralReport(pythagoras, closed_form, isosceles)


def verify_area_ratio(poly: BicentricPolygon, exc: ExcenterSet) -> AreaRatioReport:
    """area(B) / area(M_1...M_n) against R_C / R_E for a convex polygon"""
    if not is_convex(poly):
        raise NotConvex("the area ratio is stated for convex bicentric polygons")

    pair = poly.pair
    r_k, r_c = pair.r_k, pair.r_c
    fitted = fit_circle(exc.excenters).circle
    m_e, r_e = fitted.center, fitted.radius

    ratio = polygon_area(poly.vertices) / polygon_area(exc.excenters)
    residual = abs(ratio - r_c / r_e)

    perpendicularity, orthodiagonal = 0.0, 0.0
    for i in range(poly.n):
        a, b, m = poly.vertex(i), poly.vertex(i + 1), exc.excenters[i]
        direction = poly.side(i).direction
        perpendicularity = max(perpendicularity, abs((m_e - m).dot(direction)))
        side_length = a.distance_to(b)
        kite = polygon_area([m_e, a, m, b])
        wedge = polygon_area([pair.C.center, a, b])
        orthodiagonal = max(orthodiagonal,
                            abs(kite - 0.5 * side_length * r_e),
                            abs(wedge - 0.5 * side_length * r_c))
    return AreaRatioReport(ratio, residual, perpendicularity / r_k, orthodiagonal / (r_k * r_k))
