"""
Poncelet tangent-chord engine
=============================

Builds bicentric polygons over a circle pair by repeatedly drawing the
tangent from the current vertex to the incircle C and taking its second
intersection with the circumcircle K. Closure is measured as an angular
defect (swept angle about the incircle center minus 2*pi*winding) and as a
positional gap, and closure conditions are solved numerically by bisection.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Callable, List, Optional, Tuple

from bicentric import constants
from bicentric.errors import (
    AmbiguousTangent,
    DegenerateInput,
    NoSolution,
    NonMonotonic,
    NotNested,
    PointInsideCircle,
    PointOnCircle,
    PoleAtDEqualsRK,
    PorismViolation,
    VertexInsideC,
    VertexOnC,
)
from bicentric.geometry import (
    Circle,
    Line,
    Point2,
    angle_of,
    line_circle_intersection,
    tangent_lines_from_point,
)

logger = logging.getLogger(__name__)

NESTED = "nested"
INTERSECTING = "intersecting"
EXTERIOR = "exterior"
ENCLOSING = "enclosing"

EULER3 = "euler3"
FUSS4 = "fuss4"


@dataclass(frozen=True)
class CirclePair:
    """Circumcircle K and incircle C. The center distance d is always derived."""

    K: Circle
    C: Circle

    @classmethod
    def from_parameters(cls, r_k: float, r_c: float, d: float,
                        center_k: Point2 = Point2(0.0, 0.0)) -> "CirclePair":
        """Pair with M_C placed at distance d along +x from M_K"""
        if d < 0.0:
            raise DegenerateInput(f"center distance must be non-negative, got {d}")
        return cls(Circle(center_k, r_k), Circle(Point2(center_k.x + d, center_k.y), r_c))

    @property
    def d(self) -> float:
        return self.K.center.distance_to(self.C.center)

    @property
    def r_k(self) -> float:
        return self.K.radius

    @property
    def r_c(self) -> float:
        return self.C.radius

    def classify(self) -> str:
        d, r_k, r_c = self.d, self.r_k, self.r_c
        if d + r_c < r_k:
            return NESTED
        if d + r_k < r_c:
            return ENCLOSING
        if d > r_k + r_c:
            return EXTERIOR
        return INTERSECTING

    def with_incircle_radius(self, r_c: float) -> "CirclePair":
        return CirclePair(self.K, Circle(self.C.center, r_c))


@dataclass(frozen=True)
class BicentricPolygon:
    pair: CirclePair
    vertices: Tuple[Point2, ...]
    sides: Tuple[Line, ...]
    tangency_points: Tuple[Point2, ...]
    winding: int

    @property
    def n(self) -> int:
        return len(self.vertices)

    def vertex(self, i: int) -> Point2:
        """Vertex with cyclic indexing"""
        return self.vertices[i % self.n]

    def side(self, i: int) -> Line:
        return self.sides[i % self.n]


@dataclass(frozen=True)
class ClosureDefect:
    angular_defect: float
    positional_defect: float


@dataclass(frozen=True)
class Orbit:
    """Raw result of chaining tangent-chord steps"""

    vertices: Tuple[Point2, ...]
    sides: Tuple[Line, ...]
    tangency_points: Tuple[Point2, ...]
    closing_vertex: Point2
    swept_angle: float


def fold_angle(angle: float) -> float:
    """Map an angle to [-pi, pi)"""
    return (angle + math.pi) % constants.TWO_PI - math.pi


def polygon_residuals(poly: BicentricPolygon) -> dict:
    """Worst deviation from each polygon invariant, relative to R_K"""
    pair = poly.pair
    r_k = pair.r_k
    on_k = max(pair.K.residual(v) for v in poly.vertices)
    tangency = max(abs(abs(s.signed_distance(pair.C.center)) - pair.r_c) for s in poly.sides)
    incidence = max(
        max(abs(poly.side(i).signed_distance(poly.vertex(i))),
            abs(poly.side(i).signed_distance(poly.vertex(i + 1))))
        for i in range(poly.n)
    )
    return {
        "vertex_on_k": on_k / r_k,
        "side_tangency": tangency / r_k,
        "side_incidence": incidence / r_k,
    }


def poncelet_step(pair: CirclePair, vertex: Point2, incoming_tangency: Optional[Point2] = None,
                  orientation: int = 1,
                  eps_tangency: float = constants.EPS_TANGENCY,
                  ) -> Tuple[Point2, Line, Point2]:
    """One tangent-chord step from a vertex on K.

    Without an incoming tangency the tangent is picked by orientation: +1
    takes the tangency point counterclockwise from the vertex as seen from
    M_C, -1 the clockwise one. Otherwise the tangent whose tangency point
    differs from the incoming one is taken; an incoming point that matches
    both tangency points, or is equally far from both, raises AmbiguousTangent.
    """
    if orientation not in (1, -1):
        raise DegenerateInput(f"orientation must be +1 or -1, got {orientation}")
    if pair.K.residual(vertex) > constants.VERTEX_ON_K_TOL * pair.r_k:
        raise DegenerateInput(f"vertex {vertex.as_tuple()} is not on K")

    try:
        ccw_line, cw_line, ccw_touch, cw_touch = tangent_lines_from_point(
            pair.C, vertex, eps_tangency)
    except PointOnCircle as exc:
        raise VertexOnC(str(exc)) from exc
    except PointInsideCircle as exc:
        raise VertexInsideC(str(exc)) from exc

    if incoming_tangency is None:
        side, touch = (ccw_line, ccw_touch) if orientation == 1 else (cw_line, cw_touch)
    else:
        limit = eps_tangency * pair.r_c
        gap_ccw = ccw_touch.distance_to(incoming_tangency)
        gap_cw = cw_touch.distance_to(incoming_tangency)
        if gap_ccw <= limit and gap_cw <= limit:
            raise AmbiguousTangent(f"both tangents from {vertex.as_tuple()} touch the incoming point")
        if gap_ccw <= limit:
            side, touch = cw_line, cw_touch
        elif gap_cw <= limit:
            side, touch = ccw_line, ccw_touch
        elif abs(gap_ccw - gap_cw) <= limit:
            raise AmbiguousTangent(f"incoming tangency {incoming_tangency.as_tuple()} is "
                                   f"equally far from both tangents at {vertex.as_tuple()}")
        else:
            logger.warning("incoming tangency %s matches neither tangent from %s",
                           incoming_tangency.as_tuple(), vertex.as_tuple())
            side, touch = (ccw_line, ccw_touch) if gap_ccw > gap_cw else (cw_line, cw_touch)

    hits = line_circle_intersection(side, pair.K, eps_tangency)
    if len(hits) < 2:
        raise DegenerateInput(f"side through {vertex.as_tuple()} touches K: no second vertex")
    next_vertex = max(hits, key=lambda q: q.distance_to(vertex))
    return next_vertex, side, touch


def swept_angle(center: Point2, a: Point2, b: Point2) -> float:
    """Signed angle from a to b as seen from center, in (-pi, pi]"""
    u, v = a - center, b - center
    return math.atan2(u.cross(v), u.dot(v))


def run_orbit(pair: CirclePair, start: Point2, steps: int, orientation: int = 1,
              eps_tangency: float = constants.EPS_TANGENCY) -> Orbit:
    vertices: List[Point2] = []
    sides: List[Line] = []
    touches: List[Point2] = []
    swept = 0.0
    current, incoming = start, None
    for _ in range(steps):
        nxt, side, touch = poncelet_step(pair, current, incoming, orientation, eps_tangency)
        vertices.append(current)
        sides.append(side)
        touches.append(touch)
        swept += swept_angle(pair.C.center, current, nxt)
        current, incoming = nxt, touch
    return Orbit(tuple(vertices), tuple(sides), tuple(touches), current, swept)


def trace_polygon(pair: CirclePair, start_angle: float, n: int, winding: int = 1,
                  orientation: int = 1,
                  eps_tangency: float = constants.EPS_TANGENCY,
                  ) -> Tuple[BicentricPolygon, ClosureDefect]:
    """Chain n steps from K's point at start_angle.

    The polygon is built from the first n vertices whether or not the orbit
    closes; the defect says how far it is from closing.
    """
    if n < 3:
        raise DegenerateInput(f"a polygon needs n >= 3, got {n}")
    start = pair.K.point_at(start_angle)
    orbit = run_orbit(pair, start, n, orientation, eps_tangency)
    defect = ClosureDefect(
        angular_defect=orientation * orbit.swept_angle - constants.TWO_PI * winding,
        positional_defect=orbit.closing_vertex.distance_to(start) / pair.r_k,
    )
    poly = BicentricPolygon(pair, orbit.vertices, orbit.sides, orbit.tangency_points, winding)
    return poly, defect


def closure_defect(pair: CirclePair, n: int, winding: int = 1, samples: int = 8,
                   orientation: int = 1) -> float:
    """Worst folded angular defect over equally spaced start angles.

    When any sample closes, the porism demands that all of them do; a spread
    larger than PORISM_AGREEMENT then means the numerics broke down.
    """
    if samples < 1:
        raise DegenerateInput("closure_defect needs at least one sample")
    defects = []
    for k in range(samples):
        _, defect = trace_polygon(pair, constants.TWO_PI * k / samples, n, winding, orientation)
        defects.append(fold_angle(defect.angular_defect))

    worst = max(abs(x) for x in defects)
    spread = max(abs(fold_angle(x - defects[0])) for x in defects)
    closes_somewhere = min(abs(x) for x in defects) <= constants.PORISM_AGREEMENT
    if closes_somewhere and spread > constants.PORISM_AGREEMENT:
        raise PorismViolation(
            f"sampled closure defects disagree by {spread:.3e} rad (n={n}, winding={winding})")
    if closes_somewhere and spread > constants.CLOSURE_TOL:
        logger.warning("closure defects spread %.3e rad across %d starts", spread, samples)
    return worst


def condition_residual(pair: CirclePair, kind: str) -> float:
    """Closed-form closure condition: Chapple-Euler (euler3) or Fuss (fuss4)"""
    r_k, r_c, d = pair.r_k, pair.r_c, pair.d
    if abs(r_k - d) <= constants.EPS_DEGENERATE * r_k:
        raise PoleAtDEqualsRK(f"condition {kind} has a pole at d = R_K")
    if kind == EULER3:
        return 1.0 / (r_k - d) + 1.0 / (r_k + d) - 1.0 / r_c
    if kind == FUSS4:
        return 1.0 / (r_k - d) ** 2 + 1.0 / (r_k + d) ** 2 - 1.0 / r_c ** 2
    raise ValueError(f"unknown closure condition {kind!r}")


def _bisect(objective: Callable[[float], float], lo: float, hi: float,
            width: float, label: str) -> float:
    """Bisection on a decreasing objective; every midpoint must stay bracketed"""
    f_lo, f_hi = objective(lo), objective(hi)
    logger.debug("%s: bracket [%.17g, %.17g] -> [%.3e, %.3e]", label, lo, hi, f_lo, f_hi)
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    if (f_lo > 0.0) == (f_hi > 0.0):
        raise NoSolution(f"{label}: defect does not change sign "
                         f"({f_lo:.3e} at {lo:.6g}, {f_hi:.3e} at {hi:.6g})")
    decreasing = f_lo > f_hi

    for iteration in range(constants.BISECTION_MAX_ITER):
        if hi - lo <= width:
            break
        mid = 0.5 * lo + 0.5 * hi
        if not lo < mid < hi:
            break
        f_mid = objective(mid)
        upper, lower = (f_lo, f_hi) if decreasing else (f_hi, f_lo)
        noise = constants.MONOTONE_NOISE
        if f_mid > upper + noise or f_mid < lower - noise:
            raise NonMonotonic(f"{label}: defect {f_mid:.3e} at {mid:.17g} leaves "
                               f"[{lower:.3e}, {upper:.3e}]")
        if f_mid == 0.0:
            return mid
        if (f_mid > 0.0) == (f_lo > 0.0):
            lo, f_lo = mid, f_mid
        else:
            hi, f_hi = mid, f_mid
    logger.debug("%s: stopped after %d iterations, width %.3e", label, iteration + 1, hi - lo)
    return lo if abs(f_lo) <= abs(f_hi) else hi


def solve_closure_rc(n: int, winding: int, r_k: float, d: float,
                     center_c: Point2 = Point2(0.0, 0.0),
                     orientation: int = 1,
                     closure_tol: float = constants.CLOSURE_TOL) -> CirclePair:
    """Incircle radius for which the n-gon with the given winding closes.

    M_K sits at center_c - (d, 0). Bisection runs on R_C over
    [1e-6, 1 - 1e-6] * (R_K - d), where the swept angle decreases from about
    n*pi to nearly 0. A root inside either end sliver (large n with d close
    to R_K, e.g. n = 9 at d = 0.758 R_K) is reported as NoSolution.
    """
    if n < 3 or winding < 1:
        raise DegenerateInput(f"need n >= 3 and winding >= 1, got n={n}, winding={winding}")
    if math.gcd(n, winding) != 1:
        raise NoSolution(f"gcd(n={n}, winding={winding}) != 1: orbit is not simple")
    if 2 * winding >= n:
        raise NoSolution(f"winding {winding} is not below n/2 = {n / 2}")
    if d < 0.0 or d >= r_k:
        raise NotNested(f"center distance d={d} must lie in [0, R_K={r_k})")

    center_k = Point2(center_c.x - d, center_c.y)
    window = r_k - d
    # farthest point of K from M_C: the orbit starts well away from any near-tangency
    start_angle = math.pi

    def objective(r_c: float) -> float:
        pair = CirclePair(Circle(center_k, r_k), Circle(center_c, r_c))
        _, defect = trace_polygon(pair, start_angle, n, winding, orientation)
        return defect.angular_defect

    r_c = _bisect(objective, 1e-6 * window, (1.0 - 1e-6) * window,
                  constants.BISECTION_WIDTH * r_k, f"solve_closure_rc(n={n}, w={winding})")
    pair = CirclePair(Circle(center_k, r_k), Circle(center_c, r_c))

    for angle in (0.3, 2.1, 4.4):
        _, defect = trace_polygon(pair, angle, n, winding, orientation)
        if defect.positional_defect > closure_tol:
            raise NoSolution(f"solution R_C={r_c:.17g} fails to close from start angle "
                             f"{angle} (defect {defect.positional_defect:.3e})")
    logger.debug("solve_closure_rc: n=%d w=%d R_K=%g d=%g -> R_C=%.17g", n, winding, r_k, d, r_c)
    return pair


def refine_closure_d(pair: CirclePair, n: int, start_angle: float, orientation: int = 1,
                     rel_bracket: float = 1e-6) -> CirclePair:
    """Polish an almost-closing pair of any configuration by bisection on d.

    R_K, R_C and M_C stay fixed; M_K moves along the line M_C M_K. Meant for
    pairs read off a drawing, where d carries only a few digits.
    """
    d0 = pair.d
    if d0 == 0.0:
        raise DegenerateInput("refine_closure_d needs distinct centers")
    axis = (pair.K.center - pair.C.center) * (1.0 / d0)

    def moved(d: float) -> CirclePair:
        return CirclePair(Circle(pair.C.center + axis * d, pair.r_k), pair.C)

    # angle about M_K, not M_C: when M_C lies outside K, rays from M_C
    # meet K twice and an angle about M_C no longer identifies a point
    def objective(d: float) -> float:
        candidate = moved(d)
        start = candidate.K.point_at(start_angle)
        orbit = run_orbit(candidate, start, n, orientation)
        return fold_angle(angle_of(orbit.closing_vertex, candidate.K.center) - start_angle)

    d = _bisect(objective, d0 * (1.0 - rel_bracket), d0 * (1.0 + rel_bracket),
                constants.BISECTION_WIDTH * pair.r_k, f"refine_closure_d(n={n})")
    refined = moved(d)
    _, defect = trace_polygon(refined, start_angle, n, 1, orientation)
    if defect.positional_defect > constants.CLOSURE_TOL:
        raise NoSolution(f"refined pair still misses closure by {defect.positional_defect:.3e}")
    logger.debug("refine_closure_d: d %.17g -> %.17g", d0, d)
    return refined


def lemma_circle_F(pair: CirclePair) -> Circle:
    """Locus of the circumcenters of (M_C, P_1, P_2) over all tangents of C"""
    return Circle(pair.K.center, abs(pair.r_k ** 2 - pair.d ** 2) / (2.0 * pair.r_c))
