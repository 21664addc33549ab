"""
Scene files and verification reports
====================================

A scene bundles a circle pair, a bicentric polygon, its excenters and the
predicted circle E, plus an optional verification report. Scenes are written
as UTF-8 JSON with a fixed key order and 17 significant digits per number so
that equal scenes give byte-identical files and every double round-trips.

Scenes read back from disk are re-validated; externally authored scenes
(for instance polygons over intersecting or separated circles) enter here.
"""

from __future__ import annotations

import json
import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from bicentric import constants
from bicentric.errors import DegenerateInput, InvariantError, SchemaError
from bicentric.geometry import Circle, Line, Point2, line_through
from bicentric.poncelet import (
    BicentricPolygon,
    CirclePair,
    polygon_residuals,
    swept_angle,
)
from bicentric.theorems import (
    ExcenterSet,
    excenters,
    excircle_tangency_residual,
    is_convex,
    predicted_circle_E,
    verify_area_ratio,
    verify_main_theorem,
    verify_quadrilateral,
    verify_side_lemma,
    verify_triangle_corollary,
)

logger = logging.getLogger(__name__)

TOP_LEVEL_KEYS = (
    "schema_version", "circles", "vertices", "sides", "tangency_points",
    "excenters", "exradii", "winding", "start_angle", "generator_version", "reports",
)
REQUIRED_KEYS = TOP_LEVEL_KEYS[:-1]


@dataclass(frozen=True)
class ReportEntry:
    name: str
    value: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.value <= self.tolerance


@dataclass(frozen=True)
class VerificationReport:
    entries: Tuple[ReportEntry, ...]

    @property
    def overall_pass(self) -> bool:
        return all(entry.passed for entry in self.entries)

    def failures(self) -> List[ReportEntry]:
        return [entry for entry in self.entries if not entry.passed]

    def entry(self, name: str) -> ReportEntry:
        for item in self.entries:
            if item.name == name:
                return item
        raise KeyError(name)


@dataclass(frozen=True)
class SceneMetadata:
    n: int
    winding: int
    start_angle: float
    generator_version: str = constants.GENERATOR_VERSION


@dataclass(frozen=True)
class BicentricScene:
    pair: CirclePair
    polygon: BicentricPolygon
    excenters: ExcenterSet
    predicted_E: Circle
    metadata: SceneMetadata
    reports: Optional[VerificationReport] = None

    def with_reports(self, reports: Optional[VerificationReport]) -> "BicentricScene":
        return BicentricScene(self.pair, self.polygon, self.excenters, self.predicted_E,
                              self.metadata, reports)


# ---------------------------------------------------------------------------
# Scene assembly and verification
# ---------------------------------------------------------------------------

def build_scene(polygon: BicentricPolygon, start_angle: float,
                tol: float = constants.DEFAULT_VERIFY_TOL,
                with_reports: bool = True) -> BicentricScene:
    """Excenters, predicted E and (optionally) the report for a traced polygon"""
    exc = excenters(polygon)
    scene = BicentricScene(
        pair=polygon.pair,
        polygon=polygon,
        excenters=exc,
        predicted_E=predicted_circle_E(polygon.pair),
        metadata=SceneMetadata(polygon.n, polygon.winding, start_angle),
    )
    if with_reports:
        scene = scene.with_reports(build_report(scene, tol))
    return scene


def scene_from_vertices(K: Circle, C: Circle, vertices: Sequence[Point2],
                        winding: Optional[int] = None,
                        tol: float = constants.DEFAULT_VERIFY_TOL) -> BicentricScene:
    """Scene from externally supplied vertex data; sides join consecutive vertices"""
    if len(vertices) < 3:
        raise InvariantError("arity", f"need at least 3 vertices, got {len(vertices)}")
    pair = CirclePair(K, C)
    n = len(vertices)
    sides = tuple(line_through(vertices[i], vertices[(i + 1) % n]) for i in range(n))
    touches = tuple(side.project(C.center) for side in sides)
    if winding is None:
        swept = sum(swept_angle(C.center, vertices[i], vertices[(i + 1) % n]) for i in range(n))
        winding = abs(int(round(swept / constants.TWO_PI)))
    polygon = BicentricPolygon(pair, tuple(vertices), sides, touches, winding)
    _check_polygon(polygon)
    start_angle = math.atan2(vertices[0].y - K.center.y, vertices[0].x - K.center.x)
    return build_scene(polygon, start_angle, tol)


def _check_polygon(polygon: BicentricPolygon) -> None:
    """Raise InvariantError naming the first violated polygon invariant"""
    residuals = polygon_residuals(polygon)
    limits = {
        "vertex_on_k": constants.VERTEX_ON_K_TOL,
        "side_tangency": constants.SIDE_TANGENCY_TOL,
        "side_incidence": constants.VERTEX_ON_K_TOL,
    }
    for name, limit in limits.items():
        if residuals[name] > limit:
            raise InvariantError(name, f"residual {residuals[name]:.3e} exceeds {limit:.0e}")
    scale = constants.EPS_DEGENERATE * polygon.pair.r_k
    for i in range(polygon.n):
        if polygon.vertex(i).distance_to(polygon.vertex(i + 1)) <= scale:
            raise InvariantError("distinct_vertices", f"vertices {i} and {i + 1} coincide")
        if polygon.side(i) == polygon.side(i + 1):
            raise InvariantError("distinct_sides", f"sides {i} and {i + 1} coincide")


def build_report(scene: BicentricScene,
                 tol: float = constants.DEFAULT_VERIFY_TOL) -> VerificationReport:
    """Every residual that applies to the scene, judged against one tolerance.

    The stored excenters are checked as they are, so a tampered file fails
    instead of being silently repaired.
    """
    poly, exc = scene.polygon, scene.excenters
    r_k = scene.pair.r_k
    values: List[Tuple[str, float]] = []

    residuals = polygon_residuals(poly)
    values.append(("closure", residuals["side_incidence"]))
    values.append(("vertex_on_k", residuals["vertex_on_k"]))
    values.append(("side_tangency", residuals["side_tangency"]))
    values.append(("excircle_tangency", excircle_tangency_residual(poly, exc)))

    recomputed = excenters(poly, tangency_tol=math.inf)
    drift = max(a.distance_to(b) for a, b in zip(recomputed.excenters, exc.excenters))
    values.append(("excenter_consistency", drift / r_k))

    main = verify_main_theorem(poly, exc)
    values.append(("concyclicity", main.concyclicity_residual))
    values.append(("midpoint", main.midpoint_residual))
    values.append(("radius", main.radius_residual))
    values.append(("predicted_e", (main.predicted_E.center.distance_to(scene.predicted_E.center)
                                   + abs(main.predicted_E.radius - scene.predicted_E.radius)) / r_k))

    side_lemma = verify_side_lemma(poly, exc)
    values.append(("side_locus", side_lemma.side_locus_residual))
    values.append(("thales_antipode", side_lemma.thales_antipode_residual))

    if poly.n == 3:
        values.append(("triangle_ratio", verify_triangle_corollary(poly, exc).residual))

    if is_convex(poly):
        area = verify_area_ratio(poly, exc)
        values.append(("area_ratio", area.residual))
        values.append(("excenter_perpendicularity", area.perpendicularity_residual))
        values.append(("orthodiagonal_area", area.orthodiagonal_residual))
        if poly.n == 4:
            quad = verify_quadrilateral(poly, exc)
            values.append(("diagonal_incidence", quad.incidence_residual))
            values.append(("diagonal_perpendicularity", quad.perpendicularity_residual))
            values.append(("quadrilateral_radius", quad.radius_residual))
            values.append(("thales", quad.thales_residual))

    entries = tuple(ReportEntry(name, float(value), tol) for name, value in values)
    report = VerificationReport(entries)
    logger.debug("build_report: %d entries, overall_pass=%s", len(entries), report.overall_pass)
    return report


# ---------------------------------------------------------------------------
# JSON codec
# ---------------------------------------------------------------------------

def _number(value: float) -> str:
    # -0.0 would come back as 0 and break byte-identical round trips
    return format(float(value) + 0.0, ".17g")


def _encode(value: Any, indent: int) -> str:
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return _number(value)
    if isinstance(value, str):
        return json.dumps(value, ensure_ascii=False)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [f"{inner}{json.dumps(key)}: {_encode(item, indent + 1)}" for key, item in value.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        if all(isinstance(item, (int, float)) and not isinstance(item, bool) for item in value):
            return "[" + ", ".join(_encode(item, 0) for item in value) + "]"
        items = [inner + _encode(item, indent + 1) for item in value]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    raise TypeError(f"cannot encode {type(value).__name__}")


def _circle_dict(circle: Circle) -> Dict[str, float]:
    return {"cx": circle.center.x, "cy": circle.center.y, "r": circle.radius}


def scene_to_dict(scene: BicentricScene) -> Dict[str, Any]:
    poly = scene.polygon
    data: Dict[str, Any] = {
        "schema_version": constants.SCHEMA_VERSION,
        "circles": {
            "k": _circle_dict(scene.pair.K),
            "c": _circle_dict(scene.pair.C),
            "e": _circle_dict(scene.predicted_E),
        },
        "vertices": [[v.x, v.y] for v in poly.vertices],
        "sides": [[s.normal_x, s.normal_y, s.offset] for s in poly.sides],
        "tangency_points": [[p.x, p.y] for p in poly.tangency_points],
        "excenters": [[m.x, m.y] for m in scene.excenters.excenters],
        "exradii": [float(r) for r in scene.excenters.exradii],
        "winding": int(poly.winding),
        "start_angle": float(scene.metadata.start_angle),
        "generator_version": scene.metadata.generator_version,
    }
    if scene.reports is not None:
        data["reports"] = {
            "overall_pass": scene.reports.overall_pass,
            "entries": [
                {"name": e.name, "value": float(e.value), "tolerance": float(e.tolerance),
                 "pass": e.passed}
                for e in scene.reports.entries
            ],
        }
    return data


def scene_to_json(scene: BicentricScene) -> bytes:
    return (_encode(scene_to_dict(scene), 0) + "\n").encode("utf-8")


def _real(value: Any, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SchemaError(f"{where}: expected a number, got {value!r}")
    value = float(value)
    if not math.isfinite(value):
        raise InvariantError("finite", f"{where} is not finite")
    return value


def _point_list(data: Any, where: str, width: int = 2) -> List[List[float]]:
    if not isinstance(data, list):
        raise SchemaError(f"{where}: expected a list")
    rows = []
    for i, row in enumerate(data):
        if not isinstance(row, list) or len(row) != width:
            raise SchemaError(f"{where}[{i}]: expected {width} numbers")
        rows.append([_real(x, f"{where}[{i}]") for x in row])
    return rows


def _circle(data: Any, name: str) -> Circle:
    if not isinstance(data, dict) or set(data) != {"cx", "cy", "r"}:
        raise SchemaError(f"circles.{name}: expected keys cx, cy, r")
    cx, cy, r = (_real(data[k], f"circles.{name}.{k}") for k in ("cx", "cy", "r"))
    if r <= 0.0:
        raise InvariantError("radius", f"circles.{name}.r = {r} is not positive")
    return Circle(Point2(cx, cy), r)


def _reports(data: Any) -> VerificationReport:
    if not isinstance(data, dict) or set(data) != {"overall_pass", "entries"}:
        raise SchemaError("reports: expected keys overall_pass, entries")
    if not isinstance(data["entries"], list):
        raise SchemaError("reports.entries: expected a list")
    entries = []
    for i, item in enumerate(data["entries"]):
        if not isinstance(item, dict) or set(item) != {"name", "value", "tolerance", "pass"}:
            raise SchemaError(f"reports.entries[{i}]: expected name, value, tolerance, pass")
        entry = ReportEntry(str(item["name"]), _real(item["value"], "value"),
                            _real(item["tolerance"], "tolerance"))
        if entry.value < 0.0:
            raise InvariantError("residual", f"entry {entry.name} is negative")
        if entry.passed != item["pass"]:
            raise InvariantError("report_pass", f"entry {entry.name} has an inconsistent pass flag")
        entries.append(entry)
    report = VerificationReport(tuple(entries))
    if report.overall_pass != data["overall_pass"]:
        raise InvariantError("overall_pass", "overall_pass is not the conjunction of entries")
    return report


def scene_from_json(raw: Union[bytes, str]) -> BicentricScene:
    """Parse and re-validate a scene; d is re-derived from the stored centers"""
    try:
        data = json.loads(raw)
    except (ValueError, UnicodeDecodeError) as exc:
        raise SchemaError(f"not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise SchemaError("top level must be an object")
    if data.get("schema_version") != constants.SCHEMA_VERSION:
        raise SchemaError(f"unsupported schema_version {data.get('schema_version')!r}")
    missing = [key for key in REQUIRED_KEYS if key not in data]
    unknown = [key for key in data if key not in TOP_LEVEL_KEYS]
    if missing or unknown:
        raise SchemaError(f"missing keys {missing}, unknown keys {unknown}")

    circles = data["circles"]
    if not isinstance(circles, dict) or set(circles) != {"k", "c", "e"}:
        raise SchemaError("circles: expected keys k, c, e")
    K, C, E = _circle(circles["k"], "k"), _circle(circles["c"], "c"), _circle(circles["e"], "e")

    vertices = _point_list(data["vertices"], "vertices")
    sides = _point_list(data["sides"], "sides", width=3)
    touches = _point_list(data["tangency_points"], "tangency_points")
    centers = _point_list(data["excenters"], "excenters")
    if not isinstance(data["exradii"], list):
        raise SchemaError("exradii: expected a list")
    radii = [_real(r, "exradii") for r in data["exradii"]]

    n = len(vertices)
    if n < 3 or any(len(group) != n for group in (sides, touches, centers, radii)):
        raise InvariantError("arity", f"{n} vertices, {len(sides)} sides, {len(touches)} "
                                      f"tangency points, {len(centers)} excenters, {len(radii)} exradii")
    if any(r <= 0.0 for r in radii):
        raise InvariantError("radius", "exradii must be positive")

    winding = data["winding"]
    if isinstance(winding, bool) or not isinstance(winding, int) or winding < 0:
        raise SchemaError(f"winding must be a non-negative integer, got {winding!r}")
    if not isinstance(data["generator_version"], str):
        raise SchemaError("generator_version must be a string")

    try:
        lines = tuple(Line(*row) for row in sides)
    except DegenerateInput as exc:
        raise InvariantError("line_normal", str(exc)) from exc

    pair = CirclePair(K, C)
    polygon = BicentricPolygon(pair, tuple(Point2(*v) for v in vertices), lines,
                               tuple(Point2(*p) for p in touches), winding)
    _check_polygon(polygon)

    reports = _reports(data["reports"]) if "reports" in data else None
    return BicentricScene(
        pair=pair,
        polygon=polygon,
        excenters=ExcenterSet(tuple(Point2(*m) for m in centers), tuple(radii)),
        predicted_E=E,
        metadata=SceneMetadata(n, winding, _real(data["start_angle"], "start_angle"),
                               data["generator_version"]),
        reports=reports,
    )


def load_scene(path: Path) -> BicentricScene:
    with open(path, "rb") as f:
        return scene_from_json(f.read())


def save_scene(scene: BicentricScene, path: Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "wb") as f:
        f.write(scene_to_json(scene))
    logger.debug("wrote scene %s", path)
    return path
