"""
SVG rendering of bicentric scenes
=================================

Draws K, C, E, the excircles, the polygon, the external bisectors and the
named points as a standalone SVG 1.1 document. Output is a pure function of
the scene and the options: fixed element order, fixed number formatting, no
ids or timestamps, so equal scenes give byte-identical files.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List, Sequence, Tuple

from bicentric import constants
from bicentric.geometry import Circle, Point2
from bicentric.scene_io import BicentricScene

logger = logging.getLogger(__name__)

# Stroke colors of the figures
COLOR_K = "#006400"
COLOR_C = "#0000ff"
COLOR_E = "#ff0000"
COLOR_POLYGON = "#993300"
COLOR_EXCIRCLE = "#ff8c00"
COLOR_BISECTOR = "#000000"
COLOR_POINT = "#000000"
COLOR_TANGENCY = "#4d4d4d"

CIRCLE_STROKE_PX = 1.5
POLYGON_STROKE_PX = 1.5
BISECTOR_STROKE_PX = 0.5
POINT_RADIUS_PX = 2.5
MARGIN = 0.05


@dataclass(frozen=True)
class RenderOptions:
    width_px: int = constants.DEFAULT_WIDTH_PX
    show_excircles: bool = False
    show_bisectors: bool = False


class _Frame:
    """Maps scene coordinates to pixels with y pointing up"""

    def __init__(self, circles: Sequence[Circle], width_px: int):
        xmin = min(c.center.x - c.radius for c in circles)
        xmax = max(c.center.x + c.radius for c in circles)
        ymin = min(c.center.y - c.radius for c in circles)
        ymax = max(c.center.y + c.radius for c in circles)
        pad = MARGIN * max(xmax - xmin, ymax - ymin)
        self.xmin, self.ymax = xmin - pad, ymax + pad
        span_x = xmax - xmin + 2.0 * pad
        span_y = ymax - ymin + 2.0 * pad
        self.scale = width_px / span_x
        self.width = width_px
        self.height = max(1, int(round(span_y * self.scale)))

    def xy(self, p: Point2) -> Tuple[float, float]:
        return (p.x - self.xmin) * self.scale, (self.ymax - p.y) * self.scale

    def length(self, value: float) -> float:
        return value * self.scale


def _num(value: float) -> str:
    text = f"{value:.3f}"
    return "0.000" if text == "-0.000" else text


def _circle(frame: _Frame, circle: Circle, stroke: str, width: float) -> str:
    cx, cy = frame.xy(circle.center)
    return (f'  <circle cx="{_num(cx)}" cy="{_num(cy)}" r="{_num(frame.length(circle.radius))}" '
            f'fill="none" stroke="{stroke}" stroke-width="{width}"/>')


def _segment(frame: _Frame, a: Point2, b: Point2, stroke: str, width: float) -> str:
    x1, y1 = frame.xy(a)
    x2, y2 = frame.xy(b)
    return (f'  <line x1="{_num(x1)}" y1="{_num(y1)}" x2="{_num(x2)}" y2="{_num(y2)}" '
            f'stroke="{stroke}" stroke-width="{width}"/>')


def _point(frame: _Frame, p: Point2, fill: str) -> str:
    cx, cy = frame.xy(p)
    return f'  <circle cx="{_num(cx)}" cy="{_num(cy)}" r="{POINT_RADIUS_PX}" fill="{fill}" stroke="none"/>'


def render_svg(scene: BicentricScene, options: RenderOptions = RenderOptions()) -> bytes:
    """Standalone SVG for the scene; circles first, then sides, bisectors and points"""
    if options.width_px <= 0:
        raise ValueError(f"width_px must be positive, got {options.width_px}")

    pair, poly, exc = scene.pair, scene.polygon, scene.excenters
    excircles = exc.excircles
    frame = _Frame((pair.K, pair.C, scene.predicted_E) + excircles, options.width_px)

    body: List[str] = [
        _circle(frame, pair.K, COLOR_K, CIRCLE_STROKE_PX),
        _circle(frame, pair.C, COLOR_C, CIRCLE_STROKE_PX),
        _circle(frame, scene.predicted_E, COLOR_E, CIRCLE_STROKE_PX),
    ]
    if options.show_excircles:
        body.extend(_circle(frame, c, COLOR_EXCIRCLE, CIRCLE_STROKE_PX) for c in excircles)

    points = " ".join(f"{_num(x)},{_num(y)}" for x, y in (frame.xy(v) for v in poly.vertices))
    body.append(f'  <polygon points="{points}" fill="none" stroke="{COLOR_POLYGON}" '
                f'stroke-width="{POLYGON_STROKE_PX}" stroke-linejoin="round"/>')

    if options.show_bisectors:
        # the external bisector at A_i passes through M_{i-1} and M_i
        for i in range(poly.n):
            body.append(_segment(frame, exc.excenters[i - 1], exc.excenters[i],
                                 COLOR_BISECTOR, BISECTOR_STROKE_PX))

    body.extend(_point(frame, p, COLOR_TANGENCY) for p in poly.tangency_points)
    body.extend(_point(frame, v, COLOR_POINT) for v in poly.vertices)
    body.extend(_point(frame, m, COLOR_POINT) for m in exc.excenters)
    for center in (pair.K.center, pair.C.center, scene.predicted_E.center):
        body.append(_point(frame, center, COLOR_POINT))

    header = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{frame.width}" height="{frame.height}" viewBox="0 0 {frame.width} {frame.height}">',
        f"  <!-- {scene.metadata.generator_version}: n={poly.n} winding={poly.winding} -->",
    ]
    svg = "\n".join(header + body + ["</svg>", ""])
    logger.debug("render_svg: %d elements, %dx%d px", len(body), frame.width, frame.height)
    return svg.encode("utf-8")
