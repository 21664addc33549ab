"""Shared scenes for the test suite."""

import math

import pytest

from bicentric.geometry import Circle, Point2
from bicentric.poncelet import CirclePair, solve_closure_rc, trace_polygon
from bicentric.scene_io import build_scene, scene_from_vertices
from bicentric.theorems import excenters

from figures import EXTERIOR_K, EXTERIOR_VERTICES, INTERSECTING_K, INTERSECTING_VERTICES, rebuild_figure

ORIGIN = Point2(0.0, 0.0)


@pytest.fixture
def equilateral_pair():
    return CirclePair(Circle(ORIGIN, 1.0), Circle(ORIGIN, 0.5))


@pytest.fixture
def equilateral_polygon(equilateral_pair):
    polygon, _ = trace_polygon(equilateral_pair, math.pi / 2, 3)
    return polygon


@pytest.fixture
def equilateral_scene(equilateral_polygon):
    return build_scene(equilateral_polygon, math.pi / 2)


@pytest.fixture
def square_polygon():
    pair = CirclePair(Circle(ORIGIN, 1.0), Circle(ORIGIN, 1.0 / math.sqrt(2.0)))
    polygon, _ = trace_polygon(pair, 0.0, 4)
    return polygon


@pytest.fixture
def square_scene(square_polygon):
    return build_scene(square_polygon, 0.0)


@pytest.fixture(scope="session")
def pentagon_pair():
    return solve_closure_rc(5, 1, 1.0, 0.2)


@pytest.fixture
def pentagon_polygon(pentagon_pair):
    polygon, _ = trace_polygon(pentagon_pair, 0.7, 5)
    return polygon


@pytest.fixture
def pentagon_scene(pentagon_polygon):
    return build_scene(pentagon_polygon, 0.7)


@pytest.fixture
def pentagram_polygon():
    pair = CirclePair(Circle(ORIGIN, 1.0), Circle(ORIGIN, math.cos(2.0 * math.pi / 5.0)))
    polygon, _ = trace_polygon(pair, 0.0, 5, winding=2)
    return polygon


@pytest.fixture(scope="session")
def fuss_pair():
    return solve_closure_rc(4, 1, 1.0, 0.2)


@pytest.fixture
def fuss_polygon(fuss_pair):
    polygon, _ = trace_polygon(fuss_pair, 1.1, 4)
    return polygon


@pytest.fixture
def fuss_excenters(fuss_polygon):
    return excenters(fuss_polygon)


@pytest.fixture(scope="session")
def intersecting_figure():
    return rebuild_figure(INTERSECTING_K, INTERSECTING_VERTICES)


@pytest.fixture(scope="session")
def exterior_figure():
    return rebuild_figure(EXTERIOR_K, EXTERIOR_VERTICES)


@pytest.fixture(scope="session")
def intersecting_scene(intersecting_figure):
    pair, polygon, _ = intersecting_figure
    return scene_from_vertices(pair.K, pair.C, polygon.vertices)


@pytest.fixture(scope="session")
def exterior_scene(exterior_figure):
    pair, polygon, _ = exterior_figure
    return scene_from_vertices(pair.K, pair.C, polygon.vertices)
