"""Exception taxonomy for the bicentric toolkit."""


class BicentricError(Exception):
    """Base class for every error raised by the package"""


# Geometry primitives

class GeometryError(BicentricError):
    pass


class DegenerateInput(GeometryError):
    pass


class PointInsideCircle(GeometryError):
    pass


class PointOnCircle(GeometryError):
    pass


class CollinearPoints(GeometryError):
    pass


class ParallelLines(GeometryError):
    pass


# Poncelet engine

class PonceletError(BicentricError):
    pass


class VertexInsideC(PonceletError, PointInsideCircle):
    pass


class VertexOnC(PonceletError, PointOnCircle):
    """The vertex lies on the incircle, so both tangents coincide"""


class AmbiguousTangent(PonceletError):
    pass


class NoSolution(PonceletError):
    pass


class NonMonotonic(PonceletError):
    pass


class PorismViolation(PonceletError):
    pass


class PoleAtDEqualsRK(PonceletError):
    pass


class NotNested(PonceletError):
    pass


# Theorem checks

class TheoremError(BicentricError):
    pass


class ParallelBisectors(TheoremError, ParallelLines):
    """Adjacent external bisectors are parallel: the excenter is at infinity"""


class TangencyViolation(TheoremError):
    pass


class DegenerateE(TheoremError):
    pass


class NoChord(TheoremError):
    pass


class WrongArity(TheoremError):
    pass


class NotConvex(TheoremError):
    pass


# Scene files

class SceneError(BicentricError):
    pass


class SchemaError(SceneError):
    pass


class InvariantError(SceneError):
    """A scene violates a named invariant; the name is kept in ``invariant``"""

    def __init__(self, invariant: str, detail: str = ""):
        self.invariant = invariant
        message = invariant if not detail else f"{invariant}: {detail}"
        super().__init__(message)


# Errors the CLI reports as numeric failures (exit code 3)
NUMERIC_FAILURES = (NoSolution, NonMonotonic, PorismViolation, PoleAtDEqualsRK)
