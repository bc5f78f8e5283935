"""Error taxonomy shared by all modules.

Every failure the library can raise derives from :class:`DircurvError` and
carries a stable machine-readable ``code`` plus an optional ``location``
(a source position, an index, or a printed subtree — whatever locates the
problem).  The two intermediate bases split failures the way the CLI maps
them to exit codes: bad input (exit 2) versus numerical breakdown (exit 3).
"""

from __future__ import annotations


class DircurvError(Exception):
    """Base class for all library errors."""

    code = "error"
    exit_code = 1

    def __init__(self, message: str, location=None):
        super().__init__(message)
        self.message = message
        self.location = location

    def as_json_dict(self) -> dict:
        return {"code": self.code, "message": self.message, "location": self.location}


class InputError(DircurvError):
    """The caller supplied something invalid (bad text, wrong point, bad index)."""

    code = "input_error"
    exit_code = 2


class NumericalError(DircurvError):
    """A computation could not be completed at the required accuracy."""

    code = "numerical_error"
    exit_code = 3


# --- expression language -------------------------------------------------

class ExpressionSyntaxError(InputError):
    code = "syntax_error"

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (position {position})", location=position)
        self.position = position


class UnknownVariableError(InputError):
    code = "unknown_variable"

    def __init__(self, index: int, n: int, position: int):
        super().__init__(
            f"variable x{index} is outside x1..x{n} (position {position})",
            location=position,
        )
        self.index = index
        self.position = position


class NonIntegerExponentError(InputError):
    code = "non_integer_exponent"

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (position {position})", location=position)
        self.position = position


class DivisionByZeroError(NumericalError):
    code = "division_by_zero"

    def __init__(self, subtree: str):
        super().__init__(f"division by zero while evaluating {subtree!r}", location=subtree)


# --- linear algebra -------------------------------------------------------

class DimensionMismatchError(InputError):
    code = "dimension_mismatch"


class RankDeficientError(NumericalError):
    code = "rank_deficient"

    def __init__(self, index: int):
        super().__init__(f"input vector {index} is in the span of its predecessors", location=index)
        self.index = index


class NotSymmetricError(InputError):
    code = "not_symmetric"


# --- body ------------------------------------------------------------------

class InvalidBodyError(InputError):
    code = "invalid_body"


class NotOnBoundaryError(InputError):
    code = "not_on_boundary"


class NonSmoothPointError(InputError):
    code = "non_smooth_point"


class OrientationViolationError(InputError):
    code = "orientation_violation"


class RayEscapesError(NumericalError):
    code = "ray_escapes"


# --- curvature ---------------------------------------------------------------

class ZeroDirectionError(InputError):
    code = "zero_direction"


class NotTangentError(InputError):
    code = "not_tangent"


class NegativeCurvatureError(InputError):
    code = "negative_curvature"


class NotInteriorError(InputError):
    code = "not_interior"


# --- goldman -----------------------------------------------------------------

class InvalidIndexError(InputError):
    code = "invalid_index"


class DegenerateTangentError(NumericalError):
    code = "degenerate_tangent"


# --- oracle ------------------------------------------------------------------

class NoBoundaryIntersectionError(NumericalError):
    code = "no_boundary_intersection"
