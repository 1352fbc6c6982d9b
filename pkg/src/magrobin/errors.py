"""Exception hierarchy shared by all solver and geometry modules.

Exit-code convention for the command line tool: invalid input maps to 2,
numeric failures (non-convergence, bad discretization) map to 3.
"""


class MagrobinError(Exception):
    """Base class for all package errors."""

    exit_code = 1


class InvalidInputError(MagrobinError):
    """User-supplied data violates a documented precondition."""

    exit_code = 2


class InvalidGridError(InvalidInputError):
    """Radial grid too coarse, non-monotone, or inconsistent with R."""


class InvalidDomainError(InvalidInputError):
    """Domain specification is self-intersecting, degenerate, or malformed."""


class InvalidCurveError(InvalidInputError):
    """Polyline passed where a closed curve is required."""


class UnsupportedKindError(InvalidInputError):
    """Operation does not support this domain kind (e.g. curvature of a polygon)."""


class NotRadialError(InvalidInputError):
    """Disk ground state has a non-zero angular mode; no radial profile exists."""


class NotAdmissibleError(InvalidInputError):
    """Parameter pair outside the admissible set required by the operation."""


class ConfigError(InvalidInputError):
    """Run configuration violates documented minima or cannot be parsed."""


class NumericFailureError(MagrobinError):
    """Solver did not converge or a guaranteed bracket failed.

    Carries the residual norm (or bracket diagnostic) when available.
    """

    exit_code = 3

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class MeshQualityError(NumericFailureError):
    """Triangulation quality below the structural minimum; refine n_theta."""
