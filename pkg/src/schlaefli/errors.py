"""Exception hierarchy.

Every error raised by the library derives from :class:`SchlaefliError`, which
is itself a ``ValueError`` so callers validating user input can catch either.
"""


class SchlaefliError(ValueError):
    """Base class for all domain errors raised by this package."""


class InvalidTriangle(SchlaefliError):
    """Side lengths violate a triangle inequality or a spherical bound."""


class NearDegenerate(SchlaefliError):
    """A configuration is valid but too close to degenerate to differentiate."""


class InvalidLink(SchlaefliError):
    """The face angles at a vertex do not form a spherical triangle."""


class InvalidTetrahedron(SchlaefliError):
    """Six lengths do not bound a tetrahedron in the requested geometry."""


class WrongGeometry(SchlaefliError):
    """The operation is not defined for the requested curvature."""


class SingularJacobian(SchlaefliError):
    """The Jacobian cannot be inverted reliably.

    Attributes
    ----------
    condition : float
        2-norm condition number estimate of the offending matrix.
    """

    def __init__(self, message, condition):
        super().__init__(message)
        self.condition = condition
