"""Exception hierarchy shared by every module."""


class SurfaceLinkError(Exception):
    """Base class for all errors raised by this package."""


class StructuralError(SurfaceLinkError):
    """A combinatorial map or curve violates its structural invariants."""


class InvariantViolation(SurfaceLinkError):
    """A derived quantity came out inconsistent (e.g. a half-integer genus)."""


class NotColorableError(SurfaceLinkError):
    """The face-adjacency graph is not bipartite."""


class MissingOrientationError(SurfaceLinkError):
    pass


class GaussParseError(SurfaceLinkError):
    """Malformed Gauss code text or an invalid code."""


class SiteError(SurfaceLinkError):
    """A move, splice or curve site does not match the required local pattern."""
