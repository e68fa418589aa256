"""Exception types shared across the library.

Operations that reject their input for a *mathematical* reason raise one of
these; plain misuse (wrong ring, malformed JSON) raises ValueError.
"""


class DelPezzoError(Exception):
    """Base class for all domain errors raised by this package."""


class UndefinedResultantError(DelPezzoError):
    """Resultant requested in a variable neither input actually involves."""


class NonReducedBranchError(DelPezzoError):
    """The branch sextic has identically vanishing discriminant
    (it is non-reduced or contains a ruling line)."""


class NotOnCurveError(DelPezzoError):
    """A germ classification was requested at a point not on the curve."""


class NonAdeBranchError(DelPezzoError):
    """A branch-curve germ fell outside the A-D-E range where a fiber
    dictionary row exists."""


class NonMinimalModelError(DelPezzoError):
    """Valuation triple violates minimality (v(p) >= 4 and v(q) >= 6);
    the geometric source is branch data through the cone point."""


class UnsupportedDegenerationError(DelPezzoError):
    """A non-reduced branch cubic that is not a double line plus a line."""


class NotRealizableError(DelPezzoError):
    """A contact profile on the gluing line that no boundary component
    realizes (no transverse point, or full contact 3)."""


class InvalidComponentError(DelPezzoError):
    """Component data whose interior fibers leave the allowed I/II/III/IV
    range, so it is not a valid normal boundary component."""
