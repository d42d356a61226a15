"""Exception hierarchy shared by all modules."""


class GedWalkError(Exception):
    """Base class for errors raised by this package."""


class GraphFormatError(GedWalkError, ValueError):
    """Input graph data is unreadable, malformed, or violates a precondition."""


class ConvergenceError(GedWalkError, ArithmeticError):
    """The walk series does not converge for the requested parameters, or a
    level cap was exceeded."""


class WalkOverflowError(ConvergenceError):
    """A walk accumulator became non-finite."""
