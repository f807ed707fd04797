"""Exception hierarchy shared by every module of the package."""


class IsoredError(Exception):
    """Base class for all errors raised by isored."""


class DomainError(IsoredError, ValueError):
    """An argument lies outside the domain of an operation."""


class SingularityError(IsoredError, ArithmeticError):
    """A matrix over the rational-function field is symbolically singular."""


class PoleError(IsoredError, ArithmeticError):
    """Evaluation hit a pole that does not cancel.

    ``entry`` is the 0-based ``(row, col)`` index of the offending matrix
    entry, or the vector component index, when known.
    """

    def __init__(self, message, entry=None, point=None):
        super().__init__(message)
        self.entry = entry
        self.point = point


class ResonanceError(PoleError):
    """A boundary force is unbounded because the frequency is a resonance."""


class ResourceError(IsoredError, RuntimeError):
    """A symbolic degree exceeded the configured cap."""


class NumericError(IsoredError, ArithmeticError):
    """A floating-point kernel failed to converge."""

    def __init__(self, message, residuals=None):
        super().__init__(message)
        self.residuals = residuals


class ConsistencyError(IsoredError, AssertionError):
    """Two independent computation paths disagreed."""


class ParseError(DomainError):
    """Malformed input text; carries the 1-based line and column."""

    def __init__(self, message, line=None, col=None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if col is not None:
            where.append(f"col {col}")
        full = f"{message} ({', '.join(where)})" if where else message
        super().__init__(full)
        self.line = line
        self.col = col
