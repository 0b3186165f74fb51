"""Exception hierarchy shared by all modules."""


class RPFError(Exception):
    """Base class for every error raised by this package."""


class DomainError(RPFError, ValueError):
    """An argument lies outside the domain of the requested quantity."""


class PrecisionError(RPFError):
    """The working precision is too low for the requested operation."""


class ConvergenceError(RPFError):
    """A series or iteration did not converge within its cap."""


class ConsistencyError(RPFError):
    """A mandatory internal cross-check failed."""


class CalibrationError(RPFError):
    """No candidate reading satisfied a calibration identity."""
