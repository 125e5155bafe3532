"""Exception types shared across the package."""


class SadicError(Exception):
    """Base class for precondition violations and analysis failures."""


class HorizonExceededError(SadicError):
    """A finite-window directive sequence was queried beyond its horizon."""


class NonStabilizingError(SadicError):
    """A limit-word prefix kept changing up to the maximum expansion depth."""


class NotSaturatedError(SadicError):
    """A factor set did not stabilize within the allowed generating depth."""


class NotPrimitiveError(SadicError):
    """A positive product was required but none was found on the window."""


class ConvergenceError(SadicError):
    """An iteration did not reach the requested tolerance within its depth."""


class OrthogonalityError(SadicError):
    """A projection direction is (numerically) orthogonal to the target line."""


class NotOnLineError(SadicError):
    """A point expected on the antidiagonal line has coordinates not summing to 0."""


class DegenerateHeightsError(SadicError):
    """A stripe slice hit a segment endpoint exactly; heights are degenerate."""


class ImageTooLargeError(SadicError):
    """Materializing a substitution image would exceed the configured letter cap."""


class ConfigError(SadicError):
    """Invalid configuration file or option."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
