"""Error types shared across the library.

All input-validation failures are ValueErrors so callers can catch one base
class; numerical non-convergence is kept separate because it signals a
quadrature budget problem rather than a bad argument.
"""


class DomainError(ValueError):
    """Argument outside the mathematical domain of the operation."""


class PoleError(ValueError):
    """Evaluation requested at a pole of the underlying function."""


class GuardBandError(ValueError):
    """Fractional order too close to an odd integer for normalized output."""


class ConvergenceError(RuntimeError):
    """A quadrature or iteration failed to reach its tolerance budget."""

    def __init__(self, message, partial=None, error_estimate=None):
        super().__init__(message)
        self.partial = partial
        self.error_estimate = error_estimate
