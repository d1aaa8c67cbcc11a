"""Exception hierarchy for lpextremal."""


class LpExtremalError(Exception):
    """Base class for all package errors."""


class InvalidTolerance(LpExtremalError, ValueError):
    pass


class InvalidP(LpExtremalError, ValueError):
    pass


class DegreeOutOfRange(LpExtremalError, ValueError):
    pass


class ExponentMismatch(LpExtremalError, ValueError):
    pass


class ToleranceNotReached(LpExtremalError):
    """Quadrature stopped at its finest level above the requested tolerance.

    The best available estimate is attached as ``result``.
    """

    def __init__(self, message, result):
        super().__init__(message)
        self.result = result


class NotConverged(LpExtremalError):
    """The optimizer stopped before meeting its convergence criteria.

    ``solution`` holds the best point found (with ``converged=False``).
    """

    def __init__(self, message, solution):
        super().__init__(message)
        self.solution = solution


class CheckFailed(LpExtremalError):
    def __init__(self, message, points=()):
        super().__init__(message)
        self.points = list(points)


class InequalityViolated(LpExtremalError):
    """m_n(f) exceeded C*·||f||_p: a solver or quadrature bug, never expected."""
