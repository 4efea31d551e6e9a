"""Exception types shared across the package."""


class ChurateError(Exception):
    """Base class for package errors."""


class ConfigError(ChurateError):
    """Invalid system configuration or scenario definition."""


class DomainError(ChurateError, ValueError):
    """Argument outside the mathematical domain of an operation."""


class BracketError(ChurateError):
    """Root bracket endpoints do not enclose a sign change."""


class ConvergenceError(ChurateError):
    """Iteration limit hit before reaching the requested tolerance.

    Carries the best estimate so callers can decide whether to accept it.
    """

    def __init__(self, message, best_estimate=None, error_estimate=None):
        super().__init__(message)
        self.best_estimate = best_estimate
        self.error_estimate = error_estimate


class InfeasibleError(ChurateError):
    """No matching solution exists for the requested antenna size.

    ``scan_trace`` holds (parameter, residual) pairs from the bracketing scan
    for diagnosis.
    """

    def __init__(self, message, scan_trace=None):
        super().__init__(message)
        self.scan_trace = scan_trace or []


class OperationError(ChurateError):
    """Composite operation failed (e.g. too many quadrature nodes rejected)."""


class ConsistencyError(ChurateError):
    """Numerical result violates an identity that should hold by construction."""
