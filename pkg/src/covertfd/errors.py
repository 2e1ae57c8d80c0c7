"""Exception and warning types shared across the package.

Errors are semantic rather than generic so callers (and the CLI) can map
failure modes to exit codes without string matching.
"""

from __future__ import annotations


class CovertFdError(Exception):
    """Base class for all package-specific errors."""


class ConfigError(CovertFdError):
    """Invalid or inconsistent user-supplied configuration."""


class NoSignChangeError(CovertFdError):
    """A bracketing root finder was called on a bracket without a sign change."""


class ConvergenceError(CovertFdError):
    """An iterative routine exhausted its iteration budget."""


class ConstraintViolationError(CovertFdError):
    """The miss-detection closed form was evaluated outside its validity
    region d > g (AN scale must dominate the signal scale)."""

    def __init__(self, d: float, g: float, message: str | None = None):
        self.d = d
        self.g = g
        super().__init__(
            message
            or f"closed form requires d > g, got d = {d:.6g}, g = {g:.6g}"
        )


class InfeasibleError(CovertFdError):
    """No design satisfies the covertness constraint for the given inputs."""

    def __init__(self, message: str, reasons: tuple[str, ...] = ()):
        self.reasons = tuple(reasons)
        super().__init__(message)


class ClampWarning(UserWarning):
    """A probability left [0, 1] by more than the documented tolerance and
    was clamped; carries the raw value so the event is never silent."""


class NoInteriorMinWarning(UserWarning):
    """A threshold search found the objective monotone on the search range
    and returned a boundary point."""


class CeilingWarning(UserWarning):
    """A per-realization transmit power hit the configured ceiling."""
