"""Shared error types."""


class TritropError(Exception):
    """Base class for all package errors."""


class InputError(TritropError):
    """Malformed or unsupported input data."""


class DegenerateCurveError(TritropError):
    """A curve violates a smoothness / genericity precondition."""


class ReductionError(TritropError):
    """Divisor reduction failed to terminate within its step budget."""


class SolveError(TritropError):
    """A linear system or template had no (unique) solution."""
