from __future__ import annotations


class MLError(Exception):
    """Base class for all package errors."""


class NoConvergence(MLError):
    """A series or iteration exhausted its budget before meeting its tolerance."""


class RegimeError(MLError):
    """Parameters fall outside the range an operation supports."""


class UnsupportedRegion(MLError):
    """The complex argument lies outside the supported evaluation region."""


class DegenerateInput(MLError):
    """An input makes the requested quantity undefined (division by zero etc.)."""


class UnsupportedDerivative(MLError):
    """Derivative order exceeds what a function family provides."""


class ToleranceNotMet(MLError):
    """Quadrature finished but the error estimate exceeds the tolerance.

    The best available result is attached as ``result``.
    """

    def __init__(self, message: str, result: object = None) -> None:
        super().__init__(message)
        self.result = result


class SingularityFailure(MLError):
    """Refinement of a weakly singular integral stalled."""


class UnknownTheorem(MLError):
    """An estimate identifier is not in the registry."""


class MissingStat(MLError):
    """An envelope needs a domain statistic that was not supplied."""


class HypothesisFailure(MLError):
    """A verification case was run with hypotheses that do not hold."""

    def __init__(self, message: str, report: object = None) -> None:
        super().__init__(message)
        self.report = report


class InsufficientData(MLError):
    """Too few points inside the fitting window."""


class NonPositiveValue(MLError):
    """A log-log fit met a zero or negative magnitude."""


class ConfigError(MLError):
    """Malformed or inconsistent experiment configuration."""
