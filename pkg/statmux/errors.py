"""
Exception hierarchy for the statmux simulator.
"""

from typing import Optional


class StatmuxError(Exception):
    """Base class for every error raised by statmux."""


class InvalidArgumentError(StatmuxError, ValueError):
    """An argument is outside the domain of the operation."""


class ZeroRateError(InvalidArgumentError, ZeroDivisionError):
    """A rate of zero bits reached a hyperbolic R-D formula."""

    def __init__(self, message: str, stream: Optional[int] = None):
        if stream is not None:
            message = f"stream {stream}: {message}"
        super().__init__(message)
        self.stream = stream


class InvalidFeedbackError(InvalidArgumentError):
    """Encoder feedback with a non-positive rate or distortion."""


class UndefinedSavingError(InvalidArgumentError):
    """Saving is undefined when the baseline variance is zero."""


class MissingDataError(StatmuxError):
    """A trace or scenario lacks a value the operation needs."""


class FitError(StatmuxError):
    """Regression could not be carried out on the given samples."""


class DegenerateWeightsError(StatmuxError):
    """All allocation weights are zero."""


class UnknownAllocatorError(StatmuxError, KeyError):
    """An allocator name is not registered."""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else ""


class ConfigError(StatmuxError):
    """Scenario file failed schema validation."""

    def __init__(
        self, message: str, field: Optional[str] = None, line: Optional[int] = None
    ):
        self.field = field
        self.line = line
        prefix = ""
        if line is not None:
            prefix += f"line {line}: "
        if field:
            prefix += f"{field}: "
        super().__init__(prefix + message)


class TraceError(ConfigError):
    """Trace CSV failed validation."""


class SimulationError(StatmuxError):
    """A module error raised inside the multiplexing loop, with its context."""

    def __init__(
        self,
        message: str,
        allocator: Optional[str] = None,
        stream: Optional[int] = None,
        gop: Optional[int] = None,
    ):
        self.allocator = allocator
        self.stream = stream
        self.gop = gop
        context = ", ".join(
            f"{key}={value}"
            for key, value in (("allocator", allocator), ("stream", stream), ("gop", gop))
            if value is not None
        )
        super().__init__(f"[{context}] {message}" if context else message)
