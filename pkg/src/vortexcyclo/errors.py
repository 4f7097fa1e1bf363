"""Exception hierarchy shared by every module."""


class VortexError(Exception):
    """Base class for all errors raised by this package."""


class ZeroField(VortexError, ValueError):
    """A magnetic field of exactly zero was requested."""


class BadGrid(VortexError, ValueError):
    pass


class GridMismatch(VortexError, ValueError):
    pass


class NonFinite(VortexError, FloatingPointError):
    pass


class UnderResolved(VortexError, ValueError):
    """The grid spacing is too coarse for the requested state."""


class TruncatedState(VortexError, ValueError):
    """The sampled state lost too much norm to the domain edge or the grid."""


class EmptySuperposition(VortexError, ValueError):
    pass


class OrderCapExceeded(VortexError, RuntimeError):
    pass


class HealthAbort(VortexError, RuntimeError):
    """Evolution stopped by a run-time health monitor.

    ``report`` holds the partial :class:`EvolutionReport` gathered before
    the abort so callers can still write what was recorded.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class BoundaryLeak(HealthAbort):
    pass


class NormDrift(HealthAbort):
    pass


class ParseError(VortexError, ValueError):
    def __init__(self, line_no, message):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class ValidationError(VortexError, ValueError):
    def __init__(self, key, message=""):
        super().__init__(f"{key}: {message}" if message else key)
        self.key = key


class NonPositiveInput(VortexError, ValueError):
    pass


class SnapshotError(VortexError, OSError):
    """Snapshot file is truncated or has the wrong magic/size."""
