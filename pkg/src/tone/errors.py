"""Exception hierarchy. CLI exit codes hang off ``exit_code``."""


class ToneError(Exception):
    exit_code = 3


class DomainError(ToneError, ValueError):
    """Argument outside the mathematical domain of an operation."""

    exit_code = 2


class GeometryError(ToneError):
    """Degenerate immersion, constraint violation or failed self-check."""


class TruncationError(ToneError):
    """Parameter domain cannot cover the requested extrinsic ball."""


class MissingMetadataError(ToneError):
    exit_code = 2


class ConvergenceError(ToneError):
    pass
