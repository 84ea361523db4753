"""Two-sided numerical bounds for the fundamental tone of minimal submanifolds."""

__version__ = "0.1.0"

from tone.errors import (  # noqa: F401
    ToneError,
    DomainError,
    GeometryError,
    TruncationError,
    MissingMetadataError,
    ConvergenceError,
)
