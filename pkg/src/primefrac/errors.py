"""Exception types shared across the package.

The CLI maps these onto exit codes: ``ModelRejection`` -> 3,
``ResourceCapError`` -> 4, plain ``ValueError`` -> 2.
"""


class ModelRejection(ValueError):
    """A finite model would not faithfully represent the operator on Z."""


class AliasingError(ModelRejection):
    """Cyclic model too small: supports would wrap around Z_M."""


class ArcOverlapError(ModelRejection):
    """Two bump-localized arcs overlap where disjointness is required."""

    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


class ResourceCapError(RuntimeError):
    """Requested computation exceeds the configured size cap."""

    def __init__(self, message, required=None):
        super().__init__(message)
        self.required = required


class EmptyTableError(ValueError):
    """A prime table was requested for a range containing no primes."""
