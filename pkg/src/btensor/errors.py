"""Exception types shared across the package."""


class BTensorError(Exception):
    """Base class for all library errors."""


class InputError(BTensorError):
    """Malformed input: bad shapes, non-finite entries, unparseable files."""


class PreconditionError(BTensorError):
    """An operation was called on a tensor outside its admissible domain."""


class ClassViolationError(PreconditionError):
    """A required class membership test failed.

    Carries the witness of the violated inequality: the offending row (or
    row pair) together with both sides of the failed comparison.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class DegenerateMarginError(PreconditionError):
    """A construction margin underflowed and no valid output exists."""


class InternalError(BTensorError):
    """A constructed object failed its own post-construction checks."""
