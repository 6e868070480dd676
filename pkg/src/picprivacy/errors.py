"""Exception types shared across the toolkit.

``DataFormatError`` covers malformed or inconsistent input files (CLI exit
code 2); ``ComputationError`` covers failures inside a computation that was
given well-formed inputs (CLI exit code 1).
"""


class DataFormatError(ValueError):
    """An input file is malformed or violates a data invariant."""


class ComputationError(RuntimeError):
    """A computation could not be carried out (e.g. single-class training)."""
