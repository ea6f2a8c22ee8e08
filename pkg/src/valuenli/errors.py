"""Exception hierarchy shared by all pipeline stages.

Every error raised by this package derives from :class:`ValueNliError`, so
callers can catch one base class. The CLI maps subclasses onto its stable
exit codes (input/schema -> 2, scorer backend -> 3, evaluation alignment -> 4).
"""


class ValueNliError(Exception):
    """Base class for all errors raised by valuenli."""


class SchemaError(ValueNliError):
    """A tabular input is missing or carrying unexpected columns."""


class FormatError(ValueNliError):
    """A field violates a structural contract (e.g. harmonization prefix)."""


class DataValueError(ValueNliError, ValueError):
    """A cell or parameter holds a value outside its allowed vocabulary."""


class DuplicateIdError(ValueNliError):
    """An identifier that must be unique occurred more than once."""


class EmptyInputError(ValueNliError):
    """An operation that needs at least one element received none."""


class CoverageError(ValueNliError):
    """A value category required by the operation has no statements."""


class ConsistencyError(ValueNliError):
    """Cross-referenced inputs disagree (e.g. an argument without labels)."""


class AlignmentError(ValueNliError):
    """Two label sets do not cover the same argument ids."""


class ReadinessError(ValueNliError):
    """A scorer was used before being trained or connected."""


class ConnectError(ValueNliError):
    """An external scorer endpoint could not be reached or timed out."""


class ProtocolError(ValueNliError):
    """An external scorer sent a malformed or contract-violating response."""


class UndefinedAlphaError(ValueNliError):
    """Krippendorff's alpha is undefined for the given reliability data."""


class WriteError(ValueNliError):
    """An output stream failed mid-write; ``written`` rows made it out."""

    def __init__(self, message: str, written: int):
        super().__init__(message)
        self.written = written
