"""Exception hierarchy for the temporal table engine.

Every error raised by this package derives from :class:`TemporalTableError`,
so callers can catch engine failures without catching unrelated bugs.
"""

from __future__ import annotations


class TemporalTableError(Exception):
    """Base class for all engine errors."""


class PreconditionError(TemporalTableError, ValueError):
    """An argument violates a documented precondition."""


class SchemaError(TemporalTableError):
    """Column missing, wrong kind, or otherwise incompatible with the schema."""


class ValidityError(TemporalTableError):
    """The (key, index) contract of a temporal table would be violated."""


class DuplicateIndexError(ValidityError):
    """Construction failed because (key, index) pairs are not unique.

    Carries the offending rows so callers can inspect them.
    """

    def __init__(self, message, report):
        super().__init__(message)
        self.report = report


class MissingIndexError(ValidityError):
    """The index column contains missing values."""


class UnsupportedOperationError(TemporalTableError):
    """Operation requires a regular interval (or is otherwise not applicable)."""


class ConversionError(TemporalTableError):
    """A time value cannot be converted to the requested granularity."""


class GapError(TemporalTableError):
    """Operation refuses to run over implicit gaps; fill them first."""


class TypedResultError(TemporalTableError):
    """A typed rolling variant received a result of the wrong kind."""


class ParseError(TemporalTableError, ValueError):
    """Text does not parse as a time value or time expression."""


class RegistrationError(TemporalTableError):
    """An index adapter failed registration validation."""


class IngestError(TemporalTableError):
    """A CSV cell could not be ingested; carries the 1-based data row number."""

    def __init__(self, message, row=None):
        super().__init__(message)
        self.row = row


class UsageError(TemporalTableError):
    """Bad command-line arguments."""
