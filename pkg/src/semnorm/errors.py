"""Shared exception types."""


class ValidationError(ValueError):
    """A contract violation in caller-supplied data: bad dimensions, zero or
    non-finite vectors, out-of-range parameters, words missing or below the
    frequency threshold, and the like.

    Distinct from :class:`semnorm.embstore.StreamFormatError`, which means the
    byte stream itself could not be decoded.
    """
