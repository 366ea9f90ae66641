"""Exception types raised by the wheq library.

Filesystem problems use the builtin OSError family (FileNotFoundError for
missing inputs); bad argument values use ValueError. The classes below cover
conditions specific to this library that callers may want to catch and
handle, e.g. to fall back to an identity transform.
"""


class WheqError(Exception):
    """Base class for wheq-specific errors."""


class UnsupportedFormatError(WheqError):
    """File is not one of the supported image formats / variants."""


class CorruptImageError(WheqError):
    """File matched a supported format but could not be decoded."""


class EmptySegmentError(WheqError):
    """A histogram segment holds no probability mass; its CDF is undefined."""


class NoValidThresholdError(WheqError):
    """No split point satisfies the segment-mass floors (e.g. flat image)."""


class DomainGapError(WheqError):
    """Partial tone maps do not cover the full intensity range when joined."""
