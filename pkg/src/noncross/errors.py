"""Exception taxonomy shared across the library.

Two families matter to callers: bad input (rejected operands, malformed
text, undefined operations) and resource caps (requests that are well formed
but too large for the configured bounds).  The CLI maps them to distinct
exit codes.
"""

from __future__ import annotations


class NoncrossError(Exception):
    """Base class for every error raised by this package."""


class InputError(NoncrossError):
    """Operands or arguments are invalid for the requested operation."""


class FormatError(InputError):
    """Text or JSON input could not be parsed."""


class GroundSetMismatch(InputError):
    """Two partitions (or sequences) live on different ground sets."""


class CrossingPartition(InputError):
    """A partition required to be non-crossing has a crossing."""


class NotComparable(InputError):
    """An interval operation was asked for an incomparable pair."""


class OrderMismatch(InputError):
    """Sequences or series of different truncation orders were combined."""


class VanishingFirstMoment(InputError):
    """An operation requiring an invertible first coefficient got zero."""


class IrrationalResult(InputError):
    """The exact value is irrational and cannot be returned as a fraction."""


class NotBelowCoxeterElement(InputError):
    """A group element is not below the reference Coxeter element."""


class ResourceCapExceeded(NoncrossError):
    """The request exceeds a configured enumeration or rank cap."""
