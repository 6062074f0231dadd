"""Exception types raised across the package.

All of them subclass ValueError so callers that only care about
"bad input" can keep catching that.
"""

from __future__ import annotations


class LdgmError(ValueError):
    """Base class for every rejected input in this package."""


class DimensionMismatchError(LdgmError):
    pass


class RankDeficientError(LdgmError):
    pass


class InfeasibleError(LdgmError):
    """Construction parameters that cannot be satisfied."""


class FixtureParseError(LdgmError):
    """Malformed polynomial-matrix or bit-matrix text."""


class TableCapacityError(LdgmError):
    """A lookup table would exceed its configured entry cap."""


class MissingStratumError(LdgmError):
    pass
