"""Exception hierarchy.

Everything raised on bad input derives from :class:`ModelError` (CLI exit 2);
hitting a configured size or attempt cap raises :class:`ResourceLimit`
(CLI exit 3).
"""

from __future__ import annotations


class ModelError(ValueError):
    """Invalid host, family, profile or distribution input."""


class ResourceLimit(RuntimeError):
    """A configured enumeration or sampling cap was exceeded."""


class InvalidPartition(ModelError):
    pass


class ForbiddenTooDense(ModelError):
    pass


class MalformedEdge(ModelError):
    pass


class EdgeOutOfHost(ModelError):
    pass


class EdgeInForbiddenSet(ModelError):
    pass


class OverlapInDisjointMode(ModelError):
    pass


class FamilyTooLarge(ModelError):
    pass


class ProfileOutOfRange(ModelError):
    pass


class ProfileTooLarge(ModelError):
    pass


class UnsupportedHost(ModelError):
    pass


class DimensionMismatch(ModelError):
    pass


class ShapeMismatch(ModelError):
    pass


class ZeroConditioningMass(ModelError):
    pass


class NegativeMass(AssertionError):
    """An exact expansion produced a negative probability (a bug, not bad input)."""


class TooLargeToEnumerate(ResourceLimit):
    pass


class RejectionBudgetExceeded(ResourceLimit):
    pass
