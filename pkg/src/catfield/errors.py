"""Exception hierarchy for catfield."""

from __future__ import annotations


class FieldError(ValueError):
    """Base class for every error raised by catfield."""


class EmptySpec(FieldError):
    pass


class UnknownLabel(FieldError):
    pass


class DuplicateAssignment(FieldError):
    pass


class InvalidWeight(FieldError):
    pass


class ZeroTotalWeight(FieldError):
    pass


class ZeroMarginalLabel(FieldError):
    def __init__(self, site: str, label: object):
        super().__init__(f"label {label!r} of site {site!r} has zero marginal probability")
        self.site = site
        self.label = label


class SiteOutOfRange(FieldError, IndexError):
    pass


class InstanceTooLarge(FieldError):
    def __init__(self, n: int, limit: int):
        super().__init__(f"a lattice over {n} sites exceeds the limit of {limit}")
        self.n = n
        self.limit = limit


class MalformedEvent(FieldError):
    pass


class ConditioningEventNull(FieldError):
    pass


class NotAPartition(FieldError):
    pass


class NotASubset(FieldError):
    pass


class TargetInScope(FieldError):
    pass


class OverlappingScopes(FieldError):
    pass


class EmptyConstraint(FieldError):
    pass


class UnknownFixture(FieldError):
    pass


class BoundsTooLarge(FieldError):
    def __init__(self, projected: int, cap: int):
        super().__init__(f"projected stream size {projected} exceeds the cap of {cap}")
        self.projected = projected
        self.cap = cap


class InputFormatError(FieldError):
    pass
