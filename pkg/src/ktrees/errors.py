"""Exception types shared across the package."""


class KTreesError(Exception):
    """Base class for all package errors."""


class InvalidArgument(KTreesError, ValueError):
    """An argument is outside its documented domain."""


class InstanceTooLarge(KTreesError, ValueError):
    """A brute-force oracle was asked to handle more than its guard allows."""


class DegenerateInput(KTreesError, ValueError):
    """The input is valid but the requested quantity is not defined for it."""


class BelowThreshold(KTreesError, ValueError):
    """A fixed-point root was requested below the threshold where it exists."""


class NotDeeplyConnected(KTreesError, ValueError):
    """The graph does not contain the required number of disjoint spanning trees."""
