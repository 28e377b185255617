"""Exception types raised across the package."""


class BolzaError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(BolzaError, ValueError):
    """An argument lies outside the domain of the operation."""


class InsufficientBallError(BolzaError):
    """The enumerated group ball is too small to certify a minimum."""


class ResourceLimitError(BolzaError):
    """An enumeration exceeded its configured element cap."""


class NumericalPathologyError(BolzaError):
    """An iterative procedure failed to terminate within its step cap."""


class NonHyperbolicError(BolzaError):
    """A non-identity group element was found with |trace| <= 2."""


class ConstructionError(BolzaError):
    """A constructed object failed its numeric postcondition."""
