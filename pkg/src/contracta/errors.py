"""Exception hierarchy shared by every module."""


class ContractaError(Exception):
    """Base class for all library errors."""


class InvalidInput(ContractaError, ValueError):
    """Input violates a structural precondition (shape, symmetry, normalization)."""


class DomainError(ContractaError, ValueError):
    """A scalar function was evaluated outside its domain."""


class SingularInput(ContractaError, ValueError):
    """A matrix that must be strictly positive definite is (nearly) singular."""


class NotCompletelyPositive(ContractaError, ValueError):
    """A map was required to be completely positive but its Choi matrix is not PSD."""


class Unsupported(ContractaError, NotImplementedError):
    """The requested combination has no implementation (e.g. geodesic for a generic kappa)."""
