"""Exception types raised across the package."""


class BuresCorrError(Exception):
    """Base class for all package errors."""


class InvalidState(BuresCorrError):
    """State parameters violate positivity / normalization constraints."""


class NonHermitian(BuresCorrError):
    """Matrix asymmetry exceeds the Hermiticity tolerance."""


class NotPSD(BuresCorrError):
    """Matrix has an eigenvalue below the positive-semidefinite tolerance."""


class DomainError(BuresCorrError):
    """Scalar argument outside its documented domain."""


class BranchInconsistency(BuresCorrError):
    """Selected closest-product branch is not the best candidate, or its
    denominator degenerated; indicates a numerical or logic fault."""


class AnsatzViolation(BuresCorrError):
    """Numerical search found a strictly better point than the closed form."""


class QuadratureFailure(BuresCorrError):
    """Adaptive quadrature could not reach tolerance at maximum depth."""
