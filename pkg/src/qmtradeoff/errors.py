"""Exception types raised across the package."""


class ZeroOperatorError(ValueError):
    """Operator is numerically zero, so no canonical factorization exists."""


class NotUnitaryError(ValueError):
    """A matrix that must be unitary deviates from unitarity beyond tolerance."""


class ZeroProbabilityError(ValueError):
    """Conditioning on a measurement outcome of (numerically) zero probability."""


class InvalidStrengthError(ValueError):
    """Measurement-strength parameters outside their allowed range."""


class IrreversibleError(ValueError):
    """Reversal requested for a singular operator (strength ratio zero)."""


class IncompleteSetError(ValueError):
    """Measurement operators do not sum to the identity within tolerance."""


class DomainError(ValueError):
    """Scalar argument lies outside the domain of a closed-form expression."""


class DegenerateSampleError(ArithmeticError):
    """A sample average that must be strictly positive came out non-positive."""


class FormatError(ValueError):
    """Malformed serialized matrix or measurement set."""
