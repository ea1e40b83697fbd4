"""Exception types shared across the package."""


class PfiltError(Exception):
    """Base class for all package errors."""


class InvalidType(PfiltError):
    """Unknown Cartan family or rank out of range."""


class MismatchedSystem(PfiltError):
    """Operands belong to different root systems."""


class NotDominant(PfiltError):
    """A dominant weight was required."""


class NotDivisible(PfiltError):
    """Character division has no exact quotient."""


class SchemaError(PfiltError):
    """A JSON document does not match the documented schema."""


class InvariantViolation(PfiltError):
    """Data violates a structural invariant and was rejected."""


class SimpleCharUnavailable(PfiltError):
    """No exact simple character is known for a needed weight."""

    def __init__(self, weight, message=""):
        self.weight = tuple(weight)
        super().__init__(message or "simple character unavailable for %s" % (self.weight,))


class NegativeRemainder(PfiltError):
    """Internal consistency failure during character elimination.

    Raised when a greedy highest-weight elimination meets a negative
    coefficient that a valid decomposition could never produce.
    """
