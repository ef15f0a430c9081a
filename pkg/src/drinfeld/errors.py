"""Exception types separating bad input from broken internal identities."""


class DomainError(ValueError):
    """Invalid input for an operation (bad modulus, non-unit divisor, ...)."""


class PrecisionError(DomainError):
    """A series operation cannot certify enough x-adic precision."""


class InternalConsistencyError(RuntimeError):
    """A derived algebraic identity failed to hold; a bug, not bad input."""
