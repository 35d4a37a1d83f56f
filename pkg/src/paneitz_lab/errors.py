"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the validated parameter domain."""


class NumericalFailure(ArithmeticError):
    """A numerical kernel failed to meet its contract.

    ``estimate`` and ``error_bound`` carry the last iterate when the failing
    routine has one (quadrature, root finding); otherwise they are ``None``.
    """

    def __init__(self, message, estimate=None, error_bound=None):
        super().__init__(message)
        self.estimate = estimate
        self.error_bound = error_bound
