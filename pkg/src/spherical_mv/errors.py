"""Exception types shared across modules."""


class SphericalError(Exception):
    """Base class for numerical failures in this package."""


class DomainError(SphericalError, ValueError):
    def __init__(self, msg, value=None):
        super().__init__(msg)
        self.value = value


class RangeError(SphericalError, ValueError):
    pass


class PoleError(DomainError):
    """A Gamma factor hit a pole; `factor` names which one."""

    def __init__(self, msg, value=None, factor=None):
        super().__init__(msg, value)
        self.factor = factor


class ResonanceError(DomainError):
    """<mu,mu> - 2i<mu,lambda> vanished for mu = k*alpha."""

    def __init__(self, msg, value=None, k=None):
        super().__init__(msg, value)
        self.k = k


class ConvergenceError(SphericalError):
    def __init__(self, msg, estimate=None):
        super().__init__(msg)
        self.estimate = estimate


class TruncationError(ConvergenceError):
    pass


class DegenerateConfigurationError(DomainError):
    pass


class SearchExhausted(SphericalError):
    def __init__(self, msg, largest=None):
        super().__init__(msg)
        self.largest = largest
