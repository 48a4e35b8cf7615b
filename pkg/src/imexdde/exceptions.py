"""Exception types shared across the package."""


class ImexDdeError(Exception):
    """Base class for all errors raised by this package."""


class UnsupportedOrderError(ImexDdeError, ValueError):
    """Requested order has no built-in coefficient set or closed form."""


class StepSizeError(ImexDdeError, ValueError):
    """Step size is incompatible with the delay or the time window."""


class FactorizationError(ImexDdeError, RuntimeError):
    """The implicit system matrix is singular and cannot be factored."""


class DegeneratePolynomialError(ImexDdeError, ValueError):
    """Leading coefficient of a characteristic polynomial vanished."""


class CurvePoleError(ImexDdeError, ValueError):
    """Boundary-curve denominator vanished at a sample angle."""

    def __init__(self, theta: float):
        self.theta = theta
        super().__init__(f"boundary curve has a pole at theta = {theta!r}")


class RadiusDomainError(ImexDdeError, ValueError):
    """Disk radius outside the invertible range of the step-bound map.

    ``regime`` is ``"unconditional"`` when the radius already guarantees
    stability for every step size, and ``"no_guarantee"`` when it exceeds 1
    so no step-size bound can be derived.
    """

    def __init__(self, regime: str, message: str):
        self.regime = regime
        super().__init__(message)


class ShapeError(ImexDdeError, ValueError):
    """Matrix arguments have incompatible or non-square shapes."""


class DefinitenessError(ImexDdeError, ValueError):
    """Matrix fails a required Hermitian / positive-definiteness hypothesis."""


class NotSimultaneouslyDiagonalizableError(ImexDdeError, ValueError):
    """The matrix pair does not share an eigenbasis."""


class DegeneratePairingError(ImexDdeError, ValueError):
    """Repeated eigenvalues make the eigenpair matching ambiguous."""
