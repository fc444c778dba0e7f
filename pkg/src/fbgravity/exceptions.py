"""Exceptions raised by the verification engine."""


class FBGravityError(Exception):
    """Base exception for all engine errors."""
    pass


class AlgebraError(FBGravityError):
    """Raised when Lie-algebraic tables cannot be built (e.g. singular Gram matrix)."""
    pass


class ChartError(FBGravityError):
    """Raised when a chart point lies outside the exponential chart of the group."""
    pass


class DiffError(FBGravityError):
    """Raised when a derivative cannot be evaluated (step underflow, missing partials)."""
    pass


class FormDegreeError(FBGravityError):
    """Raised on degree overflow or dimension mismatch between forms."""
    pass


class SingularCoframeError(FBGravityError):
    """Raised when a coframe violates the rank hypothesis.

    Attributes:
        det: Determinant of the offending coframe matrix.
    """

    def __init__(self, message: str, det: float = 0.0):
        super().__init__(message)
        self.det = det


class VierbeinError(SingularCoframeError):
    """Raised when the vierbein e(x) is not invertible."""
    pass


class NormalizationError(FBGravityError):
    """Raised when a field violates the normalization rho_i _| omega = u_i, rho_i _| alpha = 0.

    Attributes:
        deviation: Measured max-abs deviation from the normalization.
    """

    def __init__(self, message: str, deviation: float):
        super().__init__(message)
        self.deviation = deviation


class ScenarioError(FBGravityError):
    """Base exception for scenario-related errors."""
    pass


class ScenarioNotFoundError(ScenarioError):
    """Raised when a scenario is not found in the registry."""
    pass


class ScenarioParameterError(ScenarioError):
    """Raised when a scenario string carries unknown or invalid parameters."""
    pass


class DomainError(ScenarioError):
    """Raised when no valid sample point can be drawn from a scenario domain."""
    pass
