"""Exception types shared across the package."""


class DscatError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(DscatError):
    """Input lies outside the admissible domain (branch point proximity, a <= 1, c = 0, ...)."""


class PathError(DomainError):
    """A polyline path violates the branch-point clearance or closure rules."""


class ContinuationError(DscatError):
    """Analytic continuation lost the curve: sheet residual or determinant drift too large."""


class StepLimitExceeded(DscatError):
    """Adaptive integrator exceeded its step budget."""


class NotInSU11(DscatError):
    """Matrix failed the SU(1,1) membership precondition."""


class PoleError(DscatError):
    """Moebius transformation evaluated at a pole."""


class DegenerateDenominator(DscatError):
    """Period-function denominator vanished; the scan records a gap at this point."""


class LostBracket(DscatError):
    """Sign change disappeared while refining a bracket (grid aliasing)."""


class NotAdmissible(DscatError):
    """Crossing value fails |f| > 1, or the bracket refined onto a pole instead of a root."""


class VerificationFailed(DscatError):
    """Gauged monodromy failed the SU(1,1) closure test."""

    def __init__(self, loop_index: int, residual: float):
        self.loop_index = loop_index
        self.residual = residual
        super().__init__(
            f"gauged monodromy Phi{loop_index} failed SU(1,1) closure "
            f"(residual {residual:.3e})"
        )


class ResonantExponent(DscatError):
    """Indicial exponent is within tolerance of an integer (excluded log-term case)."""


class EigenvalueMismatch(DscatError):
    """Measured end-loop eigenvalues disagree with the indicial prediction."""


class DegeneratePoint(DscatError):
    """dg or dG too small for the frame-reconstruction or Schwarzian diagnostics."""


class SingularPoint(DscatError):
    """Operation requires a regular point but |g| = 1 within tolerance."""
