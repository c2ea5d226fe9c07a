"""Exception hierarchy shared by all kleintunnel modules."""


class KleinTunnelError(Exception):
    """Base class for every error raised by this package."""


class DomainError(KleinTunnelError):
    """Input outside the mathematical domain of an operation."""


class BoundaryError(DomainError):
    """Energy sits exactly on a Klein-zone boundary (E = m or E = U - m).

    Kinematic quantities are still defined there, but every transmission
    formula divides by p or q, so the transmission layer rejects these
    points explicitly instead of emitting NaN.
    """


class GapEdgeError(DomainError):
    """q = 0: the energy touches the edge of the mass gap under the step."""


class SingularSpinorError(DomainError):
    """Spinor denominator E - U + m vanishes (gap edge in the shifted region)."""


class DegenerateRampError(DomainError):
    """ell = 0 (or U = 0): the linear-ramp parametrisation is singular.

    Callers must take the rectangular-step path instead.
    """


class PoleError(DomainError):
    """Confluent hypergeometric pole: beta is a nonpositive integer."""


class PrecisionEscalationError(KleinTunnelError):
    """No precision rung of the ladder can certify the requested tolerance."""

    def __init__(self, message, alpha=None, beta=None, z=None):
        super().__init__(message)
        self.alpha = alpha
        self.beta = beta
        self.z = z


class UndefinedPhaseError(KleinTunnelError):
    """arg(a) or arg(b) requested for a vanishing matrix element."""


class SingularStepError(KleinTunnelError):
    """|a|^2 - |b|^2 = 0: the step matrix cannot be composed into a barrier."""


class UnsupportedShapeError(KleinTunnelError):
    """No analytic route for this (model, shape); use the numeric engine."""


class OracleRangeError(KleinTunnelError):
    """Profile exceeds the dynamic range the double-precision oracle can resolve."""


class StiffnessError(KleinTunnelError):
    """ODE step size underflow; carries the position where it happened."""

    def __init__(self, message, x=None):
        super().__init__(message)
        self.x = x


class UsageError(KleinTunnelError, ValueError):
    """Invalid scan/CLI configuration (maps to exit code 2)."""


class NearGapWarning(UserWarning):
    """Plateau projection is ill-conditioned because |U - E| is close to m."""
