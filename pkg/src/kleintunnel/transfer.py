"""Transfer matrices for sharp and linear-ramp steps, and their barriers.

Charge conjugation forces every step matrix into the form
[[a, b], [b*, a*]], so only the pair (a, b) is stored; the structure is
enforced by construction and never symmetrised at runtime.  The flux
identity fixes the determinant:

    |a|^2 - |b|^2 = (p/q) D,

with D the model ratio (kinematics.d_ratio).  Composing a step with its
space-reflected inverse yields the symmetric-barrier matrix
[[A, B], [B*, A*]] with |A|^2 - |B|^2 = 1.

Deep ramps make |a|, |b| grow like exp(2 pi kappa) with
kappa = m^2 ell / (4U); when the predicted magnitude cannot be held in a
double the pair is stored scaled, with the common natural log of the scale
in log_scale (physical a = a * e^{log_scale}).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import GapEdgeError, SingularStepError, UndefinedPhaseError
from .kinematics import Model, PhysParams, d_ratio, momentum_p, momentum_q
from .specfun import DEFAULT_POLICY, PrecisionPolicy, sauter_basis

#: switch to the scaled (log-magnitude) representation above this magnitude
_SCALE_LIMIT = 1e120


@dataclass(frozen=True)
class StepMatrix:
    """Step transfer matrix data (a, b), possibly log-scaled."""

    a: complex
    b: complex
    model: Model
    params: PhysParams
    log_scale: float = 0.0

    def det_target(self) -> float:
        """(p/q) D: the exact determinant demanded by flux conservation."""
        return (
            momentum_p(self.params)
            / momentum_q(self.params)
            * d_ratio(self.params, self.model)
        )

    def det_numeric(self) -> float:
        """|a|^2 - |b|^2 as actually stored (unscaled representation only)."""
        if self.log_scale != 0.0:
            raise ValueError("determinant of a log-scaled matrix is not representable")
        return abs(self.a) ** 2 - abs(self.b) ** 2

    def log_abs_a(self) -> float:
        return math.log(abs(self.a)) + self.log_scale

    def log_abs_b(self) -> float:
        return math.log(abs(self.b)) + self.log_scale

    def as_matrix(self):
        import numpy as np

        scale = math.exp(self.log_scale)
        return np.array(
            [
                [self.a * scale, self.b * scale],
                [self.b.conjugate() * scale, self.a.conjugate() * scale],
            ],
            dtype=complex,
        )


@dataclass(frozen=True)
class BarrierMatrix:
    """Symmetric-barrier matrix data (A, B), unit determinant."""

    A: complex
    B: complex
    log_scale: float = 0.0

    def log_abs_A(self) -> float:
        return math.log(abs(self.A)) + self.log_scale

    def det_numeric(self) -> float:
        if self.log_scale != 0.0:
            raise ValueError("determinant of a log-scaled matrix is not representable")
        return abs(self.A) ** 2 - abs(self.B) ** 2


@dataclass(frozen=True)
class PhasePair:
    """Principal-branch arguments of a and b (the barrier phase offsets)."""

    phi_a: float
    phi_b: float


def _momenta(params: PhysParams):
    p = momentum_p(params)
    q = momentum_q(params)
    if q == 0.0:
        raise GapEdgeError("q = 0: step matrix undefined at the gap edge")
    return p, q


def rect_step_matrix(params: PhysParams, model: Model) -> StepMatrix:
    """Sharp step: a = (1 + (p/q) D)/2, b = (1 - (p/q) D)/2, both real."""
    p, q = _momenta(params)
    r = p / q * d_ratio(params, model)
    return StepMatrix(
        a=complex(0.5 * (1.0 + r)),
        b=complex(0.5 * (1.0 - r)),
        model=model,
        params=params,
    )


def sauter_step_matrix(
    params: PhysParams, policy: PrecisionPolicy = DEFAULT_POLICY
) -> StepMatrix:
    """Linear-ramp step matrix from the closed-form ramp eigenfunctions.

    Dirac only: the ramp admits no comparable closed form for Klein-Gordon,
    which is served by the numeric engine instead.  A sharp edge (ell = 0)
    is routed to rect_step_matrix since the ramp coordinate degenerates.
    """
    if params.ell == 0.0:
        return rect_step_matrix(params, Model.DIRAC)
    p, q = _momenta(params)
    E, m, U, ell = params.E, params.m, params.U, params.ell
    b0 = sauter_basis(0.0, params, policy)
    b1 = sauter_basis(ell, params, policy)
    R = b0.f * b1.f.conjugate() - b0.g.conjugate() * b1.g
    S = b0.f * b1.g.conjugate() - b0.g * b1.f.conjugate()
    log_scale = 0.0
    mag = max(abs(R), abs(S))
    if mag > _SCALE_LIMIT:
        R /= mag
        S /= mag
        log_scale = math.log(mag)
    Pp, Pm = E + m + p, E + m - p
    Qp, Qm = E - U + m + q, E - U + m - q
    pref = cmath.exp(-1j * q * ell) / (4.0 * q * (E + m))
    Rc, Sc = R.conjugate(), S.conjugate()
    a = pref * (Pp * Qp * R - Pm * Qm * Rc + 1j * (Pp * Qm * S + Pm * Qp * Sc))
    b = pref * (Pm * Qp * R - Pp * Qm * Rc + 1j * (Pm * Qm * S + Pp * Qp * Sc))
    return StepMatrix(a=a, b=b, model=Model.DIRAC, params=params, log_scale=log_scale)


def translation_matrix(k: float, a_shift: float):
    """Diagonal of the translation matrix: (e^{ika}, e^{-ika})."""
    ph = cmath.exp(1j * k * a_shift)
    return ph, 1.0 / ph


def barrier_matrix(step: StepMatrix, params: PhysParams) -> BarrierMatrix:
    """Compose the step with its reflected inverse: M_bar = M_right M_left.

    Closed form, with the determinant taken from the flux identity (exact
    for matrices built by this module):

        A = [a^2 e^{2i(q-p)s} - b*^2 e^{-2i(q+p)s}] / (|a|^2 - |b|^2)
        B = [a b e^{2iq s}    - a* b* e^{-2iq s}  ] / (|a|^2 - |b|^2)

    with s = ell + L.
    """
    p, q = _momenta(params)
    det = p / q * d_ratio(params, step.model)
    if det == 0.0:
        raise SingularStepError("|a|^2 - |b|^2 = 0: cannot compose the barrier")
    s = params.ell + params.L
    a, b = step.a, step.b
    A = (a * a * cmath.exp(2j * (q - p) * s)
         - b.conjugate() ** 2 * cmath.exp(-2j * (q + p) * s)) / det
    B = (a * b * cmath.exp(2j * q * s)
         - (a * b).conjugate() * cmath.exp(-2j * q * s)) / det
    return BarrierMatrix(A=A, B=B, log_scale=2.0 * step.log_scale)


def phases(step: StepMatrix) -> PhasePair:
    """Principal arguments of a and b; undefined when either vanishes."""
    if step.a == 0.0 or step.b == 0.0:
        raise UndefinedPhaseError("phase of a vanishing matrix element")
    return PhasePair(phi_a=cmath.phase(step.a), phi_b=cmath.phase(step.b))
