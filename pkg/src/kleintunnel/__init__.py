"""Relativistic transmission through 1-D electrostatic steps and barriers.

Core library for Klein-zone scattering: sharp and linear-ramp (trapezoidal)
potentials, Dirac and Klein-Gordon, closed-form transfer matrices with an
independent ODE oracle, energy-averaged transmission and deep-ramp
asymptotics.  An HTTP service (kleintunnel.service) wraps the scan layer;
the CLI is a thin client of it.
"""

__version__ = "0.1.0"

from .errors import KleinTunnelError
from .kinematics import (
    Model,
    PhysParams,
    SpinorAmplitude,
    d_ratio,
    in_klein_zone,
    momentum_p,
    momentum_q,
    spinor,
)
from .oracle import (
    NumericTransferMatrix,
    PotentialProfile,
    StateVector,
    barrier_profile,
    current,
    integrate,
    numeric_transfer_matrix,
    step_profile,
)
from .specfun import (
    DEFAULT_POLICY,
    PRECISION_LADDER,
    PrecisionPolicy,
    SauterBasisValue,
    chf,
    sauter_basis,
    xi_argument,
)
from .transfer import (
    BarrierMatrix,
    PhasePair,
    StepMatrix,
    barrier_matrix,
    phases,
    rect_step_matrix,
    sauter_step_matrix,
    translation_matrix,
)
from .transmission import (
    AsymptoticReport,
    ResonanceReport,
    TransmissionPoint,
    average_over_window,
    find_resonances,
    sauter_asymptotic,
    spike_density,
    t_averaged,
    t_barrier,
    t_barrier_phase_form,
    t_step,
)

__all__ = [
    "__version__",
    "KleinTunnelError",
    "Model",
    "PhysParams",
    "SpinorAmplitude",
    "d_ratio",
    "in_klein_zone",
    "momentum_p",
    "momentum_q",
    "spinor",
    "NumericTransferMatrix",
    "PotentialProfile",
    "StateVector",
    "barrier_profile",
    "current",
    "integrate",
    "numeric_transfer_matrix",
    "step_profile",
    "DEFAULT_POLICY",
    "PRECISION_LADDER",
    "PrecisionPolicy",
    "SauterBasisValue",
    "chf",
    "sauter_basis",
    "xi_argument",
    "BarrierMatrix",
    "PhasePair",
    "StepMatrix",
    "barrier_matrix",
    "phases",
    "rect_step_matrix",
    "sauter_step_matrix",
    "translation_matrix",
    "AsymptoticReport",
    "ResonanceReport",
    "TransmissionPoint",
    "average_over_window",
    "find_resonances",
    "sauter_asymptotic",
    "spike_density",
    "t_averaged",
    "t_barrier",
    "t_barrier_phase_form",
    "t_step",
]
