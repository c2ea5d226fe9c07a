"""Kinematics of a particle hitting a one-dimensional electrostatic step.

Conventions
-----------
Natural units hbar = c = 1 throughout.  All formulas are scale free, so any
consistent unit system works; the canonical internal choice is m = 1
(energies in units of the mass, lengths in units of the Compton wavelength
1/m).  The CLI converts physical units (MeV / Angstrom, with m = 0.51 MeV
and 1/m = 0.024 A) before anything reaches this module.

The two wave equations handled by the package are reduced to two-component
first-order form.  Spin is conserved by the minimal coupling and plays no
role, which is why two components suffice for the Dirac case as well.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import BoundaryError, DomainError, SingularSpinorError


class Model(Enum):
    """Which relativistic wave equation the quantities refer to."""

    KLEIN_GORDON = "kg"
    DIRAC = "dirac"


@dataclass(frozen=True)
class PhysParams:
    """Parameter tuple (E, U, m, ell, L) consumed by every formula.

    E    : total energy of the incident particle
    U    : height of the electrostatic step / barrier
    m    : particle mass (energy units; 1.0 for the internal convention)
    ell  : width of the linear edge ramp (inverse-energy units; 0 = sharp)
    L    : half-width of the flat barrier top (inverse-energy units)
    """

    E: float
    U: float
    m: float = 1.0
    ell: float = 0.0
    L: float = 0.0

    def __post_init__(self):
        if not self.m > 0.0:
            raise DomainError(f"mass must be positive, got m={self.m}")
        if self.U < 0.0:
            raise DomainError(f"potential height must be >= 0, got U={self.U}")
        if self.ell < 0.0:
            raise DomainError(f"edge width must be >= 0, got ell={self.ell}")
        if self.L < 0.0:
            raise DomainError(f"half-width must be >= 0, got L={self.L}")


@dataclass(frozen=True)
class SpinorAmplitude:
    """Two-component plane-wave amplitude (upper, lower)."""

    upper: complex
    lower: complex

    def as_array(self):
        import numpy as np

        return np.array([self.upper, self.lower], dtype=complex)


def momentum_p(params: PhysParams) -> float:
    """Incident momentum p = sqrt(E^2 - m^2) on the field-free side."""
    if params.E < params.m:
        raise DomainError("evanescent incident state not supported")
    return math.sqrt((params.E - params.m) * (params.E + params.m))


def momentum_q(params: PhysParams) -> float:
    """Momentum q = sqrt((U - E)^2 - m^2) under the step."""
    gap = abs(params.U - params.E)
    if gap < params.m:
        raise DomainError("energy gap region")
    return math.sqrt((gap - params.m) * (gap + params.m))


def in_klein_zone(params: PhysParams) -> bool:
    """True iff U - m > E > m (both sides propagating, strict)."""
    return params.U - params.m > params.E > params.m


def require_klein_zone(params: PhysParams) -> None:
    """Raise BoundaryError unless the energy lies strictly inside the zone."""
    if not in_klein_zone(params):
        raise BoundaryError(
            f"E={params.E} outside the open Klein zone "
            f"({params.m}, {params.U - params.m})"
        )


def d_ratio(params: PhysParams, model: Model) -> float:
    """Model ratio D: 1 for Klein-Gordon, (E - U + m)/(E + m) for Dirac.

    Strictly negative everywhere inside the Klein zone for Dirac, which is
    what flips the role of the two scattering states there.
    """
    if model is Model.KLEIN_GORDON:
        return 1.0
    return (params.E - params.U + params.m) / (params.E + params.m)


def spinor(
    momentum: float,
    params: PhysParams,
    model: Model,
    region: str = "free",
) -> SpinorAmplitude:
    """Plane-wave amplitude u(+k) or u(-k) for a signed momentum.

    region="free" is the U = 0 side; region="shifted" is the side sitting on
    the potential plateau (denominator E - U + m, Dirac only; the
    Klein-Gordon amplitude does not depend on the plateau).
    """
    if region not in ("free", "shifted"):
        raise ValueError(f"unknown region {region!r}")
    if model is Model.KLEIN_GORDON:
        return SpinorAmplitude(1.0, 1j * momentum)
    denom = params.E + params.m
    if region == "shifted":
        denom = params.E - params.U + params.m
        if denom == 0.0:
            raise SingularSpinorError("spinor denominator E - U + m vanishes")
    return SpinorAmplitude(1.0, momentum / denom)
