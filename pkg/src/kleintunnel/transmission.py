"""Transmission coefficients, energy averaging, asymptotics, resonances.

Step transmission uses the scattering state appropriate to each model: the
Klein-Gordon state has no incoming flux from the right (T = (p/q)/|a|^2),
while the negative Dirac flux ratio swaps the roles of the two terms
(T = -(p/q) D / |b|^2).  The barrier coefficient is 1/|A|^2 for both.

Everything in the deep-ramp regime runs in the log domain: the headline
suppression reaches T ~ 1e-90, far below double-precision underflow once
squared by the energy average.  Points carry log10(T) always and the linear
T whenever it is representable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import (
    BoundaryError,
    UndefinedPhaseError,
    UnsupportedShapeError,
)
from .kinematics import (
    Model,
    PhysParams,
    d_ratio,
    in_klein_zone,
    momentum_p,
    momentum_q,
    require_klein_zone,
)
from .specfun import DEFAULT_POLICY, PrecisionPolicy
from .transfer import (
    StepMatrix,
    barrier_matrix,
    phases,
    rect_step_matrix,
    sauter_step_matrix,
)

_LOG10E = math.log10(math.e)
_LN10 = math.log(10.0)
#: below this log10(T) the linear field is frozen at 0.0 and flagged
_UNDERFLOW_LOG10 = -307.0

STEP_SHAPES = ("rect", "sauter")


@dataclass(frozen=True)
class TransmissionPoint:
    """One (E, T) record of a scan.

    T is clipped to 0.0 (with an "underflow" flag) when the value is below
    the double-precision floor; log10_T is always meaningful.
    """

    E: float
    T: float
    log10_T: float
    model: Model
    shape: str
    T_avg: Optional[float] = None
    log10_T_avg: Optional[float] = None
    flags: tuple = ()


@dataclass(frozen=True)
class ResonanceReport:
    """Energies of total transmission found in a window."""

    energies: tuple
    count: int
    window: tuple
    flags: tuple = ()


@dataclass(frozen=True)
class AsymptoticReport:
    """Deep-ramp asymptotic transmission, in log10.

    log10_t_step is the ramp-step law  q(U-E+q)/(p(E+p)) * exp(-pi m^2 l/U);
    log10_t_avg_barrier is the energy-averaged symmetric barrier built from
    it, (step)^2 / 2.  field_ratio = (U/ell) / (2 m^2) must be small for the
    law to hold; a violation is reported, not raised.
    """

    log10_t_step: float
    log10_t_avg_barrier: float
    field_ratio: float
    restriction_satisfied: bool
    warnings: tuple = ()


def _check_shape(shape: str) -> None:
    if shape not in STEP_SHAPES:
        raise ValueError(f"shape must be one of {STEP_SHAPES}, got {shape!r}")


def step_matrix(
    params: PhysParams,
    model: Model,
    shape: str,
    policy: PrecisionPolicy = DEFAULT_POLICY,
) -> StepMatrix:
    """Step matrix for (model, shape); Klein-Gordon ramps have no analytic path."""
    _check_shape(shape)
    if shape == "rect":
        return rect_step_matrix(params, model)
    if model is Model.KLEIN_GORDON:
        raise UnsupportedShapeError(
            "no closed form for the Klein-Gordon ramp step; use the numeric engine"
        )
    return sauter_step_matrix(params, policy)


def _log10_t_step(
    params: PhysParams,
    model: Model,
    shape: str,
    policy: PrecisionPolicy,
) -> float:
    require_klein_zone(params)
    p = momentum_p(params)
    q = momentum_q(params)
    if shape == "rect":
        r = p / q * d_ratio(params, model)
        if model is Model.KLEIN_GORDON:
            t = 4.0 * r / (1.0 + r) ** 2
        else:
            t = -4.0 * r / (1.0 - r) ** 2
        return math.log10(t)
    mat = step_matrix(params, model, shape, policy)
    det = mat.det_target()  # negative in the Klein zone (Dirac)
    return (math.log(-det) - 2.0 * mat.log_abs_b()) * _LOG10E


def _point(E, log10_t, model, shape, flags=()):
    if log10_t > _UNDERFLOW_LOG10:
        t = 10.0 ** log10_t
    else:
        t = 0.0
        flags = tuple(flags) + ("underflow",)
    return TransmissionPoint(
        E=E, T=t, log10_T=log10_t, model=model, shape=shape, flags=tuple(flags)
    )


def t_step(
    params: PhysParams,
    model: Model,
    shape: str,
    policy: PrecisionPolicy = DEFAULT_POLICY,
) -> TransmissionPoint:
    """Step transmission coefficient (rect: closed form; sauter: ramp matrix)."""
    _check_shape(shape)
    log10_t = _log10_t_step(params, model, shape, policy)
    return _point(params.E, log10_t, model, shape + "_step")


def t_barrier(
    params: PhysParams,
    model: Model,
    shape: str,
    policy: PrecisionPolicy = DEFAULT_POLICY,
) -> TransmissionPoint:
    """Barrier transmission 1/|A|^2 via the composed transfer matrix."""
    _check_shape(shape)
    require_klein_zone(params)
    mat = step_matrix(params, model, shape, policy)
    bar = barrier_matrix(mat, params)
    log10_t = -2.0 * bar.log_abs_A() * _LOG10E
    # guard tiny positive excursions from roundoff at resonances
    log10_t = min(log10_t, 0.0)
    return _point(params.E, log10_t, model, shape + "_barrier")


def barrier_phase_argument(
    params: PhysParams,
    model: Model,
    shape: str,
    policy: PrecisionPolicy = DEFAULT_POLICY,
) -> float:
    """theta = 2 q (ell + L) + arg(a) + arg(b); resonances sit at n pi."""
    mat = step_matrix(params, model, shape, policy)
    ph = phases(mat)
    q = momentum_q(params)
    return 2.0 * q * (params.ell + params.L) + ph.phi_a + ph.phi_b


def t_barrier_phase_form(
    params: PhysParams,
    model: Model,
    shape: str,
    policy: PrecisionPolicy = DEFAULT_POLICY,
) -> TransmissionPoint:
    """Barrier transmission via 1/(1 + 4 (1-T)/T^2 sin^2 theta).

    Same step matrix as t_barrier but a different arithmetic route; used for
    cross-validation and by the resonance scanner.  Falls back to the direct
    route when a phase is undefined (a or b vanishing).
    """
    _check_shape(shape)
    require_klein_zone(params)
    log10_ts = _log10_t_step(params, model, shape, policy)
    try:
        theta = barrier_phase_argument(params, model, shape, policy)
    except UndefinedPhaseError:
        return t_barrier(params, model, shape, policy)
    sin2 = math.sin(theta) ** 2
    if log10_ts > -120.0:
        ts = 10.0 ** log10_ts
        x = 4.0 * (1.0 - ts) / ts ** 2 * sin2
        log10_t = -math.log1p(x) / _LN10
    elif sin2 == 0.0:
        log10_t = 0.0
    else:
        log10_x = math.log10(4.0) - 2.0 * log10_ts + math.log10(sin2)
        if log10_x > 15.0:
            log10_t = -log10_x
        else:
            log10_t = -math.log1p(10.0 ** log10_x) / _LN10
    return _point(params.E, min(log10_t, 0.0), model, shape + "_barrier")


def t_averaged(
    params: PhysParams,
    model: Model,
    shape: str,
    policy: PrecisionPolicy = DEFAULT_POLICY,
) -> TransmissionPoint:
    """Energy-averaged barrier transmission: the sin^2 -> 1/2 substitution.

    T_avg = 1 / (1 + 2 (1 - T_step) / T_step^2); for T_step << 1 this is
    T_step^2 / 2.  The substitution form is the definition; it is *not* a
    numerical window average (see average_over_window for that check).
    """
    _check_shape(shape)
    require_klein_zone(params)
    log10_ts = _log10_t_step(params, model, shape, policy)
    if log10_ts > -8.0:
        ts = 10.0 ** log10_ts
        log10_t = -math.log1p(2.0 * (1.0 - ts) / ts ** 2) / _LN10
    else:
        log10_t = 2.0 * log10_ts - math.log10(2.0)
    return _point(params.E, log10_t, model, shape + "_barrier", flags=("averaged",))


def average_over_window(
    params: PhysParams,
    model: Model,
    shape: str,
    delta_e: float,
    samples: int = 2001,
    policy: PrecisionPolicy = DEFAULT_POLICY,
) -> float:
    """Trapezoidal mean of the (linear) barrier T over [E - dE/2, E + dE/2].

    Validation helper for the substitution average; only meaningful where T
    is representable.
    """
    lo = params.E - 0.5 * delta_e
    hi = params.E + 0.5 * delta_e
    zone_lo, zone_hi = params.m, params.U - params.m
    if not (zone_lo < lo and hi < zone_hi):
        raise BoundaryError("averaging window leaves the Klein zone")
    es = np.linspace(lo, hi, samples)
    ts = np.empty_like(es)
    for i, e in enumerate(es):
        pt = t_barrier(
            PhysParams(E=float(e), U=params.U, m=params.m, ell=params.ell, L=params.L),
            model,
            shape,
            policy,
        )
        ts[i] = pt.T
    w = np.ones_like(ts)
    w[0] = w[-1] = 0.5
    return float(np.sum(w * ts) / np.sum(w))


def sauter_asymptotic(params: PhysParams) -> AsymptoticReport:
    """Deep-ramp asymptotic law for the Dirac ramp step and averaged barrier."""
    p = momentum_p(params)
    q = momentum_q(params)
    if p == 0.0 or q == 0.0:
        raise BoundaryError("asymptotic law undefined at a Klein-zone boundary")
    E, U, m, ell = params.E, params.U, params.m, params.ell
    prefactor = q * (U - E + q) / (p * (E + p))
    log10_step = math.log10(prefactor) - math.pi * m * m * ell / U * _LOG10E
    log10_avg = 2.0 * log10_step - math.log10(2.0)
    ratio = math.inf if ell == 0.0 else (U / ell) / (2.0 * m * m)
    ok = ratio <= 0.1
    warn = ()
    if not ok:
        warn = (
            f"field restriction U/ell << 2 m^2 violated (ratio {ratio:.3g}); "
            "the asymptotic law is not quantitative here",
        )
    return AsymptoticReport(
        log10_t_step=log10_step,
        log10_t_avg_barrier=log10_avg,
        field_ratio=ratio,
        restriction_satisfied=ok,
        warnings=warn,
    )


# ---------------------------------------------------------------------------
# Resonance location and counting
# ---------------------------------------------------------------------------

_TRANSPARENT_REL = 1e-13


def _with_energy(params: PhysParams, e: float) -> PhysParams:
    return PhysParams(E=e, U=params.U, m=params.m, ell=params.ell, L=params.L)


def _resonance_grid(params: PhysParams, lo: float, hi: float, samples):
    # uniform in q, where the fast phase 2 q (ell+L) is linear
    q_hi = momentum_q(_with_energy(params, lo))
    q_lo = momentum_q(_with_energy(params, hi))
    span = 2.0 * (params.ell + params.L) * (q_hi - q_lo) + 2.0 * math.pi
    if samples is None:
        samples = int(min(200001, max(257, 16.0 * span / math.pi + 9.0)))
    qs = np.linspace(q_hi, q_lo, samples)
    es = params.U - np.sqrt(params.m ** 2 + qs ** 2)
    es[0], es[-1] = lo, hi
    return es


def find_resonances(
    params: PhysParams,
    model: Model,
    shape: str,
    e_min: float = None,
    e_max: float = None,
    policy: PrecisionPolicy = DEFAULT_POLICY,
    samples: int = None,
) -> ResonanceReport:
    """All total-transmission energies in the window, bisected to 1e-8.

    The zero search runs on sin(theta(E)) (well conditioned), never on the
    flat-topped T itself; every candidate is confirmed by requiring
    t_barrier >= 1 - 1e-6.  Grid points where the step itself is transparent
    (b = 0, so T = 1 for every L) are reported with a degenerate flag.
    """
    _check_shape(shape)
    zone_lo, zone_hi = params.m, params.U - params.m
    width = zone_hi - zone_lo
    if width <= 0.0:
        return ResonanceReport((), 0, (zone_lo, zone_lo), ())
    eps = 1e-9 * width
    lo = max(zone_lo + eps, e_min if e_min is not None else -math.inf)
    hi = min(zone_hi - eps, e_max if e_max is not None else math.inf)
    if not lo < hi:
        return ResonanceReport((), 0, (lo, hi), ())

    def theta_or_none(e):
        mat = step_matrix(_with_energy(params, e), model, shape, policy)
        if abs(mat.b) <= _TRANSPARENT_REL * max(abs(mat.a), 1.0):
            return None
        ph = phases(mat)
        return (
            2.0 * momentum_q(_with_energy(params, e)) * (params.ell + params.L)
            + ph.phi_a
            + ph.phi_b
        )

    es = _resonance_grid(params, lo, hi, samples)
    vals = []
    transparent = []
    for e in es:
        th = theta_or_none(float(e))
        vals.append(math.nan if th is None else math.sin(th))
        if th is None:
            transparent.append(float(e))
    flags = ()
    if transparent:
        flags = ("degenerate: step transparent",)
        if len(transparent) == len(es):
            return ResonanceReport((), 0, (lo, hi), flags)

    found = list(transparent)
    for i in range(len(es) - 1):
        s0, s1 = vals[i], vals[i + 1]
        if math.isnan(s0) or math.isnan(s1):
            continue
        if s0 == 0.0:
            found.append(float(es[i]))
            continue
        if s0 * s1 < 0.0:
            a_e, b_e, s_a = float(es[i]), float(es[i + 1]), s0
            while b_e - a_e > 1e-8:
                mid = 0.5 * (a_e + b_e)
                sm = theta_or_none(mid)
                sm = 0.0 if sm is None else math.sin(sm)
                if sm == 0.0:
                    a_e = b_e = mid
                    break
                if s_a * sm < 0.0:
                    b_e = mid
                else:
                    a_e, s_a = mid, sm
            found.append(0.5 * (a_e + b_e))
    if vals and vals[-1] == 0.0:
        found.append(float(es[-1]))

    confirmed = []
    for e in sorted(found):
        if confirmed and e - confirmed[-1] < 2e-8:
            continue
        pt = t_barrier(_with_energy(params, e), model, shape, policy)
        if pt.T >= 1.0 - 1e-6:
            confirmed.append(e)
    return ResonanceReport(tuple(confirmed), len(confirmed), (lo, hi), flags)


def spike_density(
    params: PhysParams,
    model: Model,
    shape: str,
    window: tuple,
    policy: PrecisionPolicy = DEFAULT_POLICY,
    samples: int = None,
) -> int:
    """Resonance count in a window, without refinement.

    Counts multiples of pi crossed by the phase argument between the window
    endpoints (integer floor difference of theta/pi).  The slow phases
    arg(a) + arg(b) are unwrapped along an internal grid so the count stays
    meaningful when they drift by more than pi across the window; near a
    transparent point the count can differ from find_resonances by one.
    """
    _check_shape(shape)
    e1, e2 = window
    zone_lo, zone_hi = params.m, params.U - params.m
    if not (zone_lo <= e1 <= e2 <= zone_hi):
        raise BoundaryError("window must lie within the closed Klein zone")
    if e1 == e2:
        return 0
    eps = 1e-12 * (zone_hi - zone_lo)
    lo = max(e1, zone_lo + eps)
    hi = min(e2, zone_hi - eps)
    es = _resonance_grid(params, lo, hi, samples)
    s = params.ell + params.L
    slow = np.empty(len(es))
    fast = np.empty(len(es))
    for i, e in enumerate(es):
        pe = _with_energy(params, float(e))
        mat = step_matrix(pe, model, shape, policy)
        try:
            ph = phases(mat)
            slow[i] = ph.phi_a + ph.phi_b
        except UndefinedPhaseError:
            slow[i] = slow[i - 1] if i else 0.0
        fast[i] = 2.0 * momentum_q(pe) * s
    theta = fast + np.unwrap(slow)
    return int(abs(math.floor(theta[-1] / math.pi) - math.floor(theta[0] / math.pi)))
