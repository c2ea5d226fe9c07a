"""Confluent hypergeometric function and Sauter's linear-ramp basis.

The ramp eigenfunctions are built from the degenerate (confluent)
hypergeometric series

    Phi(alpha, beta; z) = 1 + (alpha/beta) z/1! + ... ,

evaluated at z = -i xi(x)^2 with xi the scaled ramp coordinate.  Two
numerical regimes matter:

* |z| <= series_switch_radius: the Taylor series, summed on a ladder of
  software precisions (53 / 106 / 159 / 212 significand bits, the higher
  rungs via mpmath).  For oscillatory z the series loses ~ |z| log10(e)
  digits to cancellation, so the rung is escalated until a compensated
  error estimate certifies the requested tolerance.
* |z| above the radius: the two-sector large-|z| (Kummer) asymptotics,
  truncated at the smallest term.  Its floor is precision independent; when
  the floor fails the tolerance the evaluation falls back to the series at
  whatever rung can absorb the cancellation.

Deep-ramp transmission scans need both: the headline regime reaches
|z| ~ 1e2 with purely imaginary z and |alpha| ~ 8, where double precision
alone is hopeless.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from mpmath import mp
import mpmath

from .errors import (
    DegenerateRampError,
    DomainError,
    PoleError,
    PrecisionEscalationError,
)
from .kinematics import PhysParams

_LOG10E = math.log10(math.e)
_TINY = 1e-300

#: Available significand sizes, smallest first.  53 bits is hardware
#: double; the extended rungs run under ``mpmath.workprec``.
PRECISION_LADDER = (53, 106, 159, 212)


@dataclass(frozen=True)
class PrecisionPolicy:
    """How hard to try when evaluating Phi.

    significand_bits     : starting rung of the precision ladder
    series_switch_radius : |z| above which the asymptotic expansion is tried
    max_terms            : series / asymptotic term budget
    tail_tolerance       : target relative error of the returned value
    """

    significand_bits: int = 53
    series_switch_radius: float = 30.0
    max_terms: int = 4000
    tail_tolerance: float = 1e-12

    def __post_init__(self):
        if self.significand_bits not in PRECISION_LADDER:
            raise ValueError(
                f"significand_bits must be one of {PRECISION_LADDER}, "
                f"got {self.significand_bits}"
            )
        if not self.series_switch_radius > 0.0:
            raise ValueError("series_switch_radius must be positive")
        if self.max_terms < 8:
            raise ValueError("max_terms too small")
        # the public API returns a double, so tolerances below one ulp of a
        # double cannot be honoured
        if not 2.0 ** -52 <= self.tail_tolerance:
            raise ValueError("tail_tolerance must be >= 2^-52")


DEFAULT_POLICY = PrecisionPolicy()


@dataclass(frozen=True)
class SauterBasisValue:
    """Ramp eigenfunction pair (f, g) at position x."""

    f: complex
    g: complex
    x: float

    @property
    def current(self) -> float:
        """|f|^2 - |g|^2, conserved along the ramp for a fixed solution."""
        return abs(self.f) ** 2 - abs(self.g) ** 2


def _is_nonpositive_integer(w: complex) -> bool:
    return w.imag == 0.0 and w.real <= 0.0 and float(w.real).is_integer()


# ---------------------------------------------------------------------------
# Taylor series on the precision ladder
# ---------------------------------------------------------------------------


def _series_53(alpha, beta, z, max_terms, stop_rel):
    s = 1.0 + 0.0j
    term = 1.0 + 0.0j
    maxmag = 1.0
    quiet = 0
    for k in range(max_terms):
        term = term * (alpha + k) / (beta + k) * z / (k + 1)
        s += term
        mag = abs(term)
        if mag > maxmag:
            maxmag = mag
        if mag == 0.0:
            return s, maxmag, k + 1, True
        if mag <= stop_rel * max(abs(s), _TINY):
            quiet += 1
            if quiet >= 2:
                return s, maxmag, k + 1, True
        else:
            quiet = 0
    return s, maxmag, max_terms, False


def _series_mp(alpha, beta, z, bits, max_terms, stop_rel):
    with mp.workprec(bits + 8):
        a = mp.mpmathify(alpha)
        b = mp.mpmathify(beta)
        zz = mp.mpmathify(z)
        s = mp.mpc(1)
        term = mp.mpc(1)
        maxmag = 1.0
        quiet = 0
        for k in range(max_terms):
            term = term * (a + k) / (b + k) * zz / (k + 1)
            s += term
            mag = float(abs(term))
            if mag > maxmag:
                maxmag = mag
            if mag == 0.0:
                return complex(s), float(abs(s)), maxmag, k + 1, True
            if mag <= stop_rel * max(float(abs(s)), _TINY):
                quiet += 1
                if quiet >= 2:
                    return complex(s), float(abs(s)), maxmag, k + 1, True
            else:
                quiet = 0
        return complex(s), float(abs(s)), maxmag, max_terms, False


def _series_ladder(alpha, beta, z, policy, start_bits):
    rungs = [b for b in PRECISION_LADDER if b >= start_bits]
    for bits in rungs:
        stop_rel = max(policy.tail_tolerance * 1e-3, 2.0 ** -(bits + 4))
        if bits == 53:
            s, maxmag, n, converged = _series_53(
                alpha, beta, z, policy.max_terms, stop_rel
            )
            mag_s = abs(s)
        else:
            s, mag_s, maxmag, n, converged = _series_mp(
                alpha, beta, z, bits, policy.max_terms, stop_rel
            )
        if not converged:
            raise PrecisionEscalationError(
                f"series did not converge within {policy.max_terms} terms",
                alpha=alpha,
                beta=beta,
                z=z,
            )
        est = 2.0 ** (1 - bits) * n * maxmag / max(mag_s, _TINY)
        if est <= policy.tail_tolerance:
            return complex(s)
    raise PrecisionEscalationError(
        "no precision rung certifies the requested tolerance "
        f"(cancellation ~ {maxmag / max(mag_s, _TINY):.3e})",
        alpha=alpha,
        beta=beta,
        z=z,
    )


# ---------------------------------------------------------------------------
# Two-sector large-|z| asymptotics, superasymptotic truncation
# ---------------------------------------------------------------------------


def _asym_sum_53(A, B, w, nmax):
    """Sum_k (A)_k (B)_k / (k! w^k), truncated at the smallest term.

    Returns the partial sum at the smallest term and that term's magnitude
    (the superasymptotic error estimate).
    """
    t = 1.0 + 0.0j
    s = t
    best_s = s
    best_mag = 1.0
    grow = 0
    for k in range(nmax):
        t = t * (A + k) * (B + k) / ((k + 1) * w)
        mag = abs(t)
        if not math.isfinite(mag):
            break
        s += t
        if mag == 0.0:
            return s, 0.0
        if mag < best_mag:
            best_mag = mag
            best_s = s
            grow = 0
            if mag <= 1e-19 * abs(s):
                break
        else:
            grow += 1
            if grow >= 3 and mag > 10.0 * best_mag:
                break
    return best_s, best_mag


def _asym_sum_mp(A, B, w, nmax, bits):
    t = mp.mpc(1)
    s = t
    best_s = s
    best_mag = 1.0
    floor = 2.0 ** -(bits + 4)
    grow = 0
    for k in range(nmax):
        t = t * (A + k) * (B + k) / ((k + 1) * w)
        mag = float(abs(t))
        s += t
        if mag == 0.0:
            return s, 0.0
        if mag < best_mag:
            best_mag = mag
            best_s = s
            grow = 0
            if mag <= floor * float(abs(s)):
                break
        else:
            grow += 1
            if grow >= 3 and mag > 10.0 * best_mag:
                break
    return best_s, best_mag


def _kummer_sign(z: complex) -> float:
    # e^{+i pi alpha} for the upper half-plane (incl. the negative real
    # axis, ph z = pi), e^{-i pi alpha} for the lower: the subdominant
    # coefficient jumps across the Stokes line ph z = 0, where the whole
    # algebraic sector sits below the dominant sector's truncation floor
    return -1.0 if z.imag < 0.0 else 1.0


def _asymptotic_53(alpha, beta, z, nmax):
    from scipy.special import gamma as _sgamma, loggamma as _sloggamma

    s1, e1 = _asym_sum_53(alpha, alpha - beta + 1.0, -z, nmax)
    s2, e2 = _asym_sum_53(beta - alpha, 1.0 - alpha, z, nmax)
    logz = cmath.log(z)
    sgn = _kummer_sign(z)
    if _is_nonpositive_integer(beta - alpha):
        pre1 = 0.0 + 0.0j
    else:
        lg1 = complex(_sloggamma(complex(beta - alpha)))
        pre1 = cmath.exp(sgn * 1j * math.pi * alpha - alpha * logz - lg1)
    if _is_nonpositive_integer(alpha):
        pre2 = 0.0 + 0.0j
    else:
        lg2 = complex(_sloggamma(complex(alpha)))
        pre2 = cmath.exp(z + (alpha - beta) * logz - lg2)
    gb = complex(_sgamma(complex(beta)))
    val = gb * (pre1 * s1 + pre2 * s2)
    scale = abs(gb) * (abs(pre1) * abs(s1) + abs(pre2) * abs(s2))
    if not (math.isfinite(abs(val)) and math.isfinite(scale)):
        return val, math.inf, math.inf
    denom = max(abs(val), _TINY)
    trunc_rel = abs(gb) * (abs(pre1) * e1 + abs(pre2) * e2) / denom
    round_rel = scale / denom * 2.0 ** -46
    return val, trunc_rel, round_rel


def _asymptotic_mp(alpha, beta, z, bits, nmax):
    with mp.workprec(bits + 8):
        a = mp.mpmathify(alpha)
        b = mp.mpmathify(beta)
        zz = mp.mpmathify(z)
        s1, e1 = _asym_sum_mp(a, a - b + 1, -zz, nmax, bits)
        s2, e2 = _asym_sum_mp(b - a, 1 - a, zz, nmax, bits)
        logz = mp.log(zz)
        sgn = _kummer_sign(z)
        if _is_nonpositive_integer(complex(beta - alpha)):
            pre1 = mp.mpc(0)
        else:
            pre1 = mp.exp(
                sgn * mp.mpc(0, 1) * mp.pi * a - a * logz - mp.loggamma(b - a)
            )
        if _is_nonpositive_integer(complex(alpha)):
            pre2 = mp.mpc(0)
        else:
            pre2 = mp.exp(zz + (a - b) * logz - mp.loggamma(a))
        gb = mp.gamma(b)
        val = gb * (pre1 * s1 + pre2 * s2)
        scale = float(abs(gb) * (abs(pre1) * abs(s1) + abs(pre2) * abs(s2)))
        denom = max(float(abs(val)), _TINY)
        trunc_rel = (
            float(abs(gb)) * (float(abs(pre1)) * e1 + float(abs(pre2)) * e2) / denom
        )
        round_rel = scale / denom * 2.0 ** -(bits - 6)
        return complex(val), trunc_rel, round_rel


def _asymptotic(alpha, beta, z, bits, nmax):
    if bits == 53:
        return _asymptotic_53(alpha, beta, z, nmax)
    return _asymptotic_mp(alpha, beta, z, bits, nmax)


# ---------------------------------------------------------------------------
# Public entry points
# ---------------------------------------------------------------------------


def chf(alpha, beta, z, policy: PrecisionPolicy = DEFAULT_POLICY) -> complex:
    """Phi(alpha, beta; z) with relative error <= policy.tail_tolerance.

    Raises PoleError for beta a nonpositive integer and
    PrecisionEscalationError when no rung of the ladder (and neither
    expansion) can certify the tolerance.
    """
    alpha = complex(alpha)
    beta = complex(beta)
    z = complex(z)
    if _is_nonpositive_integer(beta):
        raise PoleError(f"Phi has a pole at beta={beta}")
    if z == 0.0 or alpha == 0.0:
        return 1.0 + 0.0j
    if alpha == beta:
        return cmath.exp(z)

    r = abs(z)
    tol = policy.tail_tolerance
    if r <= policy.series_switch_radius or _is_nonpositive_integer(alpha):
        return _series_ladder(alpha, beta, z, policy, policy.significand_bits)

    nmax = min(policy.max_terms, int(2.0 * r) + 200)
    val, trunc_rel, round_rel = _asymptotic(alpha, beta, z, policy.significand_bits, nmax)
    if trunc_rel + round_rel <= tol:
        return val
    if trunc_rel <= 0.5 * tol:
        # roundoff / overflow limited: a higher rung fixes it
        for bits in PRECISION_LADDER:
            if bits <= policy.significand_bits:
                continue
            val, trunc_rel, round_rel = _asymptotic(alpha, beta, z, bits, nmax)
            if trunc_rel + round_rel <= tol:
                return val
    # superasymptotic floor too high: absorb the cancellation in the series
    lost_digits = max(0.0, r - max(z.real, 0.0)) * _LOG10E
    needed = lost_digits + max(0.0, -math.log10(tol)) + 4.0
    start = PRECISION_LADDER[-1]
    for bits in PRECISION_LADDER:
        if bits * math.log10(2.0) >= needed:
            start = bits
            break
    return _series_ladder(alpha, beta, z, policy, start)


def xi_argument(x: float, params: PhysParams) -> float:
    """Scaled ramp coordinate xi(x) = sqrt(U/ell) (x - E ell / U).

    Vanishes where the local potential equals the energy, i.e. at
    x = E ell / U.
    """
    if params.ell <= 0.0 or params.U <= 0.0:
        raise DegenerateRampError(
            "xi is undefined for a sharp edge (ell = 0) or U = 0; "
            "use the rectangular-step path"
        )
    return math.sqrt(params.U / params.ell) * (x - params.E * params.ell / params.U)


def sauter_basis(
    x: float,
    params: PhysParams,
    policy: PrecisionPolicy = DEFAULT_POLICY,
) -> SauterBasisValue:
    """Ramp eigenfunctions (f, g) at 0 <= x <= ell.

    f(x) = e^{i xi^2/2} Phi(i kappa, 1/2; -i xi^2)
    g(x) = -m sqrt(ell/U) xi(x) e^{i xi^2/2} Phi(i kappa + 1, 3/2; -i xi^2)

    with kappa = m^2 ell / (4 U): the even and odd solutions of the linear
    ramp system.  The pair satisfies f' = -i(E - U(x)) f - m g and
    g' = i(E - U(x)) g - m f, so |f|^2 - |g|^2 is conserved and equals 1
    exactly (g vanishes at the classical turning-point centre xi = 0 where
    f = 1).  In the massless limit g vanishes identically and f reduces to
    the pure phase e^{i xi^2/2}.
    """
    if params.ell <= 0.0 or params.U <= 0.0:
        raise DegenerateRampError("sauter_basis needs ell > 0 and U > 0")
    if not 0.0 <= x <= params.ell:
        raise DomainError(f"x={x} outside the ramp [0, {params.ell}]")
    xi = xi_argument(x, params)
    zsq = xi * xi
    z = -1j * zsq
    kappa = params.m * params.m * params.ell / (4.0 * params.U)
    phase = cmath.exp(0.5j * zsq)
    f = phase * chf(1j * kappa, 0.5, z, policy)
    g = (
        -params.m
        * math.sqrt(params.ell / params.U)
        * xi
        * phase
        * chf(1j * kappa + 1.0, 1.5, z, policy)
    )
    return SauterBasisValue(f=f, g=g, x=x)
