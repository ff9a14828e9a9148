"""Closed-form reflection amplitudes and probabilities for the three cases.

All gamma products are evaluated in log space so that large wavenumbers,
where cosh^2(pi(k + sqrt(g) k')) overflows, stay finite.  The two full-case
amplitudes share the gamma pair with argument k + sqrt(g) k'; it is computed
once and reused, and their common squared modulus is the printed closed-form
probability, which cross-validates the amplitude products.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import ChannelClosedError, InvalidParameterError
from .params import (
    CaseKind,
    ConfluentFirstParams,
    ConfluentSecondParams,
    InvariantParams,
)
from .specfun import is_nonpositive_integer, log_gamma

__all__ = [
    "ReflectionData",
    "reflect_full",
    "reflect_confluent_first",
    "reflect_confluent_second",
    "reflection_probability_full",
]


@dataclass(frozen=True)
class ReflectionData:
    """Reflection amplitudes at one energy.

    k is the left wavenumber sqrt(eps - q^2); k_prime the right wavenumber
    where a right channel exists.  Absent amplitudes are None (one-sided
    scattering); P is the common reflection probability.
    """

    energy: float
    k: float | None
    k_prime: float | None
    r_left: complex | None
    r_right: complex | None
    P: float


def _log_cosh_sq_minus_cos_sq(x: float, y: float) -> float:
    """log(cosh(x)^2 - cos(y)^2), overflow-safe for large |x|.

    Returns -inf when the difference vanishes (the reflectionless
    coincidence x = 0 with integer y/pi).
    """
    ax = abs(x)
    # cosh^2 x = e^{2ax} (1 + e^{-2ax})^2 / 4
    inner = (1.0 + math.exp(-2.0 * ax)) ** 2 \
        - 4.0 * math.cos(y) ** 2 * math.exp(-2.0 * ax)
    if inner <= 0.0:
        return -math.inf
    return 2.0 * ax - 2.0 * math.log(2.0) + math.log(inner)


def reflection_probability_full(params: InvariantParams, energy: float) -> float:
    """Printed closed-form P, evaluated in log space."""
    k, kp = _full_wavenumbers(params, energy)
    sg = math.sqrt(params.g)
    sigma = params.sigma
    log_num = _log_cosh_sq_minus_cos_sq(math.pi * (k - sg * kp), math.pi * sigma)
    log_den = _log_cosh_sq_minus_cos_sq(math.pi * (k + sg * kp), math.pi * sigma)
    if log_num == -math.inf:
        return 0.0
    return math.exp(log_num - log_den)


def _full_wavenumbers(params: InvariantParams, energy: float):
    k2 = energy - params.q**2
    kp2 = energy - params.r**2 / params.g
    if k2 <= 0 or kp2 <= 0:
        raise ChannelClosedError(
            f"both channels must be open: need energy > max(q^2, r^2/g) = "
            f"{max(params.q**2, params.r**2 / params.g):g}, got {energy:g}"
        )
    return math.sqrt(k2), math.sqrt(kp2)


def _exp_gamma_ratio(base: complex, shared: complex, dens) -> complex:
    """exp(base + shared - sum log_gamma(dens)); a denominator pole makes
    the amplitude exactly zero (the reflectionless coincidence)."""
    if any(is_nonpositive_integer(d) for d in dens):
        return 0.0j
    return cmath.exp(base + shared - sum(log_gamma(d) for d in dens))


def reflect_full(params: InvariantParams, energy: float) -> ReflectionData:
    """Both amplitudes of the full case, as printed, plus the closed-form P."""
    if params.case is not CaseKind.FULL_HYPERGEOMETRIC:
        raise InvalidParameterError("reflect_full needs full-case parameters")
    k, kp = _full_wavenumbers(params, energy)
    q, r, sigma = params.q, params.r, params.sigma
    sg = math.sqrt(params.g)
    u = k + sg * kp
    v = k - sg * kp
    lw = math.log(params.omega)

    # gamma pair shared by both amplitudes (arguments never hit poles:
    # u > 0 keeps them off the real axis)
    shared = log_gamma(complex(-sigma, -u)) + log_gamma(complex(sigma + 1.0, -u))

    base_rr = (
        cmath.log(complex(r, sg * kp) / complex(r, -sg * kp))
        + log_gamma(complex(0.0, 2.0 * sg * kp))
        - log_gamma(complex(0.0, -2.0 * sg * kp))
        + 2j * sg * kp * lw
    )
    r_right = _exp_gamma_ratio(
        base_rr, shared,
        [complex(-sigma, -v), complex(sigma + 1.0, -v)],
    )
    base_rl = (
        cmath.log(complex(-q, k) / complex(q, k))
        + log_gamma(complex(1.0, 2.0 * k))
        - log_gamma(complex(1.0, -2.0 * k))
        - 2j * k * lw
    )
    r_left = _exp_gamma_ratio(
        base_rl, shared,
        [complex(-sigma, v), complex(sigma + 1.0, v)],
    )
    return ReflectionData(
        energy=energy,
        k=k,
        k_prime=kp,
        r_left=r_left,
        r_right=r_right,
        P=reflection_probability_full(params, energy),
    )


def reflect_confluent_first(params: ConfluentFirstParams, energy: float) -> ReflectionData:
    """Left reflection amplitude of the confluent first kind; |r| = 1 since
    the oscillator-like right side blocks transmission."""
    q, p, beta = params.q, params.p, params.beta
    k2 = energy - q * q
    if k2 <= 0:
        raise ChannelClosedError(
            f"left channel needs energy > q^2 = {q * q:g}, got {energy:g}"
        )
    k = math.sqrt(k2)
    base = cmath.log(complex(-q, k) / complex(q, k)) + log_gamma(
        complex(1.0, 2.0 * k)
    ) - log_gamma(complex(1.0, -2.0 * k))
    if beta < 0:
        w = 1.0 - q + p * energy
        log_r = (
            base
            + log_gamma(complex(w, -k))
            - log_gamma(complex(w, k))
            - 2j * k * math.log(-beta)
        )
    else:
        w = q - p * energy
        log_r = (
            base
            + log_gamma(complex(w, -k))
            - log_gamma(complex(w, k))
            - 2j * k * math.log(beta)
        )
    r = cmath.exp(log_r)
    return ReflectionData(energy=energy, k=k, k_prime=None,
                          r_left=r, r_right=None, P=abs(r) ** 2)


def reflect_confluent_second(params: ConfluentSecondParams, energy: float) -> ReflectionData:
    """Confluent second kind: left amplitude above q^2; right amplitude
    i e^{-2 k pi} for any positive energy (k continues to i sqrt(q^2 - eps)
    below the left threshold, keeping |r_right| = 1 there)."""
    q, rho = params.q, params.rho
    if energy <= 0:
        raise ChannelClosedError(f"right channel needs energy > 0, got {energy:g}")
    k2 = energy - q * q
    if k2 > 0:
        k = math.sqrt(k2)
        r_right = 1j * math.exp(-2.0 * k * math.pi)
        log_rl = (
            cmath.log(complex(-q, k) / complex(q, k))
            + log_gamma(complex(1.0, 2.0 * k))
            - log_gamma(complex(1.0, -2.0 * k))
            - 2j * k * math.log(energy / rho)
            - 2.0 * k * math.pi
        )
        return ReflectionData(energy=energy, k=k, k_prime=math.sqrt(energy),
                              r_left=cmath.exp(log_rl), r_right=r_right,
                              P=abs(r_right) ** 2)
    kc = complex(0.0, math.sqrt(-k2))
    r_right = 1j * cmath.exp(-2.0 * math.pi * kc)
    return ReflectionData(energy=energy, k=None, k_prime=math.sqrt(energy),
                          r_left=None, r_right=r_right, P=abs(r_right) ** 2)
