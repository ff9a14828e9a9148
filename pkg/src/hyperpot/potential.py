"""The rational potential, the weight function, the z <-> x coordinate map,
and an independent reconstruction of the potential through the
reduction-of-order pipeline.

The potential in every parametrization is

    U(x) = (a4 x^4 + a3 x^3 + a2 x^2 + a1 x + a0) / ((x + rho)^3 (1 + omega x))

with omega = 0 in the confluent cases.  The weight w(x) =
(1 + x/rho) / (x^2 (1 + omega x)) defines z(x) = int sqrt(w) dx; the additive
constant is fixed by z(x) - ln x -> 0 as x -> 0, which makes z reproducible
across runs and matches the small-x form of every asymptotic expression used
downstream.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.integrate import IntegrationWarning, quad, solve_ivp
from scipy.optimize import brentq

from .errors import InvalidParameterError, NonConvergenceError
from .params import (
    CaseKind,
    ConfluentFirstParams,
    ConfluentSecondParams,
    InvariantParams,
    RawParams,
    derive_dependent,
)

__all__ = [
    "PotentialCoefficients",
    "coefficients",
    "evaluate_U",
    "weight_w",
    "weight_dw",
    "z_of_x",
    "x_of_z",
    "schwartzian_term",
    "liouville_reconstruct",
    "GridMapping",
    "build_mapping",
]


@dataclass(frozen=True)
class PotentialCoefficients:
    """Numerator coefficients and denominator data of the rational potential.

    lambda0_shift is subtracted after the rational evaluation; it is zero in
    the invariant parametrizations and equals lambda0 for raw parameters, so
    evaluate_U always returns the level-shifted U.
    """

    a4: float
    a3: float
    a2: float
    a1: float
    a0: float
    rho: float
    omega: float
    lambda0_shift: float = 0.0


def coefficients(params) -> PotentialCoefficients:
    """Closed-form numerator coefficients for any parametrization."""
    if isinstance(params, RawParams):
        return _coefficients_raw(params)
    if isinstance(params, InvariantParams):
        return _coefficients_invariant(params)
    if isinstance(params, ConfluentFirstParams):
        return _coefficients_confluent_first(params)
    if isinstance(params, ConfluentSecondParams):
        return _coefficients_confluent_second(params)
    raise InvalidParameterError(f"unsupported parameter type {type(params)!r}")


def _coefficients_invariant(pp: InvariantParams) -> PotentialCoefficients:
    q, r, rho, w = pp.q, pp.r, pp.rho, pp.omega
    wr = w * rho
    a4 = w * w * rho * r * r
    a3 = (2.0 * w * w * rho * rho * r * r + 2.0 * wr * q * r - wr * q
          + w * w * rho * rho * r + 0.25 * wr * (1.0 - wr))
    a2 = rho * (q * q + w * w * rho * rho * r * r + 4.0 * wr * q * r
                - (1.0 + wr) * q + wr * (1.0 + wr) * r
                + (3.0 / 16.0) * (1.0 - wr) ** 2)
    a1 = rho * rho * (2.0 * q * q + 2.0 * wr * q * r - q + wr * r
                      + 0.25 * (wr - 1.0))
    a0 = rho**3 * q * q
    return PotentialCoefficients(a4, a3, a2, a1, a0, rho, w)


def _coefficients_confluent_first(pp: ConfluentFirstParams) -> PotentialCoefficients:
    q, b, rho = pp.q, pp.beta, pp.rho
    a4 = 0.25 * rho * b * b
    a3 = 0.5 * rho * rho * b * b + rho * q * b
    a2 = rho * (q * q + 0.25 * rho * rho * b * b + 2.0 * rho * q * b - q
                + 0.5 * rho * b + 3.0 / 16.0)
    a1 = rho * rho * (2.0 * q * q + rho * q * b - q + 0.5 * rho * b - 0.25)
    a0 = rho**3 * q * q
    return PotentialCoefficients(a4, a3, a2, a1, a0, rho, 0.0)


def _coefficients_confluent_second(pp: ConfluentSecondParams) -> PotentialCoefficients:
    q, rho = pp.q, pp.rho
    a2 = (q * q - q + 3.0 / 16.0) * rho
    a1 = (2.0 * q * q - q - 0.25) * rho * rho
    a0 = q * q * rho**3
    return PotentialCoefficients(0.0, 0.0, a2, a1, a0, rho, 0.0)


def _coefficients_raw(pp: RawParams) -> PotentialCoefficients:
    s, al, be, w, rho = pp.s, pp.alpha, pp.beta, pp.omega, pp.rho
    wr = w * rho
    a4 = ((2.25 * wr - 3.0) * w * s * s
          + (1.5 * be * rho - 2.0 * al - 3.0 * wr + 3.0) * w * s
          + (be * be * rho / (4.0 * w) + rho * w - be * rho) * w) if w != 0 else (
        0.25 * rho * be * be)
    a3 = ((4.5 * wr * wr - 4.5 * wr - 3.0) * s * s
          + (-4.5 * wr * wr + 3.0 * wr + 3.0 * w * rho * rho * be
             + 1.5 * rho * be - 4.5 * al * wr - 2.0 * al + 3.0) * s
          + 0.5 * (rho * rho * be * be - 3.0 * w * rho * rho * be
                   + rho * al * be - 3.0 * al * wr + 3.0 * wr - rho * be)
          + 0.25 * wr * (3.0 * wr + 1.0))
    a2 = (rho / 4.0) * (
        9.0 * (wr * wr - 3.0) * s * s
        + 6.0 * (4.0 - 3.0 * al - 2.0 * al * wr + 2.0 * be * rho
                 + w * rho * rho * be - wr * wr) * s
        + rho * rho * be * be - 2.0 * w * rho * rho * be + 4.0 * al * be * rho
        - 2.0 * be * rho - 10.0 * al * wr + al * al - 4.0 * al
        + 0.75 * wr * wr + 4.5 * wr + 3.75)
    a1 = (rho * rho / 4.0) * (
        6.0 * (wr - 3.0) * s * s
        + (6.0 * be * rho - 2.0 * al * wr - 12.0 * al + 18.0) * s
        + (2.0 * al * be * rho - 4.0 * al * wr + 2.0 * al * al - 6.0 * al
           + wr + 3.0))
    a0 = (-0.75 * s * s - 0.5 * (al - 3.0) * s + 0.25 * (al - 1.0) ** 2) * rho**3
    return PotentialCoefficients(a4, a3, a2, a1, a0, rho, w,
                                 lambda0_shift=pp.lambda0)


def evaluate_U(coeffs: PotentialCoefficients, x):
    """Level-shifted potential U at x (scalar or array), x > 0."""
    x = np.asarray(x, dtype=float) if not np.isscalar(x) else x
    num = (((coeffs.a4 * x + coeffs.a3) * x + coeffs.a2) * x + coeffs.a1) * x + coeffs.a0
    den = (x + coeffs.rho) ** 3 * (1.0 + coeffs.omega * x)
    return num / den - coeffs.lambda0_shift


def weight_w(params, x):
    """Weight function w(x) of the Liouville form; positive for x > 0."""
    omega = getattr(params, "omega", 0.0)
    rho = params.rho
    return (1.0 + x / rho) / (x * x * (1.0 + omega * x))


def weight_dw(params, x):
    """dw/dx, used by the x-form residual of the eigenvalue equation."""
    omega = getattr(params, "omega", 0.0)
    rho = params.rho
    w = weight_w(params, x)
    # d log w = 1/(x+rho) - 2/x - omega/(1+omega x)
    return w * (1.0 / (x + rho) - 2.0 / x - omega / (1.0 + omega * x))


def _sqrt_w_rel(params):
    """h(t) = sqrt(w) - 1/t, the integrable remainder of the z integrand."""
    omega = getattr(params, "omega", 0.0)
    rho = params.rho

    def h(t):
        if t == 0.0:
            return 0.5 / rho - 0.5 * omega
        return (math.sqrt((1.0 + t / rho) / (1.0 + omega * t)) - 1.0) / t

    return h


def z_of_x(params, x: float) -> float:
    """z(x) = int sqrt(w) dx anchored so z - ln x -> 0 as x -> 0."""
    if x <= 0:
        raise InvalidParameterError(f"x must be positive, got {x}")
    h = _sqrt_w_rel(params)
    # the 1/t part of sqrt(w) integrates to ln x exactly; quadrature only
    # sees the bounded remainder
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IntegrationWarning)
        val, err = quad(h, 0.0, x, limit=200, epsabs=1e-13, epsrel=1e-12)
    if not math.isfinite(val) or err > 1e-9 * max(1.0, abs(val)):
        raise NonConvergenceError(
            f"z(x) quadrature error estimate {err:g} too large at x = {x:g}"
        )
    return math.log(x) + val


def x_of_z(params, z: float) -> float:
    """Inverse of z_of_x by bracketing plus safeguarded Newton, to 1e-12."""
    omega = getattr(params, "omega", 0.0)
    rho = params.rho
    # asymptotic initial guess; bracketing below absorbs its slack
    if z < 0:
        guess = math.exp(z)
    elif omega > 0:
        guess = math.exp(min(math.sqrt(rho * omega), 1.0) * z)
    else:
        guess = max(rho * z * z / 4.0, 1.0)
    guess = min(max(guess, 1e-300), 1e280)
    lo = hi = guess
    for _ in range(2000):
        if z_of_x(params, lo) <= z:
            break
        lo /= 4.0
    else:
        raise NonConvergenceError("x_of_z bracketing failed from below")
    for _ in range(2000):
        if z_of_x(params, hi) >= z:
            break
        hi *= 4.0
    else:
        raise NonConvergenceError("x_of_z bracketing failed from above")
    if lo == hi:
        return lo
    x = brentq(lambda t: z_of_x(params, t) - z, lo, hi, xtol=1e-300, rtol=1e-13)
    # two Newton polish steps with the analytic slope z' = sqrt(w)
    for _ in range(2):
        step = (z_of_x(params, x) - z) / math.sqrt(weight_w(params, x))
        if x - step > 0:
            x = x - step
    return x


def schwartzian_term(params, x):
    """{z, x}/w as a closed-form rational function of x."""
    omega = getattr(params, "omega", 0.0)
    rho = params.rho
    num = (4.0 * omega**2 * x**4
           + (4.0 * omega + 12.0 * omega**2 * rho) * x**3
           + (3.0 + 18.0 * omega * rho + 3.0 * omega**2 * rho**2) * x**2
           + (12.0 * rho + 4.0 * omega * rho**2) * x
           + 4.0 * rho**2)
    return (rho / 16.0) * num / ((x + rho) ** 3 * (1.0 + omega * x))


def schwartzian_from_weight(params, x):
    """{z, x}/w evaluated from the defining derivative combination of w.

    Kept separate from the printed rational form so the two can be played
    against each other in tests.
    """
    omega = getattr(params, "omega", 0.0)
    rho = params.rho
    lw1 = 1.0 / (x + rho) - 2.0 / x - omega / (1.0 + omega * x)
    lw2 = -1.0 / (x + rho) ** 2 + 2.0 / (x * x) + omega**2 / (1.0 + omega * x) ** 2
    schw = 0.25 * lw2 - (1.0 / 16.0) * lw1 * lw1
    return schw / weight_w(params, x)


def liouville_reconstruct(raw: RawParams, x):
    """U(x) rebuilt from first principles through the reduction pipeline.

    Assembles the canonical-form potential v(x) from the operator
    coefficients and the factored solution y0 = x^s (x + rho), adds the
    Schwartzian of the coordinate map, divides by the weight, and shifts by
    lambda0.  Entirely independent of the printed closed-form coefficients.
    """
    s, al, be, omega, rho = raw.s, raw.alpha, raw.beta, raw.omega, raw.rho
    dep = derive_dependent(raw)
    x = np.asarray(x, dtype=float) if not np.isscalar(x) else x

    ba = (al + be * x) / (x * (1.0 + omega * x))            # b/a
    den = x + omega * x * x
    dba = (be * den - (al + be * x) * (1.0 + 2.0 * omega * x)) / den**2
    y1 = s / x + 1.0 / (x + rho)                            # y0'/y0
    dy1 = -s / (x * x) - 1.0 / (x + rho) ** 2
    c0_over_a = dep.delta / (x * (1.0 + omega * x))         # (delta x)/a

    v = (-c0_over_a + 0.5 * dba + 0.25 * ba * ba
         - 0.5 * ba * y1 - 1.5 * dy1 - 0.75 * y1 * y1)

    lw1 = 1.0 / (x + rho) - 2.0 / x - omega / (1.0 + omega * x)
    lw2 = -1.0 / (x + rho) ** 2 + 2.0 / (x * x) + omega**2 / (1.0 + omega * x) ** 2
    schw = 0.25 * lw2 - (1.0 / 16.0) * lw1 * lw1

    w = weight_w(raw, x)
    return (v + schw) / w - raw.lambda0


@dataclass(frozen=True)
class GridMapping:
    """Sampled monotone correspondence x(z) on a uniform z grid."""

    z: np.ndarray
    x: np.ndarray
    case: CaseKind

    def __post_init__(self):
        if not (np.all(np.diff(self.z) > 0) and np.all(np.diff(self.x) > 0)):
            raise InvalidParameterError("grid mapping must be strictly monotone")


def build_mapping(params, z_grid: np.ndarray) -> GridMapping:
    """x(z) on the given ascending grid via the flow du/dz = 1/(x sqrt(w)).

    Integrates u = ln x, whose slope tends to 1 as z -> -infinity, anchored
    by the exact small-x limit x = e^z (1 + O(x)).
    """
    omega = getattr(params, "omega", 0.0)
    rho = params.rho
    z0 = float(z_grid[0])
    # anchor: ln x = z - integral of the remainder, which is O(x) small
    x0 = math.exp(z0)
    h0 = 0.5 / rho - 0.5 * omega
    u0 = z0 - h0 * x0
    if x0 > 1e-6:
        u0 = math.log(x_of_z(params, z0))

    def rhs(_z, u):
        ex = math.exp(u[0])
        return [math.sqrt((1.0 + omega * ex) / (1.0 + ex / rho))]

    sol = solve_ivp(rhs, (z0, float(z_grid[-1])), [u0], t_eval=z_grid,
                    method="DOP853", rtol=1e-12, atol=1e-12)
    if not sol.success:
        raise NonConvergenceError(f"coordinate map integration failed: {sol.message}")
    return GridMapping(z=np.asarray(z_grid, dtype=float),
                       x=np.exp(sol.y[0]),
                       case=params.case)
