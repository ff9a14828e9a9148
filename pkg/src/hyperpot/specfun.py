"""Complex gamma machinery and generalized hypergeometric functions pFq
(p <= 3, q <= 2).

Evaluation strategy:

* power series inside a safe fraction of the convergence region,
* exact polynomial summation when an upper parameter terminates the series,
* analytic continuation by adaptive integration of the defining third-order
  ODE along the real axis for everything else,
* large-argument connection formulas (three power branches for 3F2, two
  powers plus one exponential for 2F2, one power plus an oscillatory pair
  for 1F2), each branch carrying its inverse-argument correction series.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import solve_ivp

from .errors import (
    DegenerateParameterError,
    DivergenceError,
    InvalidParameterError,
    NonConvergenceError,
    PathSingularityError,
    PoleError,
)

__all__ = [
    "log_gamma",
    "gamma_product",
    "pochhammer",
    "is_nonpositive_integer",
    "HypSpec",
    "hyp_series",
    "hyp_continued",
    "ContinuedProfile",
    "ExpansionTerm",
    "AsymptoticExpansion",
    "branch_series_coefficients",
    "connection_3f2",
    "connection_2f2",
    "connection_1f2",
]

# Lanczos rational approximation with the reflection formula covering
# Re z < 1/2.  The widely used g = 7, 9-term set carries an intrinsic
# relative error of ~2e-13 near |Im z| = 50, short of the accuracy target,
# so this set was refit by the same construction (interpolation of the
# shape function at the integers, where Gamma is exact) with g = 10.5 and
# 13 terms: intrinsic error < 4e-19 for Re z >= 1/2, |z| <= 120.  The
# internals run in numpy long double so the returned float64 log is
# accurate essentially to storage precision.
_LD = np.longdouble
_LANCZOS_G = _LD("10.5")
_LANCZOS_COEFFS = tuple(
    _LD(c)
    for c in (
        "1.000000000000000000382571",
        "27787.84609602072988055055",
        "-87281.8950694802737097174",
        "107636.8284980755556542411",
        "-66170.33430854221641691993",
        "21288.56276244758835289888",
        "-3447.753858194322830220875",
        "247.825185904859915290455",
        "-6.022438662558405334915892",
        "0.02646875248323554158233586",
        "-0.000002989006550878978279823045",
        "6.437030808041601021556566e-10",
        "-1.494952633266741019267143e-10",
    )
)
_PI_LD = _LD("3.14159265358979323846264338327950288")
_LOG_PI_LD = _LD("1.14472988584940017414342735135305871")
_LOG_SQRT_2PI_LD = _LD("0.91893853320467274178032973640561764")


def is_nonpositive_integer(z, tol: float = 1e-12) -> bool:
    """True if z is within tol of one of 0, -1, -2, ..."""
    z = complex(z)
    if abs(z.imag) > tol:
        return False
    n = round(z.real)
    return n <= 0 and abs(z.real - n) <= tol


def _clog_ld(x, y):
    return np.log(np.hypot(x, y)), np.arctan2(y, x)


def _cdiv_ld(ar, ai, br, bi):
    den = br * br + bi * bi
    return (ar * br + ai * bi) / den, (ai * br - ar * bi) / den


def _log_sin_pi_ld(x, y):
    """log(sin(pi z)) on long double pairs, safe for large |Im z|."""
    px, py = _PI_LD * x, _PI_LD * y
    if abs(float(py)) < 11000.0:
        sr = np.sin(px) * np.cosh(py)
        si = np.cos(px) * np.sinh(py)
        return _clog_ld(sr, si)
    # factor the dominant exponential: log magnitude |Im pi z| - log 2,
    # phase from the surviving e^{-+ i pi x} factor
    sign = 1.0 if float(py) > 0 else -1.0
    re = sign * py - _LD(np.log(2.0))
    im = -sign * px + sign * _PI_LD / 2
    # fold the phase into (-pi, pi]
    im_f = float(im)
    im = im - _LD(2.0 * math.pi * round(im_f / (2.0 * math.pi)))
    return re, im


def _log_gamma_ld(x, y):
    """log Gamma on long double component pairs; Re x unrestricted."""
    if float(x) < 0.5:
        lx, ly = _log_sin_pi_ld(x, y)
        gx, gy = _log_gamma_ld(_LD(1.0) - x, -y)
        return _LOG_PI_LD - lx - gx, -ly - gy
    zr, zi = x - _LD(1.0), y
    sr, si = _LANCZOS_COEFFS[0], _LD(0.0)
    for i, c in enumerate(_LANCZOS_COEFFS[1:], start=1):
        dr, di = _cdiv_ld(c, _LD(0.0), zr + _LD(i), zi)
        sr, si = sr + dr, si + di
    tr, ti = zr + _LANCZOS_G + _LD(0.5), zi
    ltr, lti = _clog_ld(tr, ti)
    # (z - 1/2) * log t - t
    hr, hi = zr + _LD(0.5), zi
    pr = hr * ltr - hi * lti - tr
    pi_ = hr * lti + hi * ltr - ti
    lsr, lsi = _clog_ld(sr, si)
    return _LOG_SQRT_2PI_LD + pr + lsr, pi_ + lsi


def log_gamma(z) -> complex:
    """Principal-branch log of Gamma(z) for complex z.

    Raises PoleError at non-positive integers.  exp(log_gamma(z)) is
    accurate to well under 1e-13 relative for |z| <= 50.
    """
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise InvalidParameterError("log_gamma argument must be finite")
    if z.imag == 0.0 and z.real <= 0.0 and z.real == round(z.real):
        raise PoleError(f"gamma pole at z = {z.real:g}")
    re, im = _log_gamma_ld(_LD(z.real), _LD(z.imag))
    return complex(float(re), float(im))


def gamma_product(numerators, denominators) -> complex:
    """exp(sum log Gamma(numerators) - sum log Gamma(denominators)).

    Unbalanced denominator poles make the product exactly zero.  A single
    numerator pole balanced by a denominator pole takes the finite limit
    Gamma(-m)/Gamma(-n) -> (-1)^(n-m) n!/m! (terminating coincidences);
    anything with more numerator poles than that is a degenerate case and
    is reported, never computed.
    """
    num_ok = [v for v in numerators if not is_nonpositive_integer(v)]
    num_poles = [-round(complex(v).real) for v in numerators
                 if is_nonpositive_integer(v)]
    den_ok = [v for v in denominators if not is_nonpositive_integer(v)]
    den_poles = [-round(complex(v).real) for v in denominators
                 if is_nonpositive_integer(v)]
    if len(num_poles) > len(den_poles) or len(num_poles) > 1:
        raise DegenerateParameterError(
            "gamma product has an uncancelled numerator pole "
            "(integer parameter difference)"
        )
    if len(den_poles) > len(num_poles):
        return 0.0j
    factor = 1.0
    if num_poles:
        m, n = num_poles[0], den_poles[0]
        factor = (-1.0) ** (n - m) * math.factorial(n) / math.factorial(m)
    s = sum(log_gamma(v) for v in num_ok) - sum(log_gamma(v) for v in den_ok)
    return factor * cmath.exp(s)


def pochhammer(a, n: int) -> complex:
    """Rising factorial (a)_n = a (a+1) ... (a+n-1); equals 1 for n = 0."""
    if n < 0:
        raise InvalidParameterError("pochhammer order must be a natural number")
    out = 1.0 + 0.0j
    a = complex(a)
    for k in range(n):
        out *= a + k
    return out


@dataclass(frozen=True)
class HypSpec:
    """Parameter set of a generalized hypergeometric series pFq.

    upper and lower hold the numerator and denominator parameters
    (p <= 3, q <= 2); argument is the point of evaluation.
    """

    upper: tuple
    lower: tuple
    argument: complex = 0.0

    def __post_init__(self):
        upper = tuple(complex(u) for u in self.upper)
        lower = tuple(complex(l) for l in self.lower)
        object.__setattr__(self, "upper", upper)
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "argument", complex(self.argument))
        if len(upper) > 3 or len(lower) > 2:
            raise InvalidParameterError("supported families have p <= 3, q <= 2")
        for v in (*upper, *lower, self.argument):
            if not (math.isfinite(v.real) and math.isfinite(v.imag)):
                raise InvalidParameterError("hypergeometric parameters must be finite")
        term = self.termination_order()
        for l in lower:
            if is_nonpositive_integer(l):
                n_pole = -round(l.real)
                if term is None or term > n_pole:
                    raise InvalidParameterError(
                        f"lower parameter {l} is a non-positive integer and the "
                        "series does not terminate before its pole"
                    )

    @property
    def p(self) -> int:
        return len(self.upper)

    @property
    def q(self) -> int:
        return len(self.lower)

    def termination_order(self):
        """Smallest n with some upper parameter equal to -n, else None."""
        orders = [
            -round(u.real) for u in self.upper if is_nonpositive_integer(u)
        ]
        return min(orders) if orders else None

    def series_radius(self) -> float:
        """Convergence radius of the defining series."""
        return 1.0 if self.p == self.q + 1 else math.inf

    def shifted(self, k: int) -> "HypSpec":
        """Spec of the k-th argument derivative (all parameters shifted by k)."""
        return HypSpec(
            tuple(u + k for u in self.upper),
            tuple(l + k for l in self.lower),
            self.argument,
        )

    def derivative_prefactor(self, k: int) -> complex:
        """prod (a_i)_k / prod (b_j)_k, the chain factor of the k-th derivative."""
        out = 1.0 + 0.0j
        for u in self.upper:
            out *= pochhammer(u, k)
        for l in self.lower:
            out /= pochhammer(l, k)
        return out


_MAX_SERIES_TERMS = 20000


def hyp_series(spec: HypSpec, tol: float = 1e-15) -> complex:
    """Sum the defining series of pFq at spec.argument.

    Terminating series are summed exactly.  Otherwise the argument must lie
    strictly inside the convergence region; the sum stops once three
    consecutive terms fall below tol * |partial sum| while the term ratio is
    safely below one (the ratio tends to |z| from above when the parameter
    excess is positive, so the guard sits midway between |z| and 1).
    """
    z = spec.argument
    term_order = spec.termination_order()
    if term_order is None and abs(z) >= spec.series_radius():
        raise DivergenceError(
            f"series argument |z| = {abs(z):g} outside convergence region"
        )
    if z == 0:
        return 1.0 + 0.0j
    term = 1.0 + 0.0j
    total = term
    quiet = 0
    n = 0
    limit = term_order if term_order is not None else _MAX_SERIES_TERMS
    ratio_guard = 0.5 * (1.0 + min(abs(z), 0.99)) if spec.p == spec.q + 1 else 0.5
    while n < limit:
        ratio = z / (n + 1)
        for u in spec.upper:
            ratio *= u + n
        for l in spec.lower:
            ratio /= l + n
        term *= ratio
        total += term
        n += 1
        if term_order is None:
            if abs(term) < tol * abs(total) and abs(ratio) < ratio_guard:
                quiet += 1
                if quiet >= 3:
                    return total
            else:
                quiet = 0
    if term_order is not None:
        return total
    raise NonConvergenceError(
        f"series did not meet tol = {tol:g} within {_MAX_SERIES_TERMS} terms"
    )


def _series_state(spec: HypSpec, z0: float, order: int) -> list:
    """[F, F', ..., F^(order-1)] at z0 by differentiated series."""
    out = []
    for k in range(order):
        shifted = HypSpec(spec.shifted(k).upper, spec.shifted(k).lower, z0)
        out.append(spec.derivative_prefactor(k) * hyp_series(shifted))
    return out


def _ode_rhs(upper, lower):
    """Right-hand side of the order-3 ODE satisfied by pF2, p <= 3.

    Derived from theta (theta+l1-1)(theta+l2-1) F = z prod(theta+a_i) F with
    theta = z d/dz, divided once by z.
    """
    l1, l2 = lower
    p = len(upper)
    e1 = sum(upper)
    e2 = sum(upper[i] * upper[j] for i in range(p) for j in range(i + 1, p))
    e3 = upper[0] * upper[1] * upper[2] if p == 3 else 0.0

    if p == 3:
        def rhs(z, y):
            f, f1, f2 = y
            den = z * z * (1.0 - z)
            f3 = -(
                ((l1 + l2 + 1) * z - (3 + e1) * z * z) * f2
                + (l1 * l2 - (1 + e1 + e2) * z) * f1
                - e3 * f
            ) / den
            return [f1, f2, f3]
    elif p == 2:
        def rhs(z, y):
            f, f1, f2 = y
            f3 = -(
                ((l1 + l2 + 1) * z - z * z) * f2
                + (l1 * l2 - (1 + e1) * z) * f1
                - e2 * f
            ) / (z * z)
            return [f1, f2, f3]
    elif p == 1:
        def rhs(z, y):
            f, f1, f2 = y
            f3 = -(
                (l1 + l2 + 1) * z * f2 + (l1 * l2 - z) * f1 - e1 * f
            ) / (z * z)
            return [f1, f2, f3]
    else:
        def rhs(z, y):
            f, f1, f2 = y
            f3 = -((l1 + l2 + 1) * z * f2 + l1 * l2 * f1 - f) / (z * z)
            return [f1, f2, f3]
    return rhs


def _switch_radius(spec: HypSpec) -> float:
    # half the distance to the nearest finite singularity (z = 1) for the
    # full family; the confluent families are entire, so a fixed comfort
    # radius keeps the series free of cancellation
    return 0.5 if spec.p == spec.q + 1 else 4.0


def _check_path(spec: HypSpec, target: float):
    if spec.p == spec.q + 1 and target >= 1.0:
        raise PathSingularityError(
            "continuation path from 0 crosses the singular point at argument 1"
        )


def hyp_continued(spec: HypSpec, target: float):
    """(F, dF/dz) of the spec's family at a real argument target.

    Uses the series inside the switch radius, exact polynomial evaluation for
    terminating parameter sets, and DOP853 integration of the defining ODE
    along the real axis otherwise.
    """
    target = float(target)
    if spec.termination_order() is not None:
        return _polynomial_eval(spec, target)
    _check_path(spec, target)
    r_switch = _switch_radius(spec)
    if abs(target) <= r_switch:
        at = HypSpec(spec.upper, spec.lower, target)
        d = HypSpec(spec.shifted(1).upper, spec.shifted(1).lower, target)
        return hyp_series(at), spec.derivative_prefactor(1) * hyp_series(d)
    if spec.q != 2:
        raise NonConvergenceError(
            "ODE continuation is implemented for the q = 2 families"
        )
    z0 = math.copysign(r_switch, target)
    y0 = _series_state(spec, z0, 3)
    sol = solve_ivp(
        _ode_rhs(spec.upper, spec.lower),
        (z0, target),
        y0,
        method="DOP853",
        rtol=1e-12,
        atol=1e-14 * max(1.0, max(abs(v) for v in y0)),
    )
    if not sol.success:
        raise NonConvergenceError(f"ODE continuation failed: {sol.message}")
    return complex(sol.y[0, -1]), complex(sol.y[1, -1])


def _polynomial_eval(spec: HypSpec, target: float):
    """Exact value and derivative of a terminating series at any argument."""
    n_max = spec.termination_order()
    coeffs = []
    c = 1.0 + 0.0j
    for n in range(n_max + 1):
        coeffs.append(c)
        ratio = 1.0 / (n + 1)
        for u in spec.upper:
            ratio *= u + n
        for l in spec.lower:
            ratio /= l + n
        c *= ratio
    value = 0.0j
    deriv = 0.0j
    for n in range(n_max, -1, -1):
        value = value * target + coeffs[n]
        if n >= 1:
            deriv = deriv * target + n * coeffs[n]
    return value, deriv


class ContinuedProfile:
    """F and dF/dz on a whole one-signed range of real arguments.

    Integrates the defining ODE once with dense output so that repeated
    evaluations (wavefunction grids, residual stencils) stay cheap.
    """

    def __init__(self, spec: HypSpec, z_reach: float):
        self.spec = spec
        self._terminating = spec.termination_order() is not None
        self._r_switch = _switch_radius(spec)
        self._sol = None
        self._reach = 0.0
        if not self._terminating and abs(z_reach) > self._r_switch:
            self._extend(float(z_reach))

    def _extend(self, z_reach: float):
        _check_path(self.spec, z_reach)
        if self.spec.q != 2:
            raise NonConvergenceError(
                "ODE continuation is implemented for the q = 2 families"
            )
        z0 = math.copysign(self._r_switch, z_reach)
        y0 = _series_state(self.spec, z0, 3)
        sol = solve_ivp(
            _ode_rhs(self.spec.upper, self.spec.lower),
            (z0, z_reach),
            y0,
            method="DOP853",
            rtol=1e-12,
            atol=1e-14 * max(1.0, max(abs(v) for v in y0)),
            dense_output=True,
        )
        if not sol.success:
            raise NonConvergenceError(f"ODE continuation failed: {sol.message}")
        self._sol = sol.sol
        self._reach = z_reach

    def __call__(self, z: float):
        """(F(z), F'(z)); z must share the sign of the prepared range."""
        z = float(z)
        if self._terminating or abs(z) <= self._r_switch:
            return hyp_continued(HypSpec(self.spec.upper, self.spec.lower, z), z)
        if self._sol is None or abs(z) > abs(self._reach):
            self._extend(z * 1.25)
        y = self._sol(z)
        return complex(y[0]), complex(y[1])


@dataclass(frozen=True)
class ExpansionTerm:
    """One branch of a large-argument expansion.

    kind is "power" (coefficient * t^-exponent), "exponential"
    (coefficient * (-t)^-exponent * e^-t) or "oscillatory"
    (coefficient * t^-exponent * e^{phase_sign * i (pi eta + 2 sqrt t)}).
    """

    coefficient: complex
    exponent: complex
    kind: str
    phase_sign: int = 0


@dataclass(frozen=True)
class AsymptoticExpansion:
    """Large-argument form of F(-t), t > 0, for one parameter set.

    terms holds the printed leading data of each branch; evaluate() sums the
    branches including their inverse-argument correction series, so the
    result tracks the true function far beyond leading order.
    """

    terms: tuple
    validity_radius: float
    upper: tuple = field(repr=False, default=())
    lower: tuple = field(repr=False, default=())

    def power_terms(self) -> list:
        return [t for t in self.terms if t.kind == "power"]

    def evaluate(self, t: float, correction_terms: int = 24) -> complex:
        """Value of F(-t) from the expansion, t >= validity requirements."""
        t = float(t)
        if t <= 0:
            raise InvalidParameterError("expansion argument magnitude must be positive")
        total = 0.0j
        for term in self.terms:
            if term.coefficient == 0:
                continue
            if term.kind == "power":
                s, quality = _branch_correction(
                    self.upper, self.lower, -term.exponent, -t, correction_terms
                )
                if quality > 1e-6:
                    raise DegenerateParameterError(
                        "near-integer parameter difference degrades the "
                        f"branch correction series (tail ratio {quality:.1e})"
                    )
                total += term.coefficient * t ** (-term.exponent) * s
            elif term.kind == "exponential":
                # subdominant as t -> +infinity; principal branch for (-t)^h
                h = -term.exponent
                total += term.coefficient * cmath.exp(
                    h * cmath.log(complex(-t)) - t
                )
            else:
                eta = -term.exponent
                s = _oscillatory_correction(
                    self.upper, self.lower, term.phase_sign, correction_terms
                )
                u = math.sqrt(t)
                val = sum(e * u ** (-k) for k, e in enumerate(s))
                total += (
                    term.coefficient
                    * t**eta
                    * cmath.exp(term.phase_sign * 1j * (math.pi * eta + 2.0 * u))
                    * val
                )
        return total


def branch_series_coefficients(upper, lower, mu, kmax: int) -> list:
    """Coefficients d_k of the inverse-argument series on the power branch
    z^mu of the family's large-argument expansion, d_0 = 1.

    The recursion follows from matching powers in the defining ODE:
    d_{k+1} = d_k * P_L(mu - k) / P_R(mu - k - 1) with P_L, P_R the
    characteristic polynomials of the two dimension classes.  An exactly
    vanishing P_R factor signals an integer parameter difference and is
    reported.
    """
    def p_left(tt):
        out = tt
        for l in lower:
            out *= tt + l - 1.0
        return out

    def p_right(tt):
        out = 1.0 + 0.0j
        for u in upper:
            out *= tt + u
        return out

    coeffs = [1.0 + 0.0j]
    for k in range(kmax):
        den = p_right(mu - k - 1.0)
        if den == 0:
            raise DegenerateParameterError(
                "branch correction hit an integer parameter difference"
            )
        coeffs.append(coeffs[-1] * p_left(mu - k) / den)
    return coeffs


def _branch_correction(upper, lower, mu, z, kmax):
    """(correction sum, quality) of the power branch z^mu.

    Convergent for the full family (|z| > 1); asymptotic, summed to its
    smallest term, for the confluent ones.  quality reports the relative
    size of the first neglected term; near-integer parameter differences
    inflate the coefficients and show up here.
    """
    coeffs = branch_series_coefficients(upper, lower, mu, kmax)
    total = coeffs[0]
    smallest = math.inf
    tail = 0.0
    for k, d in enumerate(coeffs[1:], start=1):
        nxt = d * z ** (-k)
        if abs(nxt) > smallest:
            tail = abs(nxt)
            break
        smallest = abs(nxt)
        total += nxt
        tail = abs(nxt)
        if abs(nxt) < 1e-17 * abs(total):
            break
    return total, tail / max(abs(total), 1e-300)


def _oscillatory_correction(upper, lower, sign, kmax) -> list:
    """Coefficients e_k of the e^{sign 2i sqrt t} branch of 1F2(-t).

    Determined by applying the ODE operator, conjugated by the branch's
    exponential-power prefactor, to a truncated series in 1 / sqrt(t) and
    zeroing each order; e_0 = 1 and the leading balance fixes the exponent.
    """
    (a,) = upper
    b, c = lower
    m = a - b - c + 0.5  # twice the printed eta
    big_b = b + c + 1.0
    s2i = sign * 2.0j

    def conj_deriv(series):
        out = [0.0j] * (len(series) + 1)
        for k, v in enumerate(series):
            out[k] += s2i * v
            out[k + 1] += (m - k) * v
        return out

    def shifted(series, j):
        return [0.0j] * j + list(series)

    def operator(series):
        d1 = conj_deriv(series)
        d2 = conj_deriv(d1)
        d3 = conj_deriv(d2)
        n = len(d3) + 2
        out = [0.0j] * n
        for k, v in enumerate(d3):
            out[k] += v
        for k, v in enumerate(shifted(d2, 1)):
            out[k] += (2.0 * big_b - 3.0) * v
        for k, v in enumerate(d1):
            out[k] += 4.0 * v
        for k, v in enumerate(shifted(d1, 2)):
            out[k] += (3.0 - 2.0 * big_b + 4.0 * b * c) * v
        for k, v in enumerate(shifted(series, 1)):
            out[k] += 8.0 * a * v
        return out

    coeffs = [1.0 + 0.0j]
    for k in range(1, min(kmax, 16) + 1):
        unit = [0.0j] * k + [1.0 + 0.0j]
        diag = operator(unit)[k + 1]
        rhs = operator(coeffs + [0.0j])[k + 1]
        coeffs.append(-rhs / diag)
    return coeffs


def connection_3f2(a, b, c, d, e) -> AsymptoticExpansion:
    """Large-argument expansion of 3F2(a,b,c; d,e; -t) in three power branches.

    Branch exponents are the upper parameters; each coefficient is the gamma
    product pairing the other two uppers against the lowers.  Degenerate
    integer differences among a, b, c are reported as errors.
    """
    a, b, c, d, e = (complex(v) for v in (a, b, c, d, e))
    terms = []
    for a1, o1, o2 in ((a, b, c), (b, a, c), (c, a, b)):
        coeff = gamma_product([d, e, o1 - a1, o2 - a1], [o1, o2, d - a1, e - a1])
        terms.append(ExpansionTerm(coeff, a1, "power"))
    return AsymptoticExpansion(tuple(terms), 2.0, (a, b, c), (d, e))


def connection_2f2(a, b, c, d) -> AsymptoticExpansion:
    """Large-argument expansion of 2F2(a,b; c,d; -t): two power branches and
    one exponentially small e^-t branch."""
    a, b, c, d = (complex(v) for v in (a, b, c, d))
    terms = []
    for a1, oth in ((a, b), (b, a)):
        coeff = gamma_product([oth - a1, c, d], [oth, c - a1, d - a1])
        terms.append(ExpansionTerm(coeff, a1, "power"))
    exp_coeff = gamma_product([c, d], [a, b])
    terms.append(ExpansionTerm(exp_coeff, c + d - a - b, "exponential"))
    return AsymptoticExpansion(tuple(terms), 30.0, (a, b), (c, d))


def connection_1f2(a, b, c) -> AsymptoticExpansion:
    """Large-argument expansion of 1F2(a; b,c; -t): one power branch plus the
    oscillatory pair e^{+-i(pi eta + 2 sqrt t)} with eta = (a-b-c+1/2)/2."""
    a, b, c = (complex(v) for v in (a, b, c))
    eta = 0.5 * (a - b - c + 0.5)
    power = gamma_product([b, c], [b - a, c - a])
    osc = gamma_product([b, c], [a]) / (2.0 * math.sqrt(math.pi))
    terms = (
        ExpansionTerm(power, a, "power"),
        ExpansionTerm(osc, -eta, "oscillatory", phase_sign=+1),
        ExpansionTerm(osc, -eta, "oscillatory", phase_sign=-1),
    )
    return AsymptoticExpansion(terms, 30.0, (a,), (b, c))
