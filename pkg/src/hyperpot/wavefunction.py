"""Closed-form wavefunctions for the three cases, their ground states, and
the asymptotic coefficient pairs that carry boundary conditions and
scattering data.

Every case shares the structure

    psi(x) = prefactor(x) * ( x (x + rho) F'(x) + (a x + rho (a + 1)) F(x) )

with F the case's hypergeometric function of argument -scale * x.  The
first-order bracket acts as the ejection operator: it removes the x^{-a}
branch of F at infinity, which is what turns the connection formula into a
two-term boundary condition.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .errors import DegenerateParameterError, InvalidParameterError
from .params import (
    CaseKind,
    ConfluentFirstParams,
    ConfluentSecondParams,
    InvariantParams,
    hyp_data,
)
from .potential import weight_w
from .specfun import (
    ContinuedProfile,
    HypSpec,
    branch_series_coefficients,
    connection_2f2,
    connection_3f2,
)

__all__ = [
    "ground_state_psi",
    "Psi",
    "psi",
    "psi_contiguous",
    "AsymptoticCoefficients",
    "asymptotic_coefficients",
]


def ground_state_psi(params, x):
    """Unnormalized zero-energy eigenfunction of the case, as printed."""
    q, rho = params.q, params.rho
    case = params.case
    if case is CaseKind.FULL_HYPERGEOMETRIC:
        w = params.omega
        return x**q * (1.0 + w * x) ** (params.r - q + 0.25) / (x + rho) ** 0.25
    if case is CaseKind.CONFLUENT_FIRST:
        return x**q * np.exp(params.beta * x / 2.0) / (x + rho) ** 0.25
    return x**q / (x + rho) ** 0.25


class Psi:
    """Callable closed-form solution at one energy.

    Holds the hypergeometric data and a dense continuation of F so that
    repeated evaluations on grids and finite-difference stencils stay cheap.
    Far beyond the series region the bracket is rebuilt from the surviving
    asymptotic branches of F: the ejected branch cancels only through many
    float digits in the direct form, while it is absent from the branch
    form identically.
    """

    def __init__(self, params, energy: float):
        self.params = params
        self.energy = float(energy)
        self.data = hyp_data(params, self.energy)
        self._zero_energy = (
            params.case is CaseKind.CONFLUENT_SECOND and self.energy == 0.0
        )
        self._asym = None
        self._asym_unavailable = False
        if self._zero_energy:
            self._profile = None
            self._t_switch = math.inf
        else:
            spec = HypSpec(self.data.upper, self.data.lower, 0.0)
            self._profile = ContinuedProfile(spec, -1.0)
            self._t_switch = self._switch_magnitude()

    def _switch_magnitude(self) -> float:
        d = self.data
        if self._profile.spec.termination_order() is not None:
            return math.inf  # exact polynomials never need the branch form
        if d.case is CaseKind.FULL_HYPERGEOMETRIC:
            return 4.0
        if d.case is CaseKind.CONFLUENT_FIRST and d.argument_scale > 0:
            # exponential branch must be negligible next to the powers
            return 60.0
        return math.inf

    def _branch_data(self):
        if self._asym is None:
            d = self.data
            if d.case is CaseKind.FULL_HYPERGEOMETRIC:
                conn = connection_3f2(d.a, d.b, d.c, d.d, d.e)
            else:
                conn = connection_2f2(d.a, d.b, d.c, d.d)
            branches = []
            for term in conn.power_terms():
                if term.exponent == d.a:
                    continue  # ejected identically by the bracket
                if term.coefficient == 0:
                    branches.append((term.exponent, term.coefficient, []))
                    continue
                coeffs = branch_series_coefficients(
                    d.upper, d.lower, -term.exponent, 40)
                branches.append((term.exponent, term.coefficient, coeffs))
            self._asym = branches
        return self._asym

    def _bracket_asym(self, x: float) -> complex:
        d = self.data
        rho = self.params.rho
        scale = d.argument_scale
        t = scale * x
        total = 0.0j
        worst_quality = 0.0
        for br, coeff, coeffs in self._branch_data():
            if coeff == 0:
                continue
            partial = 0.0j
            smallest = math.inf
            tail = 0.0
            for k, dk in enumerate(coeffs):
                p = br + k
                w_p = coeff * dk * (-1.0) ** k * cmath.exp(-p * math.log(t))
                term = w_p * ((d.a - p) * x + rho * (d.a + 1.0 - p))
                mag = abs(term)
                if mag > smallest:
                    tail = mag
                    break
                smallest = mag
                partial += term
                tail = mag
                if mag < 1e-17 * max(abs(partial), 1e-300):
                    break
            total += partial
            worst_quality = max(worst_quality,
                                tail / max(abs(partial), 1e-300))
        if worst_quality > 1e-8 or total == 0.0:
            raise DegenerateParameterError(
                "asymptotic bracket not reliable at this argument"
            )
        return total

    def _prefactor(self, x: float) -> complex:
        d = self.data
        rho = self.params.rho
        pre = cmath.exp(d.mu * math.log(x)) / (x + rho) ** 0.25
        if d.case is CaseKind.FULL_HYPERGEOMETRIC:
            w = self.params.omega
            pre *= (1.0 + w * x) ** (self.params.r - self.params.q + 0.25)
        elif d.case is CaseKind.CONFLUENT_FIRST:
            pre *= math.exp(self.params.beta * x / 2.0)
        return pre

    def __call__(self, x: float) -> complex:
        if x <= 0:
            raise InvalidParameterError(f"x must be positive, got {x}")
        rho = self.params.rho
        if self._zero_energy:
            return complex(rho * ground_state_psi(self.params, x))
        d = self.data
        scale = d.argument_scale
        if not self._asym_unavailable and scale * x > self._t_switch:
            try:
                return self._prefactor(x) * self._bracket_asym(x)
            except DegenerateParameterError:
                # marginal quality at this argument only; branch data that
                # failed to build at all stays off for good
                if self._asym is None:
                    self._asym_unavailable = True
        f, fz = self._profile(-scale * x)
        fx = -scale * fz
        bracket = x * (x + rho) * fx + (d.a * x + rho * (d.a + 1.0)) * f
        return self._prefactor(x) * bracket

    def profile(self, xs) -> np.ndarray:
        """psi on an array of positive x values."""
        xs = np.asarray(xs, dtype=float)
        if self._profile is not None and xs.size:
            # one continuation pass out to the farthest direct-form point
            scale = self.data.argument_scale
            reach = float(np.max(xs))
            if not self._asym_unavailable and math.isfinite(self._t_switch):
                reach = min(reach, 1.3 * self._t_switch / max(scale, 1e-300))
            if scale * reach > 0:
                self._profile(-scale * reach)
        return np.array([self(float(x)) for x in xs])

    def norm(self) -> float:
        """sqrt of int |psi|^2 dz over the whole line, by quadrature in x."""
        def integrand(x):
            return abs(self(x)) ** 2 * math.sqrt(weight_w(self.params, x))

        total = 0.0
        for a, b in ((0.0, 1.0), (1.0, math.inf)):
            val, _ = quad(integrand, a, b, limit=300)
            total += val
        return math.sqrt(total)


def psi(params, energy: float, x: float) -> complex:
    """Closed-form solution at one point; build a Psi for repeated use."""
    return Psi(params, energy)(x)


def psi_contiguous(params, energy: float, x: float) -> complex:
    """Derivative-free form of the full-case solution.

    Rewrites the bracket through contiguous functions:
    rho (a+1) F(a; a+1, e) + a x F(a+1; a+2, e), equal to the derivative
    form identically in x.
    """
    if params.case is not CaseKind.FULL_HYPERGEOMETRIC:
        raise InvalidParameterError("contiguous form applies to the full case")
    d = hyp_data(params, energy)
    a, b, c, e = d.a, d.b, d.c, d.e
    rho, w = params.rho, params.omega
    arg = -w * x
    f1, _ = ContinuedProfile(HypSpec((a, b, c), (a + 1.0, e), 0.0), arg)(arg)
    f2, _ = ContinuedProfile(HypSpec((a + 1.0, b, c), (a + 2.0, e), 0.0), arg)(arg)
    pre = cmath.exp(d.mu * math.log(x)) * (1.0 + w * x) ** (
        params.r - params.q + 0.25
    ) / (x + rho) ** 0.25
    return pre * (rho * (a + 1.0) * f1 + a * x * f2)


@dataclass(frozen=True)
class AsymptoticCoefficients:
    """Boundary data of the full-case solution.

    left_amp multiplies e^{ikz} as z -> -infinity.  right_in and right_out
    multiply the incoming and outgoing waves at z -> +infinity on the
    scattering branch; on the bound branch they multiply the decaying and
    growing powers, so right_out = 0 is the eigenvalue condition.
    """

    left_amp: complex
    right_in: complex
    right_out: complex

    def reflection_probability(self) -> float:
        return abs(self.right_in / self.right_out) ** 2


def asymptotic_coefficients(params: InvariantParams, energy: float) -> AsymptoticCoefficients:
    """Large-|z| coefficients of the solution from the connection formula.

    The x^{-a} branch of F is ejected exactly by the first-order bracket;
    the surviving pair is (a-b) B and (a-c) C with B, C the gamma-product
    coefficients of the x^{-b} and x^{-c} branches, carried over to the z
    variable with the omega power prefactor.
    """
    if params.case is not CaseKind.FULL_HYPERGEOMETRIC:
        raise InvalidParameterError("asymptotic coefficients apply to the full case")
    d = hyp_data(params, energy)
    a, b, c = d.a, d.b, d.c
    conn = connection_3f2(a, b, c, d.d, d.e)
    coeff_b = conn.terms[1].coefficient
    coeff_c = conn.terms[2].coefficient
    w_pow = params.omega ** (-params.sigma - 0.75)
    return AsymptoticCoefficients(
        left_amp=params.rho**0.75 * (a + 1.0),
        right_in=w_pow * (a - b) * coeff_b,
        right_out=w_pow * (a - c) * coeff_c,
    )
