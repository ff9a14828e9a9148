"""Parametrizations of the potential family and the energy-dependent
hypergeometric parameter map.

Units are hbar = 2m = 1 throughout.  The raw five-parameter form
(s, alpha, beta, omega, rho) describes the generating third-order operator;
the invariant form (q, r, rho, omega) absorbs the reference-level shift
lambda0 and is what spectra and scattering are expressed in.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import InvalidParameterError

__all__ = [
    "CaseKind",
    "RawParams",
    "DependentCoefficients",
    "InvariantParams",
    "ConfluentFirstParams",
    "ConfluentSecondParams",
    "HypData",
    "derive_dependent",
    "invariant_from_raw",
    "classify_case",
    "hyp_data",
    "branch_root",
]


class CaseKind(Enum):
    FULL_HYPERGEOMETRIC = "full"
    CONFLUENT_FIRST = "confluent-first"
    CONFLUENT_SECOND = "confluent-second"


def _check_finite(**kwargs):
    for name, v in kwargs.items():
        if not math.isfinite(v):
            raise InvalidParameterError(f"{name} must be finite, got {v!r}")


@dataclass(frozen=True)
class RawParams:
    """Parameters of the generating operator: y0 = x^s (x + rho)."""

    s: float
    alpha: float
    beta: float
    omega: float
    rho: float

    def __post_init__(self):
        _check_finite(s=self.s, alpha=self.alpha, beta=self.beta,
                      omega=self.omega, rho=self.rho)
        if self.rho <= 0:
            raise InvalidParameterError(f"rho must be positive, got {self.rho}")
        if self.omega < 0:
            raise InvalidParameterError(f"omega must be >= 0, got {self.omega}")

    @property
    def lambda0(self) -> float:
        """Reference level: the eigenvalue at which x^s solves the equation."""
        return -(3.0 * self.s**2 + (2.0 * self.alpha - 3.0) * self.s)

    @property
    def case(self) -> CaseKind:
        return classify_case(self.omega, self.beta)


@dataclass(frozen=True)
class DependentCoefficients:
    """First-derivative and zeroth-order operator coefficients delta,
    eps_coeff, zeta_coeff forced by requiring y0 to solve the full operator.

    eps_coeff and zeta_coeff are operator coefficients, not energies.
    """

    delta: float
    eps_coeff: float
    zeta_coeff: float


def derive_dependent(raw: RawParams) -> DependentCoefficients:
    s, alpha, beta, omega, rho = raw.s, raw.alpha, raw.beta, raw.omega, raw.rho
    delta = (3.0 * (1.0 - omega * rho) * s**2
             + (2.0 * alpha - 2.0 * beta * rho + 3.0 * omega * rho - 3.0) * s) / rho
    eps_coeff = -(s**3 + (alpha - 3.0) * s**2 + (2.0 - alpha) * s)
    zeta_coeff = -((3.0 - 2.0 * omega * rho) * s**3
                   + (2.0 * alpha - beta * rho) * s**2
                   + (2.0 * alpha - beta * rho + 2.0 * omega * rho - 3.0) * s) / rho
    return DependentCoefficients(delta, eps_coeff, zeta_coeff)


@dataclass(frozen=True)
class InvariantParams:
    """Full hypergeometric case in the invariant parametrization.

    lambda0 records the reference-level shift of the generating raw set and
    is zero for directly constructed invariant parameters.
    """

    q: float
    r: float
    rho: float
    omega: float
    lambda0: float = 0.0

    def __post_init__(self):
        _check_finite(q=self.q, r=self.r, rho=self.rho, omega=self.omega,
                      lambda0=self.lambda0)
        if self.rho <= 0:
            raise InvalidParameterError(f"rho must be positive, got {self.rho}")
        if self.omega <= 0:
            raise InvalidParameterError(
                f"omega must be positive in the full case, got {self.omega}"
            )

    @property
    def g(self) -> float:
        return 1.0 / (self.rho * self.omega)

    @property
    def sigma(self) -> float:
        return self.q - self.r - 1.0

    @property
    def case(self) -> CaseKind:
        return CaseKind.FULL_HYPERGEOMETRIC

    @property
    def u_left(self) -> float:
        """Potential level as z -> -infinity."""
        return self.q**2

    @property
    def u_right(self) -> float:
        """Potential level as z -> +infinity."""
        return self.rho * self.omega * self.r**2


@dataclass(frozen=True)
class ConfluentFirstParams:
    """omega = 0, beta != 0 degeneration; p = 1/(rho beta) replaces r."""

    q: float
    beta: float
    rho: float

    def __post_init__(self):
        _check_finite(q=self.q, beta=self.beta, rho=self.rho)
        if self.rho <= 0:
            raise InvalidParameterError(f"rho must be positive, got {self.rho}")
        if self.beta == 0:
            raise InvalidParameterError("beta must be nonzero (confluent first kind)")

    @classmethod
    def from_p(cls, q: float, p: float, rho: float = 1.0) -> "ConfluentFirstParams":
        if p == 0:
            raise InvalidParameterError("p must be nonzero (confluent first kind)")
        return cls(q=q, beta=1.0 / (rho * p), rho=rho)

    @property
    def p(self) -> float:
        return 1.0 / (self.rho * self.beta)

    @property
    def case(self) -> CaseKind:
        return CaseKind.CONFLUENT_FIRST

    @property
    def u_left(self) -> float:
        return self.q**2


@dataclass(frozen=True)
class ConfluentSecondParams:
    """omega = beta = 0 degeneration; only q and rho remain."""

    q: float
    rho: float

    def __post_init__(self):
        _check_finite(q=self.q, rho=self.rho)
        if self.rho <= 0:
            raise InvalidParameterError(f"rho must be positive, got {self.rho}")

    @property
    def case(self) -> CaseKind:
        return CaseKind.CONFLUENT_SECOND

    @property
    def u_left(self) -> float:
        return self.q**2

    @property
    def u_right(self) -> float:
        return 0.0


def classify_case(omega: float, beta: float) -> CaseKind:
    """Case selection: omega > 0 is the full family; omega = 0 splits on beta."""
    if omega < 0:
        raise InvalidParameterError(f"omega must be >= 0, got {omega}")
    if omega > 0:
        return CaseKind.FULL_HYPERGEOMETRIC
    if beta != 0:
        return CaseKind.CONFLUENT_FIRST
    return CaseKind.CONFLUENT_SECOND


def invariant_from_raw(raw: RawParams) -> InvariantParams:
    """Map (s, alpha, beta, omega, rho) to (q, r, rho, omega), omega > 0."""
    if raw.omega == 0:
        raise InvalidParameterError(
            "invariant parametrization requires omega > 0; use the confluent path"
        )
    q = (3.0 * raw.s + raw.alpha - 1.0) / 2.0
    r = (3.0 * raw.s + raw.beta / raw.omega - 2.0) / 2.0
    return InvariantParams(q=q, r=r, rho=raw.rho, omega=raw.omega,
                           lambda0=raw.lambda0)


def branch_root(radicand: float) -> complex:
    """sqrt(radicand) on the bound-state branch, continued as -i k above it.

    The scattering convention pairs x^{sqrt(q^2 - eps)} with e^{-i k z}, so
    positive k corresponds to the lower imaginary half plane.
    """
    if radicand >= 0.0:
        return complex(math.sqrt(radicand), 0.0)
    return complex(0.0, -math.sqrt(-radicand))


@dataclass(frozen=True)
class HypData:
    """Hypergeometric parameters of the solution at one energy.

    upper/lower give the parameter tuple of the case's function, whose
    argument is -argument_scale * x (argument_scale keeps beta's sign in the
    confluent first kind).  mu, mu_bar are the wavefunction power pair at the
    origin and, in the full case, nu, nu_bar the pair at infinity, physical
    member first.
    """

    case: CaseKind
    upper: tuple
    lower: tuple
    argument_scale: float
    a: complex
    b: complex
    c: complex
    d: complex | None
    e: complex | None
    mu: complex = 0.0
    mu_bar: complex = 0.0
    nu: complex | None = None
    nu_bar: complex | None = None


def hyp_data(params, energy: float) -> HypData:
    """Energy-dependent parameter tuple of the closed-form solution."""
    case = params.case
    q = params.q
    q_root = branch_root(q * q - energy)
    if case is CaseKind.FULL_HYPERGEOMETRIC:
        g = params.g
        r = params.r
        sigma = params.sigma
        r_root = branch_root(r * r - g * energy)
        a = -q + q_root
        b = q_root + r_root - sigma
        c = q_root - r_root - sigma
        d = a + 2.0
        e = 1.0 + 2.0 * q_root
        return HypData(
            case, (a, b, c), (d, e), params.omega, a, b, c, d, e,
            mu=q_root, mu_bar=-q_root, nu=-r_root, nu_bar=r_root,
        )
    if case is CaseKind.CONFLUENT_FIRST:
        p = params.p
        a = -q + q_root
        b = -q + q_root + p * energy + 1.0
        c = a + 2.0
        d = 1.0 + 2.0 * q_root
        return HypData(
            case, (a, b), (c, d), params.beta, a, b, c, d, None,
            mu=q_root, mu_bar=-q_root,
        )
    a = -q + q_root
    b = a + 2.0
    c = 1.0 + 2.0 * q_root
    return HypData(
        case, (a,), (b, c), energy / params.rho, a, b, c, None, None,
        mu=q_root, mu_bar=-q_root,
    )
