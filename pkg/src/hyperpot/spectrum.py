"""Phase-diagram classification, bound-state windows, and the eigenvalue
conditions of all three cases.

The full-case conditions equate f(eps) = sqrt(q^2 - eps) + sqrt(r^2 - g eps)
to a ladder of levels: q - r - N on the condition-I branch and r - q - n on
the condition-II branch.  f is strictly decreasing, so each admissible level
crosses it at most once; levels meeting f exactly at the continuum edge are
threshold candidates, flagged and kept out of the bound list.  The confluent
first kind replaces f by sqrt(q^2 - eps) against lines in eps, giving
closed-form quadratic roots that are filtered against the unsquared
condition.  The confluent second kind has at most the zero mode.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import InvalidParameterError
from .params import (
    CaseKind,
    ConfluentFirstParams,
    ConfluentSecondParams,
    InvariantParams,
)

__all__ = [
    "Branch",
    "RegionFlags",
    "BoundState",
    "SpectrumResult",
    "classify",
    "g_window",
    "solve_bound_states",
]

_THRESHOLD_TOL = 1e-9
_RESIDUAL_TOL = 1e-12


class Branch(Enum):
    RED = "red"
    GREEN = "green"
    BLUE = "blue"
    NONE = "none"


@dataclass(frozen=True)
class RegionFlags:
    """Which bound-state mechanisms operate at a parameter point."""

    has_zero_mode: bool
    branch: Branch
    middle_blue_rejection: bool = False


@dataclass(frozen=True)
class BoundState:
    branch: Branch
    index: int
    energy: float
    residual: float
    threshold_flag: bool = False


@dataclass(frozen=True)
class SpectrumResult:
    """states: the spectrum; thresholds: continuum-edge candidates excluded
    from it (the zero mode of the confluent second kind sits exactly at the
    edge yet is the case's entire spectrum, so it stays in states, flagged)."""

    states: tuple
    thresholds: tuple

    def energies(self) -> list:
        return [s.energy for s in self.states]


def classify(params) -> RegionFlags:
    """Region flags from the printed phase-diagram inequalities, applied
    strictly; points satisfying no rule get Branch.NONE."""
    case = params.case
    if case is CaseKind.FULL_HYPERGEOMETRIC:
        q, r = params.q, params.r
        zero = q > 0 and r < 0
        if q - r > 1:
            return RegionFlags(zero, Branch.GREEN)
        blue = (q * r > 0 and q - r < 0) or (q * r < 0 and q - r < -1)
        if blue:
            return RegionFlags(zero, Branch.BLUE, middle_blue_rejection=q * r < 0)
        return RegionFlags(zero, Branch.NONE)
    if case is CaseKind.CONFLUENT_FIRST:
        q, p = params.q, params.p
        zero = q > 0 and p < 0
        if p < 0 and p <= (q - 1.0) / (q * q):
            return RegionFlags(zero, Branch.GREEN)
        blue = p > 0 and (
            (p * q > 0 and p >= 1.0 / q) or (p * q < 0 and p >= (q + 1.0) / (q * q))
        )
        if blue:
            return RegionFlags(zero, Branch.BLUE, middle_blue_rejection=p * q < 0)
        return RegionFlags(zero, Branch.NONE)
    q = params.q
    return RegionFlags(0.0 < q < 0.25, Branch.NONE)


def g_window(q: float, r: float, n: int = 0):
    """Open g-interval in which the condition-I state of index n exists.

    The printed bounds (r^2 - sg^2)/q^2 < g < r^2/(q^2 - sg^2) with
    sg = q - r - 1 - n; a non-positive factor widens the corresponding side
    to 0 or infinity.
    """
    sg = q - r - 1.0 - n
    if sg <= 0:
        raise InvalidParameterError(
            f"index {n} is outside the condition-I ladder (sigma - n <= 0)"
        )
    lo_fac = r * r - sg * sg
    hi_fac = q * q - sg * sg
    lo = lo_fac / (q * q) if lo_fac > 0 else 0.0
    hi = r * r / hi_fac if hi_fac > 0 else math.inf
    return lo, hi


def _radical_sum(q, r, g):
    def f(eps):
        return math.sqrt(max(q * q - eps, 0.0)) + math.sqrt(max(r * r - g * eps, 0.0))
    return f


def _solve_level(f, level, eps_max, df=None):
    """Root of f(eps) = level on [0, eps_max]; f strictly decreasing.

    Bisection to 1e-14 absolute followed by two safeguarded Newton steps.
    """
    lo, hi = 0.0, eps_max
    flo, fhi = f(lo) - level, f(hi) - level
    if not (flo > 0.0 > fhi or flo == 0.0 or fhi == 0.0):
        raise InvalidParameterError("level does not bracket a root")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if hi - lo < 1e-14 * max(1.0, abs(mid)):
            break
        if f(mid) - level > 0.0:
            lo = mid
        else:
            hi = mid
    eps = 0.5 * (lo + hi)
    if df is not None:
        for _ in range(2):
            slope = df(eps)
            if not math.isfinite(slope) or slope == 0.0:
                break
            step = (f(eps) - level) / slope
            cand = eps - step
            if lo <= cand <= hi or 0.0 < cand < eps_max:
                eps = cand
    return eps


def _ladder_states(q, r, g, branch, n_start, level_of):
    """Walk the level ladder of one full-case branch."""
    eps_max = min(q * q, r * r / g)
    f = _radical_sum(q, r, g)
    f_edge = f(eps_max)
    f_zero = f(0.0)

    def df(eps):
        t1 = q * q - eps
        t2 = r * r - g * eps
        if t1 <= 0 or t2 <= 0:
            return math.inf
        return -0.5 / math.sqrt(t1) - 0.5 * g / math.sqrt(t2)

    states, thresholds = [], []
    n = n_start
    scale = max(1.0, f_zero)
    while True:
        level = level_of(n)
        if level < f_edge - _THRESHOLD_TOL * scale:
            break
        if level >= f_zero - _THRESHOLD_TOL * scale:
            n += 1
            continue
        if abs(level - f_edge) <= _THRESHOLD_TOL * scale:
            thresholds.append(
                BoundState(branch, n, eps_max, abs(f(eps_max) - level), True)
            )
            n += 1
            continue
        eps = _solve_level(f, level, eps_max, df)
        states.append(BoundState(branch, n, eps, abs(f(eps) - level)))
        n += 1
    return states, thresholds


def _solve_full(params: InvariantParams) -> SpectrumResult:
    q, r, g = params.q, params.r, params.g
    flags = classify(params)
    states, thresholds = [], []
    if flags.has_zero_mode:
        states.append(BoundState(Branch.RED, 0, 0.0, 0.0))
    equal_asymptotes = abs(q * q - r * r / g) <= 1e-12 * max(1.0, q * q)
    if flags.branch is Branch.GREEN:
        if equal_asymptotes:
            s, t = _equal_asymptote_states(q, r, g, Branch.GREEN, 1)
        else:
            s, t = _ladder_states(q, r, g, Branch.GREEN, 1, lambda n: q - r - n)
        states += s
        thresholds += t
    elif flags.branch is Branch.BLUE:
        n0 = 1 if flags.middle_blue_rejection else 0
        if equal_asymptotes:
            # condition II is condition I of the mirrored point
            s, t = _equal_asymptote_states(-q, -r, g, Branch.BLUE, n0)
        else:
            s, t = _ladder_states(q, r, g, Branch.BLUE, n0, lambda n: r - q - n)
        states += s
        thresholds += t
    states.sort(key=lambda st: st.energy)
    return SpectrumResult(tuple(states), tuple(thresholds))


def _equal_asymptote_states(q, r, g, branch, n_start):
    """Closed-form ladder for q^2 = r^2/g: eps = q^2 - (q-r-n)^2/(1+sqrt g)^2,
    cross-checked against the radical condition.  Callers pass the mirrored
    (-q, -r) point for the condition-II branch."""
    sq_g = math.sqrt(g)
    f = _radical_sum(q, r, g)  # radicals depend on q^2, r^2 only
    states, thresholds = [], []
    scale = max(1.0, abs(q))
    n = n_start
    while True:
        level = q - r - n
        if level < -_THRESHOLD_TOL * scale:
            break
        if level <= _THRESHOLD_TOL * scale:
            thresholds.append(BoundState(branch, n, q * q, 0.0, True))
            n += 1
            continue
        eps = q * q - (level / (1.0 + sq_g)) ** 2
        resid = abs(f(eps) - level)
        states.append(BoundState(branch, n, eps, resid))
        n += 1
    return states, thresholds


def _solve_confluent_first(params: ConfluentFirstParams) -> SpectrumResult:
    q, p = params.q, params.p
    flags = classify(params)
    states, thresholds = [], []
    if flags.has_zero_mode:
        states.append(BoundState(Branch.RED, 0, 0.0, 0.0))

    scale = max(1.0, q * q)
    if flags.branch is Branch.GREEN:
        n = 1
        while True:
            disc = (p * q - 0.5) ** 2 + p * n
            if disc < 0:
                break
            eps = ((p * q - 0.5) - p * n + math.sqrt(disc)) / (p * p)
            rhs = -p * eps + q - n
            if rhs < -_THRESHOLD_TOL or eps <= _THRESHOLD_TOL * scale:
                break
            resid = abs(math.sqrt(max(q * q - eps, 0.0)) - rhs)
            if abs(eps - q * q) <= _THRESHOLD_TOL * scale:
                thresholds.append(BoundState(Branch.GREEN, n, q * q, resid, True))
                n += 1
                continue
            if eps > q * q or resid > 1e-8 * scale:
                break
            states.append(BoundState(Branch.GREEN, n, eps, resid))
            n += 1
    elif flags.branch is Branch.BLUE:
        n = 1 if flags.middle_blue_rejection else 0
        while True:
            disc = (p * q - 0.5) ** 2 - p * n
            if disc < 0:
                break
            eps = ((p * q - 0.5) + p * n + math.sqrt(disc)) / (p * p)
            rhs = p * eps - q - n
            if rhs < -_THRESHOLD_TOL or eps <= _THRESHOLD_TOL * scale:
                break
            resid = abs(math.sqrt(max(q * q - eps, 0.0)) - rhs)
            if abs(eps - q * q) <= _THRESHOLD_TOL * scale:
                thresholds.append(BoundState(Branch.BLUE, n, q * q, resid, True))
                n += 1
                continue
            if eps > q * q or resid > 1e-8 * scale:
                break
            states.append(BoundState(Branch.BLUE, n, eps, resid))
            n += 1
    states.sort(key=lambda st: st.energy)
    return SpectrumResult(tuple(states), tuple(thresholds))


def _solve_confluent_second(params: ConfluentSecondParams) -> SpectrumResult:
    if 0.0 < params.q < 0.25:
        # the zero mode sits exactly at the continuum edge (U -> 0 on the
        # right); it is the whole spectrum of this case, flagged as such
        return SpectrumResult(
            (BoundState(Branch.RED, 0, 0.0, 0.0, threshold_flag=True),), ()
        )
    return SpectrumResult((), ())


def solve_bound_states(params) -> SpectrumResult:
    """All bound states of the parameter point, thresholds flagged."""
    case = params.case
    if case is CaseKind.FULL_HYPERGEOMETRIC:
        return _solve_full(params)
    if case is CaseKind.CONFLUENT_FIRST:
        return _solve_confluent_first(params)
    return _solve_confluent_second(params)
