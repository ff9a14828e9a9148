"""Brute-force verification machinery: Numerov integration of the
transformed eigenvalue problem on the z grid, eigenvalue shooting with node
counting, plane-wave reflection extraction, and pointwise residuals of the
x-form equation.

Nothing here touches the closed-form spectra or amplitudes; agreement
between the two routes is the package's central correctness argument.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import BoxTooSmallError, InvalidParameterError, NonConvergenceError
from .params import CaseKind
from .potential import build_mapping, coefficients, evaluate_U, weight_dw, weight_w

__all__ = [
    "ZGrid",
    "SampledPotential",
    "ShootingResult",
    "numerov_integrate",
    "shoot_eigenvalues",
    "numeric_reflection",
    "numeric_reflection_amplitude",
    "residual_norm",
]

_RENORM_LIMIT = 1e250
_RENORM_EVERY = 64


@dataclass(frozen=True)
class ZGrid:
    z_min: float
    z_max: float
    step: float

    def __post_init__(self):
        if self.step <= 0 or self.z_max <= self.z_min:
            raise InvalidParameterError("grid needs z_max > z_min and step > 0")
        n_float = (self.z_max - self.z_min) / self.step
        if abs(n_float - round(n_float)) > 1e-8 * max(1.0, n_float):
            raise InvalidParameterError("(z_max - z_min)/step must be an integer")
        if round(n_float) + 1 < 1000:
            raise InvalidParameterError("grid must have at least 1000 points")

    @property
    def n(self) -> int:
        return int(round((self.z_max - self.z_min) / self.step)) + 1

    def points(self) -> np.ndarray:
        return self.z_min + self.step * np.arange(self.n)


class SampledPotential:
    """Potential samples U(z) on a uniform grid, built once and reused."""

    def __init__(self, params, grid: ZGrid):
        self.params = params
        self.grid = grid
        mapping = build_mapping(params, grid.points())
        self.z = mapping.z
        self.x = mapping.x
        self.U = evaluate_U(coefficients(params), self.x)
        self.u_left = params.u_left
        self.u_right = getattr(params, "u_right", None)

    def tail_check(self, energy: float, tol: float = 1e-8):
        """Require potential tails below tol of the local kinetic term."""
        k2_left = energy - self.u_left
        if k2_left > 0 and abs(self.U[0] - self.u_left) > tol * k2_left:
            raise BoxTooSmallError(
                f"left tail {abs(self.U[0] - self.u_left):.3e} exceeds "
                f"{tol:g} * kinetic {k2_left:.3e}; extend z_min"
            )
        if self.u_right is not None:
            k2_right = energy - self.u_right
            if k2_right > 0 and abs(self.U[-1] - self.u_right) > tol * k2_right:
                raise BoxTooSmallError(
                    f"right tail {abs(self.U[-1] - self.u_right):.3e} exceeds "
                    f"{tol:g} * kinetic {k2_right:.3e}; extend z_max"
                )


@dataclass(frozen=True)
class ShootingResult:
    energy: float
    node_count: int
    log_derivative_mismatch: float


def _numerov_batch(U, eps, h, psi0, psi1, reverse=False, capture=None,
                   count_nodes=False):
    """March the Numerov recurrence for a batch of energies.

    U is the (n,) potential in integration order (reverse=True flips it),
    eps an (m,) energy vector, psi0/psi1 the seeds at the first two points
    of integration order (scalars or (m,) arrays).  Returns the last two
    values, per-row log scale factors, node counts, and, if capture is a
    (lo, hi) index pair in integration order, the stored slice.
    """
    U = U[::-1] if reverse else U
    n = U.shape[0]
    eps = np.atleast_1d(np.asarray(eps))
    m = eps.shape[0]
    dtype = complex if (np.iscomplexobj(psi0) or np.iscomplexobj(psi1)) else float
    h2_12 = h * h / 12.0

    pa = np.full(m, psi0) if np.isscalar(psi0) else np.asarray(psi0, dtype=dtype).copy()
    pb = np.full(m, psi1) if np.isscalar(psi1) else np.asarray(psi1, dtype=dtype).copy()
    pa = pa.astype(dtype)
    pb = pb.astype(dtype)
    log_scale = np.zeros(m)
    nodes = np.zeros(m, dtype=np.int64) if count_nodes else None

    ga = 1.0 - h2_12 * (U[0] - eps)
    gb = 1.0 - h2_12 * (U[1] - eps)
    cap = None
    if capture is not None:
        lo, hi = capture
        cap = np.empty((m, hi - lo + 1), dtype=dtype)
        if lo == 0:
            cap[:, 0] = pa
        if lo <= 1 <= hi:
            cap[:, 1 - lo] = pb

    sign_b = np.sign(pb.real) if count_nodes else None
    for i in range(1, n - 1):
        gc = 1.0 - h2_12 * (U[i + 1] - eps)
        pc = ((12.0 - 10.0 * gb) * pb - ga * pa) / gc
        if count_nodes:
            sign_c = np.sign(pc.real)
            nodes += (sign_c * sign_b < 0)
            sign_b = np.where(sign_c != 0, sign_c, sign_b)
        pa, pb = pb, pc
        ga, gb = gb, gc
        if cap is not None and lo <= i + 1 <= hi:
            cap[:, i + 1 - lo] = pc
        if i % _RENORM_EVERY == 0:
            mx = np.abs(pb)
            big = mx > _RENORM_LIMIT
            if big.any():
                factor = np.where(big, 1.0 / mx, 1.0)
                pa = pa * factor
                pb = pb * factor
                log_scale += np.where(big, np.log(mx), 0.0)
                if cap is not None:
                    # captured values keep their own normalization; callers
                    # use ratios within the window only
                    pass
    return pa, pb, log_scale, nodes, cap


def numerov_integrate(U: np.ndarray, energy: float, h: float,
                      direction: str = "left", seed=(1e-160, 1.1e-160)) -> np.ndarray:
    """Fourth-order-accurate solution samples over the whole grid.

    direction "left" integrates from the first grid point upward, "right"
    from the last point downward (the returned array is always in grid
    order).  seed gives the first two values in integration order.
    """
    if direction not in ("left", "right"):
        raise InvalidParameterError("direction must be 'left' or 'right'")
    n = U.shape[0]
    reverse = direction == "right"
    *_, cap = _numerov_batch(U, np.array([energy]), h, seed[0], seed[1],
                             reverse=reverse, capture=(0, n - 1))
    out = cap[0]
    return out[::-1] if reverse else out


def _node_counts(pot: SampledPotential, eps) -> np.ndarray:
    """Nodes of the left-seeded sweep; jumps by one at each eigenvalue."""
    eps = np.atleast_1d(np.asarray(eps, dtype=float))
    h = pot.grid.step
    kappa = np.sqrt(np.maximum(pot.u_left - eps, 1e-12))
    seed0 = np.full(eps.shape, 1e-160)
    seed1 = seed0 * np.exp(kappa * h)
    *_, nodes, _ = _numerov_batch(pot.U, eps, h, seed0, seed1, count_nodes=True)
    return nodes


def _matching_mismatch(pot: SampledPotential, eps) -> np.ndarray:
    """Scaled log-derivative mismatch near the potential minimum.

    Both-side shooting; the mismatch is the Wronskian of the two sides
    scaled by the magnitudes of its terms.  Within a captured window the
    evaluation point is moved off any node of the eigenfunction, where the
    scaled Wronskian would amplify integration noise.
    """
    eps = np.atleast_1d(np.asarray(eps, dtype=float))
    h = pot.grid.step
    n = pot.U.shape[0]
    half = min(max(int(round(0.8 / h)), 8), (n - 10) // 2)
    m_idx = int(np.argmin(pot.U))
    m_idx = min(max(m_idx, half + 3), n - half - 4)
    lo, hi = m_idx - half, m_idx + half

    kappa_l = np.sqrt(np.maximum(pot.u_left - eps, 1e-12))
    sl0 = np.full(eps.shape, 1e-160)
    *_, capL = _numerov_batch(pot.U[: hi + 3], eps, h, sl0,
                              sl0 * np.exp(kappa_l * h), capture=(lo - 2, hi + 2))
    u_end = pot.U[-1]
    kappa_r = np.sqrt(np.maximum(u_end - eps, 1e-12))
    sr0 = np.full(eps.shape, 1e-160)
    nseg = n - (lo - 2)
    *_, capR = _numerov_batch(pot.U[lo - 2:], eps, h, sr0,
                              sr0 * np.exp(kappa_r * h), reverse=True,
                              capture=(nseg - (hi - lo) - 5, nseg - 1))
    capR = capR[:, ::-1]  # back to grid order, columns lo-2 .. hi+2

    capLn = capL / np.max(np.abs(capL), axis=1, keepdims=True)
    capRn = capR / np.max(np.abs(capR), axis=1, keepdims=True)

    def deriv(w):
        return (w[:, :-4] - 8.0 * w[:, 1:-3] + 8.0 * w[:, 3:-1] - w[:, 4:]) / (12.0 * h)

    dL = deriv(capLn)
    dR = deriv(capRn)
    vL = capLn[:, 2:-2]
    vR = capRn[:, 2:-2]
    # local inverse length keeps the scale meaningful at turning points,
    # where both Wronskian terms vanish with the derivative
    kchar = np.maximum(np.sqrt(np.abs(eps - pot.U[m_idx])), 0.1)[:, None]
    t1 = dL * vR
    t2 = dR * vL
    scale = np.abs(t1) + np.abs(t2) + kchar * np.abs(vL * vR)
    j_best = np.argmax(scale, axis=1)
    rows = np.arange(eps.shape[0])
    return np.abs(t1 - t2)[rows, j_best] / scale[rows, j_best]


def _coarsened(pot: SampledPotential, factor: int) -> SampledPotential:
    """Same potential on a stride-subsampled grid (cheap early bisection)."""
    if factor == 1:
        return pot
    if (pot.U.shape[0] - 1) % factor or (pot.U.shape[0] - 1) // factor + 1 < 1000:
        return pot
    sub = object.__new__(SampledPotential)
    sub.params = pot.params
    sub.grid = ZGrid(pot.grid.z_min, pot.grid.z_max, pot.grid.step * factor)
    sub.z = pot.z[::factor]
    sub.x = pot.x[::factor] if pot.x is not None else None
    sub.U = pot.U[::factor]
    sub.u_left = pot.u_left
    sub.u_right = pot.u_right
    return sub


def recommended_grid(params, energies, step: float = 1e-3,
                     decay_log: float = 20.0) -> ZGrid:
    """Grid whose box truncation shifts the given bound energies by less
    than ~e^-decay_log, judged from their asymptotic decay rates.

    Continuum energies in the list are ignored; they do not decay.
    """
    u_left = params.u_left
    bound = [e for e in energies if e < u_left]
    kap_l = min(math.sqrt(max(u_left - e, 1e-4)) for e in bound) if bound else 1.0
    z_min = -max(25.0, decay_log / (2.0 * kap_l) + 5.0)
    if params.case is CaseKind.CONFLUENT_FIRST:
        # right side rises without bound; reach U > max energy + 50
        top = (max(energies) if energies else u_left) + 50.0
        ztest = 10.0
        pot_c = coefficients(params)
        while True:
            from .potential import x_of_z
            if evaluate_U(pot_c, x_of_z(params, ztest)) > top or ztest > 400:
                break
            ztest += 5.0
        z_max = ztest + 5.0
    else:
        u_right = params.u_right
        bound_r = [e for e in energies if e < u_right]
        kap_r = min(math.sqrt(max(u_right - e, 1e-4)) for e in bound_r) if bound_r else 1.0
        z_max = max(25.0, decay_log / (2.0 * kap_r) + 5.0)
    z_min = math.floor(z_min)
    z_max = math.ceil(z_max)
    # keep the point count divisible by the coarsening strides
    n_steps = int(round((z_max - z_min) / step))
    n_steps += (-n_steps) % 16
    return ZGrid(z_min, z_min + n_steps * step, step)


def scattering_grid(params, energy: float, step: float = 1e-3,
                    tail_tol: float = 1e-8) -> ZGrid:
    """Box sized by walking the actual potential tails at this energy."""
    from .potential import x_of_z

    pot_c = coefficients(params)
    u_left = params.u_left
    case = params.case

    z_min = -12.0
    k2_left = max(energy - u_left, 1e-3)
    while abs(evaluate_U(pot_c, x_of_z(params, z_min)) - u_left) > tail_tol * k2_left:
        z_min -= 4.0
        if z_min < -400.0:
            raise BoxTooSmallError("left tail does not settle; check parameters")

    if case is CaseKind.CONFLUENT_FIRST:
        z_max = 10.0
        while evaluate_U(pot_c, x_of_z(params, z_max)) < energy + 55.0:
            z_max += 4.0
            if z_max > 500.0:
                raise BoxTooSmallError("right wall not reached; check parameters")
    else:
        u_right = params.u_right
        k2_right = max(energy - u_right, 1e-3)
        z_max = 12.0
        while abs(evaluate_U(pot_c, x_of_z(params, z_max)) - u_right) > tail_tol * k2_right:
            z_max = z_max * 1.3 + 4.0
            if z_max > 50000.0:
                raise BoxTooSmallError("right tail does not settle; check parameters")
    z_min = math.floor(z_min)
    z_max = math.ceil(z_max)
    n_steps = int(round((z_max - z_min) / step))
    n_steps += (-n_steps) % 16
    return ZGrid(z_min, z_min + n_steps * step, step)


def shoot_eigenvalues(params, window, grid: ZGrid, n_scan: int = 160) -> list:
    """All eigenvalues in the window by node-count bisection on the
    left-seeded sweep, ordered, with node counts and matching diagnostics.

    The window must lie below the continuum threshold.  Early bisection runs
    on stride-16 and stride-4 subgrids (eigenvalue shifts there are
    fourth-order small); the final refinement uses the full grid.
    """
    pot = params if isinstance(params, SampledPotential) else SampledPotential(params, grid)
    lo, hi = float(window[0]), float(window[1])
    threshold = pot.u_left if pot.u_right is None else min(pot.u_left, pot.u_right)
    if pot.params.case is CaseKind.CONFLUENT_FIRST:
        threshold = pot.u_left
    if hi >= threshold:
        raise InvalidParameterError(
            f"window top {hi:g} reaches the continuum threshold {threshold:g}"
        )
    scale = max(1.0, abs(hi))
    stages = [(_coarsened(pot, 16), 1e-4 * scale),
              (_coarsened(pot, 4), 1e-7 * scale),
              (pot, 1e-11 * scale)]

    scan = np.linspace(lo, hi, n_scan)
    counts = _node_counts(stages[0][0], scan)
    brackets = []
    for i in range(n_scan - 1):
        jump = int(counts[i + 1] - counts[i])
        for j in range(jump):
            brackets.append([scan[i], scan[i + 1], int(counts[i]) + j])
    if not brackets:
        return []
    lo_v = np.array([b[0] for b in brackets])
    hi_v = np.array([b[1] for b in brackets])
    k_v = np.array([b[2] for b in brackets])

    def bisect(p, lo_v, hi_v, tol):
        while np.max(hi_v - lo_v) > tol:
            mid = 0.5 * (lo_v + hi_v)
            below = _node_counts(p, mid) <= k_v
            lo_v = np.where(below, mid, lo_v)
            hi_v = np.where(below, hi_v, mid)
        return lo_v, hi_v

    prev = stages[0][0]
    for stage_pot, tol in stages:
        if stage_pot is not prev:
            # re-open brackets past the inter-grid eigenvalue shift and
            # re-validate; expand if the root slipped outside
            margin = 1e3 * (prev.grid.step ** 4) * scale + 1e-10 * scale
            for _ in range(4):
                cand_lo = np.maximum(lo_v - margin, lo)
                cand_hi = np.minimum(hi_v + margin, hi)
                ok = (_node_counts(stage_pot, cand_lo) <= k_v) & (
                    _node_counts(stage_pot, cand_hi) > k_v)
                if ok.all():
                    lo_v, hi_v = cand_lo, cand_hi
                    break
                margin *= 8.0
            else:
                raise NonConvergenceError("eigenvalue bracket lost between grids")
        lo_v, hi_v = bisect(stage_pot, lo_v, hi_v, tol)
        prev = stage_pot

    energies = 0.5 * (lo_v + hi_v)
    mism = _matching_mismatch(pot, energies)
    results = []
    for e, k, d in zip(energies, k_v, mism):
        results.append(ShootingResult(float(e), int(k), float(abs(d))))
    _warn_if_coarse(pot, energies)
    return results


def _warn_if_coarse(pot: SampledPotential, energies):
    if len(energies) == 0:
        return
    e_top = float(np.max(energies))
    psi = numerov_integrate(pot.U, e_top, pot.grid.step)
    s = np.sign(psi.real)
    idx = np.nonzero(s[1:] * s[:-1] < 0)[0]
    if idx.size >= 2 and int(np.min(np.diff(idx))) < 10:
        warnings.warn(
            "adjacent wavefunction nodes closer than 10 grid steps; "
            "the grid may be too coarse",
            stacklevel=2,
        )


def _fit_plane_waves(z_window, psi_window, k):
    """Least-squares (A, B) with psi = A e^{ikz} + B e^{-ikz} on the window."""
    M = np.column_stack([np.exp(1j * k * z_window), np.exp(-1j * k * z_window)])
    sol, *_ = np.linalg.lstsq(M, psi_window, rcond=None)
    return sol[0], sol[1]


def numeric_reflection_amplitude(params, energy: float, grid: ZGrid,
                                 tail_tol: float = 1e-8) -> complex:
    """Left-incidence reflection amplitude extracted from the integrated
    solution: outgoing-only on the right, plane-wave fit on the left."""
    pot = params if isinstance(params, SampledPotential) else SampledPotential(params, grid)
    k2 = energy - pot.u_left
    if k2 <= 0:
        raise InvalidParameterError("left channel closed; no reflection to extract")
    k = math.sqrt(k2)
    h = pot.grid.step
    z = pot.z
    n = z.shape[0]
    case = pot.params.case

    if case is CaseKind.CONFLUENT_FIRST:
        # oscillator-like right side: seed exponential decay inward
        if pot.U[-1] < energy + 50.0:
            raise BoxTooSmallError(
                f"right edge U = {pot.U[-1]:.3f} must exceed energy + 50"
            )
        kap = math.sqrt(pot.U[-1] - energy)
        seed0, seed1 = 1e-160, 1e-160 * math.exp(kap * h)
        *_, cap = _numerov_batch(pot.U, np.array([energy]), h, seed0, seed1,
                                 reverse=True, capture=(n - 1 - _left_window(n, k, h), n - 1))
        psi_win = cap[0][::-1]
    else:
        pot.tail_check(energy, tail_tol)
        u_right = pot.u_right
        kp2 = energy - u_right
        if kp2 <= 0:
            raise InvalidParameterError("right channel closed; use a bound-state check")
        kp = math.sqrt(kp2)
        seed0 = np.exp(1j * kp * z[-1])
        seed1 = np.exp(1j * kp * z[-2])
        *_, cap = _numerov_batch(pot.U, np.array([energy]), h, seed0, seed1,
                                 reverse=True, capture=(n - 1 - _left_window(n, k, h), n - 1))
        psi_win = cap[0][::-1]

    w = psi_win.shape[0]
    A, B = _fit_plane_waves(z[:w], psi_win, k)
    return complex(B / A)


def _left_window(n, k, h):
    """Window size covering about one wavelength, capped by the grid."""
    span = int(max(64, min(round(2.0 * math.pi / (k * h)), n // 4)))
    return span


def numeric_reflection(params, energy: float, grid: ZGrid,
                       tail_tol: float = 1e-8) -> float:
    """Reflection probability |r|^2 from the numeric amplitude."""
    r = numeric_reflection_amplitude(params, energy, grid, tail_tol)
    return abs(r) ** 2


def residual_norm(params, energy: float, psi, x_grid) -> float:
    """Max scaled residual of the x-form eigenvalue equation over the grid.

    psi''(x)/w - w' psi'/(2 w^2) + (energy - U) psi, derivatives by centered
    differences with one Richardson step, scaled by 1 + |energy * psi|.
    """
    coeffs = coefficients(params)
    worst = 0.0
    for x in np.asarray(x_grid, dtype=float):
        hstep = 3e-3 * x
        d1, d2 = _richardson_derivatives(psi, x, hstep)
        w = weight_w(params, x)
        dw = weight_dw(params, x)
        u = evaluate_U(coeffs, x)
        resid = d2 / w - dw * d1 / (2.0 * w * w) + (energy - u) * psi(x)
        scale = 1.0 + abs(energy * psi(x))
        worst = max(worst, abs(resid) / scale)
    return worst


def _richardson_derivatives(f, x, h):
    """(f', f'') at x to O(h^4) from two centered stencils."""
    fp, fm = f(x + h), f(x - h)
    fp2, fm2 = f(x + 0.5 * h), f(x - 0.5 * h)
    f0 = f(x)
    d1_h = (fp - fm) / (2.0 * h)
    d1_h2 = (fp2 - fm2) / h
    d2_h = (fp - 2.0 * f0 + fm) / (h * h)
    d2_h2 = (fp2 - 2.0 * f0 + fm2) / (0.25 * h * h)
    return (4.0 * d1_h2 - d1_h) / 3.0, (4.0 * d2_h2 - d2_h) / 3.0
