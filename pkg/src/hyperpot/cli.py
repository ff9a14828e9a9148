"""Command-line interface: build potentials, emit curves, solve spectra,
compute scattering tables, run the brute-force verification suite, and
rasterize phase diagrams.

Exit codes: 0 success, 1 invalid parameters (the message names the violated
invariant), 2 numeric non-convergence or a failed verification check.
Numbers in delimited output carry 17 significant digits so goldens
round-trip exactly.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import oracle, report, scattering, spectrum, wavefunction
from .errors import (
    ChannelClosedError,
    HyperpotError,
    InvalidParameterError,
    NonConvergenceError,
)
from .params import (
    CaseKind,
    ConfluentFirstParams,
    ConfluentSecondParams,
    InvariantParams,
    RawParams,
    classify_case,
    invariant_from_raw,
)
from .potential import build_mapping, coefficients, evaluate_U

SCHEMA_VERSION = 1


class CliUsageError(InvalidParameterError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliUsageError(message)


def _fmt(value) -> str:
    return f"{value:.17g}"


def _build_parser() -> _Parser:
    parser = _Parser(prog="hyperpot", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_params(p):
        p.add_argument("--case", choices=[c.value for c in CaseKind])
        p.add_argument("--q", type=float)
        p.add_argument("--r", type=float)
        p.add_argument("--p", type=float)
        p.add_argument("--rho", type=float)
        p.add_argument("--omega", type=float)
        p.add_argument("--beta", type=float)
        p.add_argument("--s", type=float)
        p.add_argument("--alpha", type=float)
        p.add_argument("--config", type=str, help="key=value file; flags override")
        p.add_argument("--output", type=str, default="-")

    p = sub.add_parser("potential", help="emit (z, x, U) samples")
    add_params(p)
    p.add_argument("--z-min", type=float, default=-10.0)
    p.add_argument("--z-max", type=float, default=10.0)
    p.add_argument("--count", type=int, default=801)
    p.add_argument("--plot", action="store_true")

    p = sub.add_parser("wavefunction", help="emit (z, x, re_psi, im_psi) samples")
    add_params(p)
    p.add_argument("--energy", type=float, required=True)
    p.add_argument("--z-min", type=float, default=-10.0)
    p.add_argument("--z-max", type=float, default=10.0)
    p.add_argument("--count", type=int, default=801)
    p.add_argument("--plot", action="store_true")

    p = sub.add_parser("scatter", help="emit reflection table over an energy range")
    add_params(p)
    p.add_argument("--energies", type=float, nargs=3, required=True,
                   metavar=("LO", "HI", "COUNT"))
    p.add_argument("--plot", action="store_true")

    p = sub.add_parser("spectrum", help="emit the bound-state report (JSON)")
    add_params(p)
    p.add_argument("--oracle", action="store_true",
                   help="append a shooting-method comparison block")
    p.add_argument("--grid-step", type=float, default=1e-3)

    p = sub.add_parser("verify", help="run the brute-force checks")
    add_params(p)
    p.add_argument("--grid-step", type=float, default=1e-3)

    p = sub.add_parser("phase-diagram", help="rasterize region/count data")
    add_params(p)
    p.add_argument("--q-range", type=float, nargs=3, default=[-3.0, 3.0, 0.05],
                   metavar=("LO", "HI", "STRIDE"))
    p.add_argument("--second-range", type=float, nargs=3, default=[-3.0, 3.0, 0.05],
                   metavar=("LO", "HI", "STRIDE"),
                   help="r range (full case) or p range (confluent first)")
    p.add_argument("--plot", action="store_true")
    return parser


def _apply_config(args):
    if not getattr(args, "config", None):
        return args
    overrides = {}
    with open(args.config) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise CliUsageError(f"config line is not key=value: {line!r}")
            key, _, val = line.partition("=")
            overrides[key.strip().replace("-", "_")] = val.strip()
    for key, val in overrides.items():
        if not hasattr(args, key):
            raise CliUsageError(f"unknown config key {key!r}")
        if getattr(args, key) is None:
            cast = str if key in ("case", "output", "config") else float
            setattr(args, key, cast(val))
    return args


def _params_from_args(args):
    raw_style = args.s is not None or args.alpha is not None
    inv_style = args.q is not None
    if raw_style and inv_style:
        raise CliUsageError("give either the raw (s, alpha, ...) or the "
                            "invariant (q, ...) parametrization, not both")
    if raw_style:
        for name in ("s", "alpha", "beta", "omega", "rho"):
            if getattr(args, name) is None:
                raise CliUsageError(f"raw parametrization needs --{name}")
        raw = RawParams(s=args.s, alpha=args.alpha, beta=args.beta,
                        omega=args.omega, rho=args.rho)
        case = classify_case(raw.omega, raw.beta)
        if case is CaseKind.FULL_HYPERGEOMETRIC:
            return invariant_from_raw(raw)
        q = (3.0 * raw.s + raw.alpha - 1.0) / 2.0
        if case is CaseKind.CONFLUENT_FIRST:
            return ConfluentFirstParams(q=q, beta=raw.beta, rho=raw.rho)
        return ConfluentSecondParams(q=q, rho=raw.rho)
    if not inv_style:
        raise CliUsageError("no parameters given (need --q ... or --s ...)")
    case = CaseKind(args.case) if args.case else None
    rho = args.rho if args.rho is not None else 1.0
    if case is None:
        if args.omega is not None and args.omega > 0:
            case = CaseKind.FULL_HYPERGEOMETRIC
        elif args.p is not None or (args.beta is not None and args.beta != 0):
            case = CaseKind.CONFLUENT_FIRST
        else:
            case = CaseKind.CONFLUENT_SECOND
    if case is CaseKind.FULL_HYPERGEOMETRIC:
        if args.r is None or args.omega is None:
            raise CliUsageError("full case needs --q, --r, --rho, --omega")
        return InvariantParams(q=args.q, r=args.r, rho=rho, omega=args.omega)
    if case is CaseKind.CONFLUENT_FIRST:
        if args.beta is not None:
            return ConfluentFirstParams(q=args.q, beta=args.beta, rho=rho)
        if args.p is not None:
            return ConfluentFirstParams.from_p(q=args.q, p=args.p, rho=rho)
        raise CliUsageError("confluent-first needs --beta or --p")
    return ConfluentSecondParams(q=args.q, rho=rho)


class _Output:
    def __init__(self, path):
        self.path = path

    def __enter__(self):
        self.fh = sys.stdout if self.path == "-" else open(self.path, "w")
        return self.fh

    def __exit__(self, *exc):
        if self.path != "-":
            self.fh.close()


def _plot_target(args, suffix):
    if args.output == "-":
        raise CliUsageError("--plot needs --output pointing at a file")
    stem = args.output.rsplit(".", 1)[0]
    return f"{stem}{suffix}.png"


def _cmd_potential(args) -> int:
    params = _params_from_args(args)
    if args.count < 2:
        raise CliUsageError("--count must be at least 2")
    z = np.linspace(args.z_min, args.z_max, args.count)
    mapping = build_mapping(params, z)
    U = evaluate_U(coefficients(params), mapping.x)
    with _Output(args.output) as fh:
        fh.write("z,x,U\n")
        for zi, xi, ui in zip(mapping.z, mapping.x, U):
            fh.write(f"{_fmt(zi)},{_fmt(xi)},{_fmt(ui)}\n")
    if args.plot:
        energies = [s.energy for s in spectrum.solve_bound_states(params).states]
        report.save_potential_figure(mapping.z, U, _plot_target(args, ""), energies)
    return 0


def _cmd_wavefunction(args) -> int:
    params = _params_from_args(args)
    z = np.linspace(args.z_min, args.z_max, args.count)
    mapping = build_mapping(params, z)
    psi = wavefunction.Psi(params, args.energy).profile(mapping.x)
    with _Output(args.output) as fh:
        fh.write("z,x,re_psi,im_psi\n")
        for zi, xi, pv in zip(mapping.z, mapping.x, psi):
            fh.write(f"{_fmt(zi)},{_fmt(xi)},{_fmt(pv.real)},{_fmt(pv.imag)}\n")
    if args.plot:
        report.save_wavefunction_figure(
            mapping.z, psi.real, psi.imag, _plot_target(args, ""))
    return 0


def _reflection_row(params, energy):
    case = params.case
    try:
        if case is CaseKind.FULL_HYPERGEOMETRIC:
            d = scattering.reflect_full(params, energy)
        elif case is CaseKind.CONFLUENT_FIRST:
            d = scattering.reflect_confluent_first(params, energy)
        else:
            d = scattering.reflect_confluent_second(params, energy)
    except ChannelClosedError:
        return None
    return d


def _cmd_scatter(args) -> int:
    params = _params_from_args(args)
    lo, hi, count = args.energies
    count = int(count)
    if count < 1:
        raise CliUsageError("energy count must be at least 1")
    energies = [lo] if count == 1 else list(np.linspace(lo, hi, count))
    rows = []
    for e in energies:
        d = _reflection_row(params, e)
        if d is not None:
            rows.append(d)
    with _Output(args.output) as fh:
        fh.write("epsilon,k,kprime,re_r_left,im_r_left,re_r_right,im_r_right,P\n")
        for d in rows:
            cells = [_fmt(d.energy)]
            cells.append(_fmt(d.k) if d.k is not None else "")
            cells.append(_fmt(d.k_prime) if d.k_prime is not None else "")
            if d.r_left is not None:
                cells += [_fmt(d.r_left.real), _fmt(d.r_left.imag)]
            else:
                cells += ["", ""]
            if d.r_right is not None:
                cells += [_fmt(d.r_right.real), _fmt(d.r_right.imag)]
            else:
                cells += ["", ""]
            cells.append(_fmt(d.P))
            fh.write(",".join(cells) + "\n")
    if args.plot:
        report.save_scatter_figure([d.energy for d in rows], [d.P for d in rows],
                                   _plot_target(args, ""))
    return 0


def _params_echo(params) -> dict:
    out = {"case": params.case.value, "rho": params.rho, "q": params.q}
    if isinstance(params, InvariantParams):
        out.update(r=params.r, omega=params.omega, g=params.g, sigma=params.sigma)
    elif isinstance(params, ConfluentFirstParams):
        out.update(beta=params.beta, p=params.p)
    return out


def _spectrum_report(params, with_oracle=False, grid_step=1e-3) -> dict:
    flags = spectrum.classify(params)
    result = spectrum.solve_bound_states(params)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "parameters": _params_echo(params),
        "region": {
            "has_zero_mode": flags.has_zero_mode,
            "branch": flags.branch.value,
            "middle_blue_rejection": flags.middle_blue_rejection,
        },
        "states": [
            {
                "branch": s.branch.value,
                "index": s.index,
                "energy": s.energy,
                "residual": s.residual,
                "threshold_flag": s.threshold_flag,
            }
            for s in result.states
        ],
        "thresholds": [
            {
                "branch": s.branch.value,
                "index": s.index,
                "energy": s.energy,
                "residual": s.residual,
                "threshold_flag": s.threshold_flag,
            }
            for s in result.thresholds
        ],
    }
    if with_oracle:
        doc["oracle"] = _oracle_block(params, result, grid_step)
    return doc


def _shoot_for(params, result, grid_step):
    energies = [s.energy for s in result.states]
    grid = oracle.recommended_grid(params, energies, step=grid_step)
    pot = oracle.SampledPotential(params, grid)
    threshold = pot.u_left if pot.u_right is None else min(pot.u_left, pot.u_right)
    if params.case is CaseKind.CONFLUENT_FIRST:
        threshold = pot.u_left
    u_min = float(np.min(pot.U))
    window = (u_min - 0.1 * max(1.0, abs(u_min)), threshold * (1.0 - 1e-9))
    return oracle.shoot_eigenvalues(pot, window, grid)


def _rel_dev(shots, closed, scale) -> float:
    """Max deviation relative to each level, floored by 1% of the spectral
    scale so the exact-zero eigenvalue is judged sensibly."""
    dev = 0.0
    floor = 1e-2 * max(scale, 1e-6)
    for s, c in zip(shots, sorted(closed)):
        dev = max(dev, abs(s.energy - c) / max(abs(c), floor))
    return dev


def _oracle_block(params, result, grid_step) -> dict:
    shots = _shoot_for(params, result, grid_step)
    closed = [s.energy for s in result.states]
    devs = []
    floor = 1e-2 * max(params.u_left, 1e-6)
    for s, c in zip(shots, sorted(closed)):
        devs.append(abs(s.energy - c) / max(abs(c), floor))
    return {
        "energies": [s.energy for s in shots],
        "node_counts": [s.node_count for s in shots],
        "mismatches": [s.log_derivative_mismatch for s in shots],
        "count_match": len(shots) == len(closed),
        "max_rel_deviation": max(devs) if devs else 0.0,
    }


def _cmd_spectrum(args) -> int:
    params = _params_from_args(args)
    doc = _spectrum_report(params, with_oracle=args.oracle,
                           grid_step=args.grid_step)
    with _Output(args.output) as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")
    return 0


def _cmd_verify(args) -> int:
    params = _params_from_args(args)
    checks = []

    result = spectrum.solve_bound_states(params)
    closed = sorted(s.energy for s in result.states)
    shots = _shoot_for(params, result, args.grid_step)
    checks.append(("spectrum-count",
                   len(shots) == len(closed),
                   f"closed-form {len(closed)} vs shooting {len(shots)}"))
    dev = _rel_dev(shots, closed, params.u_left)
    checks.append(("spectrum-energies", dev <= 1e-6,
                   f"max relative deviation {dev:.3e} (tol 1e-6)"))
    nodes_ok = all(s.node_count == i for i, s in enumerate(shots))
    checks.append(("node-counts", nodes_ok,
                   f"{[s.node_count for s in shots]}"))

    worst_resid = 0.0
    z_lo, z_hi = -10.0, 10.0 if params.case is not CaseKind.CONFLUENT_SECOND else 25.0
    xg = build_mapping(params, np.linspace(z_lo, z_hi, 1000)).x
    for s in result.states:
        p = wavefunction.Psi(params, s.energy)
        worst_resid = max(worst_resid, oracle.residual_norm(params, s.energy, p, xg))
    checks.append(("eigenfunction-residuals", worst_resid < 1e-6,
                   f"max x-form residual {worst_resid:.3e} (tol 1e-6)"))

    checks.append(_verify_reflection(params, args.grid_step))

    all_ok = True
    for name, ok, detail in checks:
        print(f"{'PASS' if ok else 'FAIL'} {name}: {detail}")
        all_ok = all_ok and ok
    return 0 if all_ok else 2


def _verify_reflection(params, grid_step):
    case = params.case
    if case is CaseKind.FULL_HYPERGEOMETRIC:
        energy = 1.5 * max(params.u_left, params.u_right) + 0.5
        closed = scattering.reflection_probability_full(params, energy)
        grid = oracle.scattering_grid(params, energy, step=grid_step)
        num = oracle.numeric_reflection(params, energy, grid)
        ok = abs(num - closed) <= 1e-3
        return ("reflection", ok,
                f"energy {energy:g}: closed P {closed:.6e} vs numeric "
                f"{num:.6e} (tol 1e-3)")
    if case is CaseKind.CONFLUENT_FIRST:
        energy = 1.5 * params.u_left + 0.5
        closed = scattering.reflect_confluent_first(params, energy).r_left
        grid = oracle.scattering_grid(params, energy, step=grid_step)
        num = oracle.numeric_reflection_amplitude(params, energy, grid)
        phase_dev = abs(math.remainder(
            math.atan2(num.imag, num.real) - math.atan2(closed.imag, closed.real),
            2.0 * math.pi))
        ok = abs(abs(num) - 1.0) < 1e-6 and phase_dev < 1e-3
        return ("reflection", ok,
                f"energy {energy:g}: |r| {abs(num):.9f}, phase deviation "
                f"{phase_dev:.2e} rad (tol 1e-3)")
    energy = 1.5 * params.u_left + 0.5
    closed = scattering.reflect_confluent_second(params, energy).r_left
    grid = oracle.scattering_grid(params, energy, step=2e-3, tail_tol=1e-6)
    num = oracle.numeric_reflection_amplitude(params, energy, grid, tail_tol=1e-6)
    ok = abs(abs(num) - abs(closed)) < 1e-3
    return ("reflection", ok,
            f"energy {energy:g}: closed |r_L| {abs(closed):.6e} vs numeric "
            f"{abs(num):.6e} (tol 1e-3)")


def _cmd_phase_diagram(args) -> int:
    params_probe = None
    case = CaseKind(args.case) if args.case else CaseKind.FULL_HYPERGEOMETRIC
    if case is CaseKind.CONFLUENT_SECOND:
        raise CliUsageError("phase-diagram rasterizes the full or "
                            "confluent-first plane")
    rho = args.rho if args.rho is not None else 1.0
    omega = args.omega if args.omega is not None else 1.0
    q_lo, q_hi, q_st = args.q_range
    s_lo, s_hi, s_st = args.second_range
    qs = np.arange(q_lo, q_hi + 0.5 * q_st, q_st)
    ss = np.arange(s_lo, s_hi + 0.5 * s_st, s_st)
    rows = []
    for q in qs:
        for second in ss:
            try:
                if case is CaseKind.FULL_HYPERGEOMETRIC:
                    p = InvariantParams(q=float(q), r=float(second),
                                        rho=rho, omega=omega)
                else:
                    if second == 0.0:
                        rows.append((q, second, "none", False, 0))
                        continue
                    p = ConfluentFirstParams.from_p(q=float(q), p=float(second),
                                                    rho=rho)
                flags = spectrum.classify(p)
                count = len(spectrum.solve_bound_states(p).states)
                rows.append((q, second, flags.branch.value,
                             flags.has_zero_mode, count))
            except HyperpotError:
                rows.append((q, second, "none", False, 0))
    header = "q,r,region,zero_mode,count" if case is CaseKind.FULL_HYPERGEOMETRIC \
        else "q,p,region,zero_mode,count"
    with _Output(args.output) as fh:
        fh.write(header + "\n")
        for q, second, region, zero, count in rows:
            fh.write(f"{_fmt(q)},{_fmt(second)},{region},"
                     f"{'true' if zero else 'false'},{count}\n")
    if args.plot:
        arr_q = np.array([r[0] for r in rows])
        arr_s = np.array([r[1] for r in rows])
        arr_region = np.array([r[2] for r in rows])
        report.save_phase_diagram_figure(
            arr_q, arr_s, arr_region, _plot_target(args, ""),
            ylabel="r" if case is CaseKind.FULL_HYPERGEOMETRIC else "p")
    return 0


_COMMANDS = {
    "potential": _cmd_potential,
    "wavefunction": _cmd_wavefunction,
    "scatter": _cmd_scatter,
    "spectrum": _cmd_spectrum,
    "verify": _cmd_verify,
    "phase-diagram": _cmd_phase_diagram,
}


def run(argv) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        args = _apply_config(args)
        return _COMMANDS[args.command](args)
    except (CliUsageError, InvalidParameterError, ChannelClosedError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (NonConvergenceError, HyperpotError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
