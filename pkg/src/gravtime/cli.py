"""Command-line front end: parameter sweeps, figure datasets, the axis
dictionary, platform tables, and the verification suite runner.

All data output is CSV (comma-delimited, ``.`` decimal, header row,
``#``-prefixed metadata lines) or line-delimited JSON records; rendering
belongs to the separate plots package.  Exit codes: 0 success, 1
validation error, 2 numerical failure.
"""

from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from . import experiments, freefall, kasevich_chu, optomech
from ._io import read_config, render_csv, render_records
from .errors import (
    ConvergenceFailure,
    DegenerateBlock,
    GravtimeError,
    GridUnderResolved,
    QuadratureNotConverged,
    StepTooLarge,
    StepTooSmall,
    TruncationTail,
)
from .estimation import (
    FisherMatrix2,
    PriorInfo,
    correlation,
    regularized_effective,
    schur_effective,
)
from .kernel import (
    NormalizedCoeffs,
    axis_from_quadratic,
    normalized_coeffs,
    retention_kernel,
    u_coordinate,
)

# failures of the numerical machinery itself (exit 2); everything else a
# command raises is treated as input validation (exit 1)
NUMERICAL_ERRORS = (
    ConvergenceFailure,
    StepTooLarge,
    StepTooSmall,
    QuadratureNotConverged,
    GridUnderResolved,
    TruncationTail,
)

# fallback values applied after the config file; explicit flags win
DEFAULTS: dict[str, dict] = {
    "freefall": {
        "sigma": 1.0, "g": 1.0, "t": None, "t_max": 10.0,
        "grid_points": 200, "prior_dt": None,
    },
    "kc": {
        "k0": 1.0, "t_sep": 1.0, "g": 9.81, "sigma_v": 0.0,
        "contrast": 1.0, "prior_dt": None, "n_atoms": 1,
    },
    "opto": {
        "kbar": 0.05, "mu": 2.0, "beta_r": 0.10, "beta_i": 0.0,
        "delta": 0.0, "a_coef": 1.0, "g": None, "t_max": 6.0 * math.pi,
        "grid_points": 120, "fock_dim": 64, "photon_max": 16,
    },
    "kernel": {
        "sigma": 1.0, "t": 2.0, "k0": 1.0, "t_sep": 1.0, "g": 9.81,
        "contrast": 1.0, "sigma_v": 0.1, "prior_dt": 1.0,
        "kbar": 0.05, "mu": 2.0, "beta_r": 0.10, "beta_i": 0.05,
        "delta": 0.3, "a_coef": 1.0, "fock_dim": 64, "photon_max": 16,
    },
    "experiments": {},
    "figures": {
        "grid_points": None, "t_points": 181, "t_max": None,
        "kbar": 0.05, "mu": 2.0, "beta_r": 0.10, "beta_i": 0.0,
        "delta": 0.0, "a_coef": 1.0, "fock_dim": 64, "photon_max": 16,
    },
    "verify": {"tol": 1e-6},
}

_INT_KEYS = {"grid_points", "n_atoms", "fock_dim", "photon_max", "t_points"}


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors; the contract wants 1."""

    def error(self, message: str):  # noqa: D102 - argparse override
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _emit(args, header, rows, metadata) -> int:
    if args.format == "records":
        text = render_records(
            dict(zip(header, row)) for row in rows
        )
    else:
        text = render_csv(header, rows, metadata)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _merge_config(args) -> None:
    """Fill unset (None) options from the config file, then from the
    per-command defaults table.  Explicit flags always win."""
    file_values = read_config(args.config) if args.config else {}
    defaults = DEFAULTS.get(args.command, {})
    for key, fallback in defaults.items():
        if getattr(args, key, None) is not None:
            continue
        if key in file_values:
            raw = file_values[key]
            value = int(raw) if key in _INT_KEYS else float(raw)
        else:
            value = fallback
        setattr(args, key, value)


def _prior_from(args) -> PriorInfo:
    if getattr(args, "prior_dt", None):
        return PriorInfo.from_delta_t(args.prior_dt)
    return PriorInfo(0.0)


def _nan_guard(fn) -> float:
    try:
        return fn()
    except DegenerateBlock:
        return math.nan


# -- command handlers -----------------------------------------------------------


def _cmd_freefall(args) -> int:
    probe = freefall.GaussianProbe(sigma=args.sigma)
    prior = _prior_from(args)
    if args.t is not None:
        ts = [float(args.t)]
    else:
        n = int(args.grid_points)
        ts = list(np.linspace(args.t_max / n, args.t_max, n))
    header = [
        "t", "f_gg", "f_gt", "f_tt",
        "f_eff", "f_eff_regularized", "rho_sq", "retention",
    ]
    rows = []
    for t in ts:
        f = freefall.qfim(probe, args.g, t)
        rows.append([
            t, f.f_gg, f.f_gt, f.f_tt,
            schur_effective(f),
            regularized_effective(f, prior),
            _nan_guard(lambda f=f: correlation(f)),
            _nan_guard(lambda f=f: 1.0 - correlation(f)),
        ])
    meta = {
        "model": "freefall-gaussian",
        "units": "natural (hbar = m = 1)",
        "sigma": args.sigma,
        "g": args.g,
        "prior_dt": args.prior_dt if args.prior_dt else "none",
    }
    return _emit(args, header, rows, meta)


def _kc_row(name: str, f: FisherMatrix2, prior: PriorInfo) -> list:
    return [
        name, f.f_gg, f.f_gt, f.f_tt,
        regularized_effective(f, prior),
        _nan_guard(lambda: correlation(f)),
        _nan_guard(lambda: 1.0 - correlation(f)),
    ]


def _cmd_kc(args) -> int:
    cfg = kasevich_chu.KCConfig(
        k0=args.k0, t_sep=args.t_sep, contrast=args.contrast,
        g=args.g, sigma_v=args.sigma_v, n_atoms=int(args.n_atoms),
    )
    prior = _prior_from(args)
    header = ["record", "f_gg", "f_gt", "f_tt", "f_eff", "rho_sq", "retention"]
    rows = [
        _kc_row("internal_midfringe", kasevich_chu.internal_fisher(cfg), prior),
        _kc_row("fullstate", kasevich_chu.fullstate_qfim(cfg), prior),
    ]
    meta = {
        "model": "kasevich-chu",
        "units": "caller units (k0, T, g, sigma_v consistent)",
        "k0": cfg.k0, "T": cfg.t_sep, "g": cfg.g,
        "sigma_v": cfg.sigma_v, "contrast": cfg.contrast,
        "n_atoms": cfg.n_atoms,
        "prior_dt": args.prior_dt if args.prior_dt else "none",
        "f_eff": "Schur complement against the prior-augmented timing block",
    }
    return _emit(args, header, rows, meta)


def _opto_config(args) -> optomech.OptoConfig:
    return optomech.OptoConfig(
        kbar=args.kbar, mu=args.mu, beta_r=args.beta_r, beta_i=args.beta_i,
        delta=args.delta, a_coef=args.a_coef,
        fock_dim=int(args.fock_dim), photon_max=int(args.photon_max),
    )


def _cmd_opto(args) -> int:
    cfg = _opto_config(args)
    axis = optomech.axis_params(cfg)
    g = args.g if args.g is not None else axis.g_c
    u = u_coordinate(g, axis)
    n = int(args.grid_points)
    ts = np.linspace(args.t_max / n, args.t_max, n)
    entries = optomech.qfim(cfg, g, ts)
    header = ["t", "u", "f_gg", "f_gt", "f_tt", "rho_sq", "retention", "degradation"]
    rows = []
    for t, e in zip(ts, entries):
        f = FisherMatrix2(
            f_gg=e.f_gg,
            f_gt=optomech.cross_term(cfg, g, float(t)),
            f_tt=e.f_tt,
        )
        rho = _nan_guard(lambda f=f: correlation(f))
        if math.isnan(rho):
            degr = math.nan
        elif rho < 1.0:
            degr = (1.0 - rho) ** -0.5 - 1.0
        else:
            degr = math.inf
        rows.append([float(t), u, f.f_gg, f.f_gt, f.f_tt, rho, 1.0 - rho, degr])
    meta = {
        "model": "optomech-closed-unitary",
        "units": "dimensionless (t = omega_m * t_phys)",
        "kbar": cfg.kbar, "mu": cfg.mu, "beta_r": cfg.beta_r,
        "beta_i": cfg.beta_i, "delta": cfg.delta, "a_coef": cfg.a_coef,
        "g": g, "g_c": axis.g_c, "g_star": axis.g_star,
        "fock_dim": cfg.fock_dim, "photon_max": cfg.photon_max,
        "entries": "diagonals numerical (truncated Fock), cross term closed form",
    }
    return _emit(args, header, rows, meta)


def _cmd_kernel(args) -> int:
    if args.action != "dictionary":
        raise ValueError(f"unknown kernel action {args.action!r}")
    rows = []

    def add(name: str, params) -> None:
        axis = axis_from_quadratic(params)
        co = normalized_coeffs(params, axis)
        rows.append([name, axis.g_c, axis.g_star, co.alpha0, co.alpha1, params.t])

    probe = freefall.GaussianProbe(sigma=args.sigma)
    add("freefall_gaussian", freefall.kernel_params(probe, args.t))

    kc_cfg = kasevich_chu.KCConfig(
        k0=args.k0, t_sep=args.t_sep, contrast=args.contrast,
        g=args.g, sigma_v=args.sigma_v,
    )
    prior = PriorInfo.from_delta_t(args.prior_dt)
    add("kc_internal_prior", kasevich_chu.internal_kernel_params(kc_cfg, prior))
    add("kc_fullstate", kasevich_chu.fullstate_kernel_params(kc_cfg))

    add("optomech", optomech.kernel_params(_opto_config(args), args.t))

    header = ["model", "g_c", "g_star", "alpha0", "alpha1", "t"]
    meta = {
        "table": "axis dictionary: u = (g - g_c)/g_*, R(u) = 1 - (a0 + a1 u)^2/(1 + u^2)",
        "units": "per-row model units; t is the free-fall/optomech time, T the pulse separation",
        "sigma": args.sigma, "t": args.t,
        "k0": args.k0, "T": args.t_sep, "contrast": args.contrast,
        "sigma_v": args.sigma_v, "prior_dt": args.prior_dt,
        "kbar": args.kbar, "mu": args.mu, "beta_r": args.beta_r,
        "beta_i": args.beta_i, "delta": args.delta, "a_coef": args.a_coef,
    }
    return _emit(args, header, rows, meta)


def _cmd_experiments(args) -> int:
    if args.action == "table":
        header = ["quantity", "value", "unit"]
        rows = [[g.quantity, g.value, g.unit] for g in experiments.golden_numbers()]
        meta = {
            "table": "literature-anchored benchmark numbers",
            "g_standard_mps2": experiments.CONSTANTS.g_standard,
            "m_rb87_kg": experiments.CONSTANTS.m_rb87,
        }
        return _emit(args, header, rows, meta)
    if args.action == "platforms":
        specs = list(experiments.PLATFORMS.values())
        rows = []
        for spec in specs:
            (row,) = experiments.figure3_table([spec], [spec.t_int])
            rows.append([
                row.platform, row.t_src_k, row.sigma_v_mps, row.t_int_s,
                row.retention_kc, row.retention_freefall_proxy, row.caveat,
            ])
        header = [
            "platform", "t_src_K", "sigma_v_mps", "t_int_s",
            "retention_kc", "retention_freefall_proxy", "caveat",
        ]
        meta = {
            "table": "platform baselines at each instrument's own interrogation time",
            "g_standard_mps2": experiments.CONSTANTS.g_standard,
            "source_model": "1D rms thermal velocity sqrt(kB T / m)",
        }
        return _emit(args, header, rows, meta)
    raise ValueError(f"unknown experiments action {args.action!r}")


FIG1_CLASSES = (
    ("R_lorentzian", 0.0, 1.0),
    ("R_freefall", 0.0, 0.60),
    ("R_opto", 0.25, 0.65),
)


def _cmd_fig1(args) -> int:
    n = int(args.grid_points or 401)
    half = max(n // 2, 1)
    u_grid = np.arange(-half, half + 1) * (6.0 / half)  # exact 0 at center
    header = ["u"] + [name for name, _, _ in FIG1_CLASSES]
    rows = []
    for u in u_grid:
        row = [float(u)]
        for _, a0, a1 in FIG1_CLASSES:
            row.append(retention_kernel(NormalizedCoeffs(a0, a1, t=0.0), float(u)))
        rows.append(row)
    meta = {
        "figure": "normalized retention classes R(u) = 1 - (a0 + a1 u)^2/(1 + u^2)",
        "R_lorentzian": "alpha0 = 0.0, alpha1 = 1.0 (pure Lorentzian 1/(1+u^2))",
        "R_freefall": "alpha0 = 0.0, alpha1 = 0.60",
        "R_opto": "alpha0 = 0.25, alpha1 = 0.65",
    }
    return _emit(args, header, rows, meta)


def _cmd_fig2(args) -> int:
    cfg = _opto_config(args)
    n_u = int(args.grid_points or 41)
    t_max = args.t_max if args.t_max is not None else 6.0 * math.pi
    revivals = []
    k = 1
    while 2.0 * math.pi * k <= t_max * (1.0 + 1e-12):
        revivals.append(2.0 * math.pi * k)
        k += 1
    t_grid = np.union1d(
        np.linspace(0.05, t_max, int(args.t_points)), np.asarray(revivals)
    )
    u_grid = np.linspace(-1.0, 1.0, n_u)
    field = optomech.correlation_field(cfg, u_grid, t_grid)
    header = ["u", "t", "g", "rho_sq", "degradation"]
    rows = []
    for i, u in enumerate(field.u_values):
        for j, t in enumerate(field.t_values):
            rows.append([
                float(u), float(t), float(field.g_values[i]),
                float(field.rho_sq[i, j]), float(field.degradation[i, j]),
            ])
    meta = {
        "figure": "optomech correlation field rho^2(u, t) and degradation (1-rho^2)^(-1/2)-1",
        "units": "dimensionless (t = omega_m * t_phys)",
        "kbar": cfg.kbar, "mu": cfg.mu, "beta_r": cfg.beta_r,
        "beta_i": cfg.beta_i, "delta": cfg.delta, "a_coef": cfg.a_coef,
        "fock_dim": cfg.fock_dim, "photon_max": cfg.photon_max,
        "revival_times": ";".join(repr(t) for t in revivals),
    }
    return _emit(args, header, rows, meta)


FIG3_PLATFORM_KEYS = ("aqg", "einstein_elevator", "ultracold")


def _cmd_fig3(args) -> int:
    n = int(args.grid_points or 251)
    t_max = args.t_max if args.t_max is not None else 0.30
    t_grid = list(np.linspace(0.0, t_max, n))
    specs = [experiments.PLATFORMS[k] for k in FIG3_PLATFORM_KEYS]
    table = experiments.figure3_table(specs, t_grid)
    header = [
        "platform", "t_src_K", "sigma_v_mps", "t_int_s",
        "retention_kc", "retention_freefall_proxy", "caveat",
    ]
    rows = [
        [
            r.platform, r.t_src_k, r.sigma_v_mps, r.t_int_s,
            r.retention_kc, r.retention_freefall_proxy, r.caveat,
        ]
        for r in table
    ]
    meta = {
        "figure": "retention vs interrogation time at literature source scales",
        "g_standard_mps2": experiments.CONSTANTS.g_standard,
        "m_rb87_kg": experiments.CONSTANTS.m_rb87,
        "markers": ";".join(
            f"{t_mark}:{label}" for t_mark, label in experiments.FIG3_MARKERS
        ),
        "note": "GAIN and MIGA share the 2 uK source curve; they appear as markers",
    }
    return _emit(args, header, rows, meta)


def _cmd_figures(args) -> int:
    return {"fig1": _cmd_fig1, "fig2": _cmd_fig2, "fig3": _cmd_fig3}[args.figure](args)


def _cmd_verify(args) -> int:
    from .oracle.checks import run_all

    records = run_all(fast=args.fast, oracle_rtol=args.tol)
    if args.format == "records" and not args.out:
        sys.stdout.write(render_records(r.to_dict() for r in records))
    else:
        for r in records:
            rel = ">=" if r.kind == "lower" else "<="
            verdict = "PASS" if r.passed else "FAIL"
            note = f"  [{r.note}]" if r.note else ""
            print(
                f"{verdict} {r.name}: residual {r.residual:.3e} {rel} {r.tolerance:g} "
                f"{r.parameters}{note}"
            )
        n_fail = sum(not r.passed for r in records)
        print(f"{len(records) - n_fail}/{len(records)} checks passed")
    if args.out:
        from ._io import write_records

        write_records(args.out, [r.to_dict() for r in records])
    return 2 if sum(not r.passed for r in records) else 0


# -- parser ---------------------------------------------------------------------


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", help="output path (default: stdout)")
    p.add_argument("--format", choices=("csv", "records"), default="csv")
    p.add_argument("--config", help="key = value config file; flags override")


def _add_float(p, *names) -> None:
    for name in names:
        p.add_argument(f"--{name.replace('_', '-')}", dest=name, type=float)


def _add_int(p, *names) -> None:
    for name in names:
        p.add_argument(f"--{name.replace('_', '-')}", dest=name, type=int)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="gravtime",
        description="gravity-time information sweeps, figure datasets, verification",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("freefall", help="Gaussian free-fall information sweep")
    _add_common(p)
    _add_float(p, "sigma", "g", "t", "t_max", "prior_dt")
    _add_int(p, "grid_points")
    p.set_defaults(handler=_cmd_freefall)

    p = sub.add_parser("kc", help="light-pulse interferometer records")
    _add_common(p)
    _add_float(p, "k0", "g", "sigma_v", "contrast", "prior_dt")
    p.add_argument("--T", dest="t_sep", type=float)
    _add_int(p, "n_atoms")
    p.set_defaults(handler=_cmd_kc)

    p = sub.add_parser("opto", help="optomechanical benchmark time sweep")
    _add_common(p)
    _add_float(p, "kbar", "mu", "beta_r", "beta_i", "delta", "a_coef", "g", "t_max")
    _add_int(p, "grid_points", "fock_dim", "photon_max")
    p.set_defaults(handler=_cmd_opto)

    p = sub.add_parser("kernel", help="axis dictionary at user parameters")
    _add_common(p)
    p.add_argument("action", nargs="?", default="dictionary", choices=("dictionary",))
    _add_float(
        p, "sigma", "t", "k0", "g", "sigma_v", "contrast", "prior_dt",
        "kbar", "mu", "beta_r", "beta_i", "delta", "a_coef",
    )
    p.add_argument("--T", dest="t_sep", type=float)
    _add_int(p, "fock_dim", "photon_max")
    p.set_defaults(handler=_cmd_kernel)

    p = sub.add_parser("experiments", help="platform tables and benchmark numbers")
    _add_common(p)
    p.add_argument("action", nargs="?", default="table", choices=("table", "platforms"))
    p.set_defaults(handler=_cmd_experiments)

    p = sub.add_parser("figures", help="emit the dataset behind one figure")
    _add_common(p)
    p.add_argument("figure", choices=("fig1", "fig2", "fig3"))
    _add_float(p, "kbar", "mu", "beta_r", "beta_i", "delta", "a_coef", "t_max")
    _add_int(p, "grid_points", "t_points", "fock_dim", "photon_max")
    p.set_defaults(handler=_cmd_figures)

    p = sub.add_parser("verify", help="run the oracle verification suite")
    p.add_argument("--out", help="also write JSON-record log here")
    p.add_argument("--config", help="key = value config file; flags override")
    p.add_argument("--format", choices=("csv", "records"), default="csv")
    p.add_argument("--fast", action="store_true", help="trim the point lists")
    p.add_argument("--tol", type=float, help="oracle self-validation rtol")
    p.set_defaults(handler=_cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _merge_config(args)
        return args.handler(args)
    except NUMERICAL_ERRORS as exc:
        print(f"error [{type(exc).__name__}]: {exc}", file=sys.stderr)
        return 2
    except (GravtimeError, ValueError) as exc:
        print(f"error [{type(exc).__name__}]: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
