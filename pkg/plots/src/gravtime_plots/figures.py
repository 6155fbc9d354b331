"""Build and save the three figures from their gravtime CSV datasets.

``build_figure`` returns a matplotlib Figure so tests can inspect the
artists; ``render`` saves it to the requested output path.  Axes order is
stable: figure 2 is [field, degradation, colorbar], figure 3 is
[linear panel, log panel].
"""

from __future__ import annotations

import pathlib
from dataclasses import dataclass

import numpy as np
from matplotlib.figure import Figure

from .errors import SchemaMismatch
from .loader import Table, read_table, require_header, require_meta

FIG1_HEADER = ("u", "R_lorentzian", "R_freefall", "R_opto")
FIG2_HEADER = ("u", "t", "g", "rho_sq", "degradation")
FIG3_HEADER = (
    "platform",
    "t_src_K",
    "sigma_v_mps",
    "t_int_s",
    "retention_kc",
    "retention_freefall_proxy",
    "caveat",
)

# (column, linestyle) for the three retention classes of figure 1
FIG1_CURVES = (
    ("R_lorentzian", "solid"),
    ("R_freefall", "dashed"),
    ("R_opto", "dashdot"),
)


@dataclass(frozen=True)
class FigureSpec:
    """What to render: which figure, from which CSV, to which file."""

    figure_id: int
    input_csv: pathlib.Path
    output_path: pathlib.Path
    xlabel: str | None = None
    ylabel: str | None = None
    title: str | None = None

    def __post_init__(self) -> None:
        if self.figure_id not in (1, 2, 3):
            raise ValueError(f"figure_id must be 1, 2 or 3, got {self.figure_id}")
        object.__setattr__(self, "input_csv", pathlib.Path(self.input_csv))
        object.__setattr__(self, "output_path", pathlib.Path(self.output_path))


def build_figure(spec: FigureSpec) -> Figure:
    table = read_table(spec.input_csv)
    builder = {1: _build_fig1, 2: _build_fig2, 3: _build_fig3}[spec.figure_id]
    fig = builder(spec, table)
    if spec.title:
        fig.suptitle(spec.title)
    return fig


def render(spec: FigureSpec) -> pathlib.Path:
    fig = build_figure(spec)
    spec.output_path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(spec.output_path, dpi=200, bbox_inches="tight")
    return spec.output_path


# -- figure 1: normalized retention classes --------------------------------


def _build_fig1(spec: FigureSpec, table: Table) -> Figure:
    require_header(table, FIG1_HEADER)
    u = table.floats("u")
    fig = Figure(figsize=(6.0, 4.0))
    ax = fig.subplots()
    for name, style in FIG1_CURVES:
        ax.plot(u, table.floats(name), linestyle=style, label=name[2:])
    ax.set_xlabel(spec.xlabel or r"$u = (g - g_c)/g_*$")
    ax.set_ylabel(spec.ylabel or r"retention $R(u)$")
    ax.set_ylim(0.0, 1.08)
    ax.grid(True, alpha=0.3)
    ax.legend()
    return fig


# -- figure 2: correlation field with revival lines ------------------------


def _pivot_field(table: Table) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    u = table.floats("u")
    t = table.floats("t")
    rho = table.floats("rho_sq")
    deg = table.floats("degradation")
    u_vals = np.unique(u)
    t_vals = np.unique(t)
    grid_rho = np.full((u_vals.size, t_vals.size), np.nan)
    grid_deg = np.full_like(grid_rho, np.nan)
    iu = np.searchsorted(u_vals, u)
    it = np.searchsorted(t_vals, t)
    grid_rho[iu, it] = rho
    grid_deg[iu, it] = deg
    if np.isnan(grid_rho).any():
        raise SchemaMismatch(
            f"{table.path}: (u, t) rows do not form a full rectangular grid"
        )
    return u_vals, t_vals, grid_rho, grid_deg


def _revival_times(table: Table) -> list[float]:
    raw = require_meta(table, "revival_times")
    try:
        return [float(part) for part in raw.split(";") if part]
    except ValueError:
        raise SchemaMismatch(
            f"{table.path}: revival_times metadata {raw!r} is not ';'-joined floats"
        ) from None


def _build_fig2(spec: FigureSpec, table: Table) -> Figure:
    require_header(table, FIG2_HEADER)
    u_vals, t_vals, grid_rho, grid_deg = _pivot_field(table)
    revivals = _revival_times(table)
    fig = Figure(figsize=(6.8, 6.0))
    ax_map, ax_deg = fig.subplots(2, 1, sharex=True)
    mesh = ax_map.pcolormesh(
        t_vals, u_vals, grid_rho, shading="nearest", vmin=0.0, vmax=float(grid_rho.max()) or 1.0
    )
    fig.colorbar(mesh, ax=ax_map, label=r"$\rho^2$")
    ax_map.set_ylabel(spec.ylabel or r"$u = (g - g_c)/g_*$")
    # a few u slices of the timing-degradation factor
    slice_idx = sorted({0, u_vals.size // 2, u_vals.size - 1})
    for i in slice_idx:
        ax_deg.plot(t_vals, grid_deg[i], label=rf"$u = {u_vals[i]:g}$")
    for ax in (ax_map, ax_deg):
        for t_rev in revivals:
            ax.axvline(t_rev, linestyle="--", color="black", linewidth=0.9)
    ax_deg.set_xlabel(spec.xlabel or r"dimensionless time $\omega_m t$")
    ax_deg.set_ylabel(r"$(1-\rho^2)^{-1/2} - 1$")
    ax_deg.grid(True, alpha=0.3)
    ax_deg.legend()
    return fig


# -- figure 3: retention vs interrogation time, linear and log panels ------


def _parse_markers(table: Table) -> list[tuple[float, str]]:
    raw = require_meta(table, "markers")
    out = []
    for part in raw.split(";"):
        if not part:
            continue
        t_str, sep, label = part.partition(":")
        if not sep:
            raise SchemaMismatch(
                f"{table.path}: marker entry {part!r} is not 't:label'"
            )
        try:
            out.append((float(t_str), label))
        except ValueError:
            raise SchemaMismatch(
                f"{table.path}: marker time {t_str!r} is not a float"
            ) from None
    return out


def _build_fig3(spec: FigureSpec, table: Table) -> Figure:
    require_header(table, FIG3_HEADER)
    platforms = table.column("platform")
    t = table.floats("t_int_s")
    kc = table.floats("retention_kc")
    proxy = table.floats("retention_freefall_proxy")
    markers = _parse_markers(table)
    names = list(dict.fromkeys(platforms))
    fig = Figure(figsize=(6.4, 6.4))
    ax_lin, ax_log = fig.subplots(2, 1, sharex=True)
    for name in names:
        sel = np.array([p == name for p in platforms])
        order = np.argsort(t[sel])
        ts = t[sel][order]
        for ax in (ax_lin, ax_log):
            ax.plot(ts, kc[sel][order], marker="o", markersize=3, label=f"{name} (thermal)")
            ax.plot(
                ts, proxy[sel][order], linestyle="dotted",
                label=f"{name} (wavepacket proxy)",
            )
    for t_mark, label in markers:
        for ax in (ax_lin, ax_log):
            ax.axvline(t_mark, linestyle="--", color="gray", linewidth=0.9)
        ax_lin.text(
            t_mark, 0.55, label, rotation=90, fontsize=7,
            ha="right", va="center",
        )
    ax_log.set_yscale("log")
    ax_lin.set_ylim(-0.05, 1.1)
    ax_lin.set_ylabel(spec.ylabel or "retention R")
    ax_log.set_ylabel("retention R (log)")
    ax_log.set_xlabel(spec.xlabel or "interrogation time t (s)")
    ax_lin.legend(fontsize=7)
    ax_lin.grid(True, alpha=0.3)
    ax_log.grid(True, alpha=0.3)
    return fig
