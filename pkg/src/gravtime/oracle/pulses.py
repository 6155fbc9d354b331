"""Pulse-level simulation of the three-pulse interferometer.

The state is a two-component spinor (ψ_a, ψ_b) over the position grid:
internal ground/excited amplitudes times motional wavefunctions.  Pulses
act instantaneously and pointwise in z with the beamsplitter matrices

    U_{π/2} = (1/√2) [[1, -iE†], [-iE, 1]],    U_π = -i [[0, E†], [E, 0]],

E = exp[i(k0 z - φ)], so the a→b transition kicks the packet by +ħk0.
Between pulses both components fall under the same uniform field; for a
linear potential the split-step error is a global scalar phase, which
cancels inside the fringe, so the simulated interferometer phase is
exact to grid resolution.

Convention: the control phase is applied on the first pulse,
(φ1, φ2, φ3) = (φ_ctrl, 0, 0).  The path sum then gives exactly
ΔΦ = -k0 g T² - (φ1 - 2φ2 + φ3) = -k0 g T² - φ_ctrl.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
import math

import numpy as np

from ..errors import GridUnderResolved
from ..estimation import FisherMatrix2
from ..kasevich_chu import KCConfig
from .grid import MOMENTUM_TAIL_TOL, NYQUIST_HEADROOM, GridModel, uniform_field

# probability allowed within the outer 5% of the box after the sequence
EDGE_TAIL_TOL = 1e-10


def kc_grid(
    cfg: KCConfig,
    sigma: float = 1.0,
    n_points: int = 2048,
    mass: float = 1.0,
    hbar: float = 1.0,
    margin: float = 8.0,
) -> GridModel:
    """Grid sized for the full two-arm trajectory: ballistic fall over 2T,
    one recoil separation ħk0T/m, packet spreading, and a momentum span
    covering the recoil kick plus the field-driven sweep."""
    t_tot = 2.0 * cfg.t_sep
    spread = math.sqrt(0.5 * sigma**2 * (1.0 + (hbar * t_tot / (mass * sigma**2)) ** 2))
    fall = 0.5 * abs(cfg.g) * t_tot**2
    recoil_sep = hbar * cfg.k0 * cfg.t_sep / mass
    half = fall + recoil_sep + margin * spread + 2.0 * sigma
    model = GridModel(
        n_points=n_points,
        box_length=2.0 * half,
        mass=mass,
        hbar=hbar,
        potential=uniform_field(mass),
    )
    k_needed = cfg.k0 + mass * abs(cfg.g) * t_tot / hbar + 6.0 / sigma
    k_nyquist = math.pi / model.dz
    if k_needed > NYQUIST_HEADROOM * k_nyquist:
        raise GridUnderResolved(
            f"momentum span {k_needed:.3g} exceeds {NYQUIST_HEADROOM:.0%} of "
            f"Nyquist {k_nyquist:.3g}; raise n_points or shrink the box"
        )
    model.initial_state = model.gaussian_state(sigma=sigma)
    model.validate_state(model.initial_state)
    return model


def _apply_half_pulse(model: GridModel, k0: float, phi: float, a, b):
    e = np.exp(1j * (k0 * model.z - phi))
    inv_sqrt2 = 1.0 / math.sqrt(2.0)
    return (
        inv_sqrt2 * (a - 1j * e.conj() * b),
        inv_sqrt2 * (-1j * e * a + b),
    )


def _apply_pi_pulse(model: GridModel, k0: float, phi: float, a, b):
    e = np.exp(1j * (k0 * model.z - phi))
    return -1j * e.conj() * b, -1j * e * a


def _edge_tail(model: GridModel, psi: np.ndarray) -> float:
    edge = model.n_points // 20
    w = np.abs(psi) ** 2 * model.dz
    return float(w[:edge].sum() + w[-edge:].sum())


@dataclass(frozen=True)
class SequenceOutput:
    """Final spinor of one π/2-π-π/2 run and the excited-port population."""

    psi_a: np.ndarray
    psi_b: np.ndarray
    p_b: float


def run_sequence(
    cfg: KCConfig,
    model: GridModel,
    n_steps: int | None = None,
) -> SequenceOutput:
    """Propagate |a⟩⊗ψ0 through π/2(φ_ctrl) - T - π(0) - T - π/2(0)."""
    a = model.initial_state.astype(complex).copy()
    b = np.zeros_like(a)
    a, b = _apply_half_pulse(model, cfg.k0, cfg.phi_ctrl, a, b)
    a = model.propagate(cfg.g, cfg.t_sep, n_steps=n_steps, psi0=a)
    b = model.propagate(cfg.g, cfg.t_sep, n_steps=n_steps, psi0=b)
    a, b = _apply_pi_pulse(model, cfg.k0, 0.0, a, b)
    a = model.propagate(cfg.g, cfg.t_sep, n_steps=n_steps, psi0=a)
    b = model.propagate(cfg.g, cfg.t_sep, n_steps=n_steps, psi0=b)
    a, b = _apply_half_pulse(model, cfg.k0, 0.0, a, b)
    for component in (a, b):
        if model.momentum_tail(component) > MOMENTUM_TAIL_TOL:
            raise GridUnderResolved(
                "occupied momenta reached the Nyquist band during the sequence"
            )
        if _edge_tail(model, component) > EDGE_TAIL_TOL:
            raise GridUnderResolved(
                "wavepacket reached the box edge during the sequence"
            )
    return SequenceOutput(psi_a=a, psi_b=b, p_b=model.norm_sq(b))


@dataclass(frozen=True)
class FringeFit:
    """First-harmonic decomposition of P_b(φ): P = offset - (contrast/2)·
    cos(phase + φ).  Ideal closure gives offset=1/2, contrast=1, and
    phase ≡ k0 g T² (mod 2π), i.e. P_b = ½[1 - cos(-k0gT² - φ)]."""

    offset: float
    contrast: float
    phase: float


def fringe_scan(
    cfg: KCConfig,
    model: GridModel,
    n_phase: int = 8,
    n_steps: int | None = None,
) -> FringeFit:
    """Sweep the control phase over n_phase equispaced points and extract
    the fringe by discrete Fourier projection onto the first harmonic."""
    if n_phase < 3:
        raise ValueError(f"need >= 3 phase points, got {n_phase}")
    phis = 2.0 * np.pi * np.arange(n_phase) / n_phase
    pops = np.array(
        [
            run_sequence(replace(cfg, phi_ctrl=float(phi)), model, n_steps).p_b
            for phi in phis
        ]
    )
    first = np.mean(pops * np.exp(-1j * phis))
    return FringeFit(
        offset=float(np.mean(pops)),
        contrast=4.0 * abs(first),
        phase=float(np.angle(-first)),
    )


def classical_fisher_fd(
    cfg: KCConfig,
    model: GridModel,
    n_steps: int | None = None,
    step_scale: float = 1e-3,
) -> FisherMatrix2:
    """Classical Fisher matrix over (g, T) of the two-port readout,
    estimated from central differences of the simulated population:
    F_ij = ∂_iP ∂_jP / P(1-P).  Structurally rank one, since a binary
    readout carries one number."""
    p = run_sequence(cfg, model, n_steps).p_b
    hg = step_scale / (cfg.k0 * cfg.t_sep**2)

    def pop(c: KCConfig) -> float:
        return run_sequence(c, model, n_steps).p_b

    dp_g = (pop(replace(cfg, g=cfg.g + hg)) - pop(replace(cfg, g=cfg.g - hg))) / (
        2.0 * hg
    )
    ht = step_scale * cfg.t_sep
    dp_t = (
        pop(replace(cfg, t_sep=cfg.t_sep + ht))
        - pop(replace(cfg, t_sep=cfg.t_sep - ht))
    ) / (2.0 * ht)
    denom = max(p * (1.0 - p), 1e-12)
    return FisherMatrix2(
        f_gg=dp_g**2 / denom, f_gt=dp_g * dp_t / denom, f_tt=dp_t**2 / denom
    )


def kc_pulse_sim(
    cfg: KCConfig,
    model: GridModel,
    n_steps: int | None = None,
) -> tuple[float, float]:
    """(P_b, rank-1 residual of the finite-difference classical Fisher
    matrix over (g, T))."""
    p_b = run_sequence(cfg, model, n_steps).p_b
    fisher = classical_fisher_fd(cfg, model, n_steps)
    scale = fisher.f_gg * fisher.f_tt
    if scale == 0.0:
        return p_b, 0.0
    return p_b, abs(fisher.det) / scale
