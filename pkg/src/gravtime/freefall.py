"""Exact two-parameter information of a free-falling Gaussian wavepacket.

A centered minimum-uncertainty Gaussian (Var z = σ²/2, Var p = ħ²/2σ²,
Cov_sym(z,p) = 0) evolving under H = p²/2m + m g z has the closed-form
information matrix in the ordered basis (g, t)

    F_gg = t⁴/(2σ²) + 2 m²σ²t²/ħ²
    F_gt = 2 m²gσ²t/ħ²
    F_tt = ħ²/(2m²σ⁴) + 2 m²g²σ²/ħ²

and the profiled information

    F_eff = t⁴/(2σ²) + (2 m²σ²t²/ħ²)·S(g),   S(g) = 1/(1 + (g/g_*)²),

with the Lorentzian scale g_* = ħ²/(2m²σ³).  The t⁴ channel is retained
exactly; only the t² channel is suppressed.  Natural units ħ = m = 1 with
σ as the length scale are the intended working regime; the formulas are
written with explicit ħ and m so SI evaluation at the experiments boundary
uses the same code path.
"""

from __future__ import annotations

from dataclasses import dataclass

from .estimation import FisherMatrix2
from .kernel import KernelParams


@dataclass(frozen=True)
class GaussianProbe:
    """Centered minimum-uncertainty wavepacket: width σ, mass m, ħ."""

    sigma: float
    mass: float = 1.0
    hbar: float = 1.0

    def __post_init__(self) -> None:
        if not (self.sigma > 0.0 and self.mass > 0.0 and self.hbar > 0.0):
            raise ValueError(
                f"sigma, mass, hbar must be positive: "
                f"({self.sigma}, {self.mass}, {self.hbar})"
            )

    @property
    def var_z(self) -> float:
        return self.sigma**2 / 2.0

    @property
    def var_p(self) -> float:
        return self.hbar**2 / (2.0 * self.sigma**2)

    def spread_std(self, t: float) -> float:
        """Ballistic position spread sqrt(Var z(t)) of the free packet:
        Var z(t) = (σ²/2)(1 + (ħt/mσ²)²)."""
        rate = self.hbar * t / (self.mass * self.sigma**2)
        return self.sigma * ((1.0 + rate**2) / 2.0) ** 0.5


def qfim(probe: GaussianProbe, g: float, t: float) -> FisherMatrix2:
    """Closed-form information matrix; f_gg is g-independent, f_gt linear
    and f_tt quadratic in g."""
    if t < 0.0:
        raise ValueError(f"interrogation time must be >= 0, got {t}")
    s, m, hbar = probe.sigma, probe.mass, probe.hbar
    msq = 2.0 * m**2 * s**2 / hbar**2
    return FisherMatrix2(
        f_gg=t**4 / (2.0 * s**2) + msq * t**2,
        f_gt=msq * g * t,
        f_tt=hbar**2 / (2.0 * m**2 * s**4) + msq * g**2,
    )


def lorentz_scale(probe: GaussianProbe) -> float:
    """g_* = ħ²/(2m²σ³); shrinks as σ⁻³ toward the plane-wave limit."""
    return probe.hbar**2 / (2.0 * probe.mass**2 * probe.sigma**3)


def effective_info(probe: GaussianProbe, g: float, t: float) -> float:
    """Profiled gravity information t⁴/(2σ²) + (2m²σ²t²/ħ²)·S(g)."""
    if t < 0.0:
        raise ValueError(f"interrogation time must be >= 0, got {t}")
    s, m, hbar = probe.sigma, probe.mass, probe.hbar
    suppression = 1.0 / (1.0 + (g / lorentz_scale(probe)) ** 2)
    return t**4 / (2.0 * s**2) + (2.0 * m**2 * s**2 * t**2 / hbar**2) * suppression


def kernel_params(probe: GaussianProbe, t: float) -> KernelParams:
    """Structural coefficients of the Gaussian free-fall model at time t."""
    if t < 0.0:
        raise ValueError(f"interrogation time must be >= 0, got {t}")
    s, m, hbar = probe.sigma, probe.mass, probe.hbar
    msq = 2.0 * m**2 * s**2 / hbar**2
    return KernelParams(
        c0=hbar**2 / (2.0 * m**2 * s**4),
        c1=0.0,
        c2=msq,
        d0=0.0,
        d1=msq * t,
        f_gg=t**4 / (2.0 * s**2) + msq * t**2,
        t=t,
    )
