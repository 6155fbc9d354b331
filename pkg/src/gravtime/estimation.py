"""Two-parameter information geometry for gravity estimation with an
uncertain interrogation time.

For a pure state family |psi(g, t)> the quantum Fisher information matrix
over the ordered pair (g, t) is

    F = 4 * Cov_sym(H_g, H_t),        H_j = i U† ∂_j U,

a symmetric positive-semidefinite 2x2 matrix.  Time is a nuisance: the
gravity information that survives profiling it out is the Schur complement

    F_eff = F_gg - F_gt² / F_tt,

optionally regularized by independent prior timing information
I_t = 1/ΔT².  This module stores the three entries, performs the
profiling, and exposes the correlation/retention scalars and the local
Cramér-Rao variance bound.  Everything here is pure arithmetic on the
entries; model modules supply them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import (
    DegenerateBlock,
    DegenerateTimingBlock,
    NonpositiveInformation,
)

# Degeneracy cutoff in the working unit system: an information entry below
# this is treated as exactly singular.
TOL_ABS = 1e-12

# Relative slack allowed on the PSD determinant and on [0,1] range checks;
# excursions inside the band are rounding, beyond it are hard errors.
CLAMP_BAND = 1e-9


@dataclass(frozen=True)
class FisherMatrix2:
    """Symmetric 2x2 information matrix over (g, t), stored as 3 scalars.

    Units: f_gg in s⁴·m⁻², f_gt in s·m⁻¹, f_tt in s⁻² when carrying SI
    quantities; dimensionless in natural units.  ``units`` is a bookkeeping
    tag only and never enters arithmetic.
    """

    f_gg: float
    f_gt: float
    f_tt: float
    units: str = "natural"

    def __post_init__(self) -> None:
        scale = max(abs(self.f_gg), abs(self.f_tt), 1.0)
        if self.f_gg < -TOL_ABS * scale or self.f_tt < -TOL_ABS * scale:
            raise ValueError(
                f"negative diagonal: f_gg={self.f_gg}, f_tt={self.f_tt}"
            )
        det = self.f_gg * self.f_tt - self.f_gt**2
        if det < -CLAMP_BAND * max(self.f_gg * self.f_tt, TOL_ABS):
            raise ValueError(
                f"matrix not positive semidefinite: det={det}, "
                f"f_gg*f_tt={self.f_gg * self.f_tt}"
            )

    @property
    def det(self) -> float:
        return self.f_gg * self.f_tt - self.f_gt**2

    def scaled(self, factor: float) -> "FisherMatrix2":
        """Multiply the whole matrix (e.g. N independent repetitions)."""
        return FisherMatrix2(
            factor * self.f_gg, factor * self.f_gt, factor * self.f_tt,
            units=self.units,
        )


@dataclass(frozen=True)
class PriorInfo:
    """Additive Fisher information about the nuisance time from an
    independent resource; i_t_prior = 1/ΔT² for a Gaussian-width prior."""

    i_t_prior: float = 0.0

    def __post_init__(self) -> None:
        if not self.i_t_prior >= 0.0:
            raise ValueError(f"prior information must be >= 0, got {self.i_t_prior}")

    @classmethod
    def from_delta_t(cls, delta_t: float) -> "PriorInfo":
        if not delta_t > 0.0:
            raise ValueError(f"prior width must be > 0, got {delta_t}")
        return cls(i_t_prior=1.0 / delta_t**2)


def _clamp(value: float, lo: float, hi: float) -> float:
    """Clamp rounding excursions just outside [lo, hi] back onto the ends."""
    band = CLAMP_BAND * max(abs(lo), abs(hi), 1.0)
    if lo - band <= value < lo:
        return lo
    if hi < value <= hi + band:
        return hi
    return value


def schur_effective(fisher: FisherMatrix2) -> float:
    """Gravity information after profiling out time: F_gg - F_gt²/F_tt.

    Raises DegenerateTimingBlock when the timing block is numerically
    singular; those geometries must go through ``regularized_effective``.
    """
    if fisher.f_tt <= TOL_ABS:
        raise DegenerateTimingBlock(
            f"f_tt={fisher.f_tt} is below the degeneracy cutoff {TOL_ABS}"
        )
    raw = fisher.f_gg - fisher.f_gt**2 / fisher.f_tt
    return _clamp(raw, 0.0, fisher.f_gg)


def regularized_effective(fisher: FisherMatrix2, prior: PriorInfo) -> float:
    """Schur complement against the prior-augmented timing block,
    F_gg - F_gt²/(F_tt + I_t).  Nondecreasing in the prior; recovers
    ``schur_effective`` at I_t = 0 and F_gg as I_t → ∞."""
    total_tt = fisher.f_tt + prior.i_t_prior
    if math.isinf(total_tt):
        return fisher.f_gg
    if total_tt <= TOL_ABS:
        if abs(fisher.f_gt) > 0.0:
            raise DegenerateTimingBlock(
                "timing block and prior both vanish with a nonzero cross term"
            )
        return fisher.f_gg
    raw = fisher.f_gg - fisher.f_gt**2 / total_tt
    return _clamp(raw, 0.0, fisher.f_gg)


def correlation(fisher: FisherMatrix2) -> float:
    """Squared gravity-time correlation rho² = F_gt²/(F_gg F_tt) ∈ [0, 1]."""
    if fisher.f_gg <= TOL_ABS or fisher.f_tt <= TOL_ABS:
        raise DegenerateBlock(
            f"diagonal entries ({fisher.f_gg}, {fisher.f_tt}) too small "
            "for a correlation coefficient"
        )
    raw = fisher.f_gt**2 / (fisher.f_gg * fisher.f_tt)
    return _clamp(raw, 0.0, 1.0)


def retention(fisher: FisherMatrix2) -> float:
    """Retained fraction R = F_eff/F_gg = 1 - rho² ∈ [0, 1]."""
    if fisher.f_gg <= TOL_ABS:
        raise DegenerateBlock(f"f_gg={fisher.f_gg} carries no information to retain")
    return _clamp(schur_effective(fisher) / fisher.f_gg, 0.0, 1.0)


def crlb_variance(f_eff: float, n_repetitions: int) -> float:
    """Local Cramér-Rao bound Var(ĝ) ≥ 1/(N·F_eff) for N repetitions."""
    if f_eff <= 0.0:
        raise NonpositiveInformation(f"effective information {f_eff} <= 0")
    if n_repetitions < 1:
        raise ValueError(f"n_repetitions must be >= 1, got {n_repetitions}")
    return 1.0 / (n_repetitions * f_eff)
