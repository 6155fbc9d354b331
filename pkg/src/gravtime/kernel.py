"""Universal structural kernel of nuisance-time profiling.

For any time-independent Hamiltonian H(g) = H0 + g·(coupling), the timing
block of the (g, t) information matrix is exactly quadratic in g,

    F_tt(g) = c0 + c1 g + c2 g²,     c0 = 4 Var(A), c1 = 8 Cov(A,B),
                                     c2 = 4 Var(B),

with A = H0/ħ and B = ∂_g H/ħ evaluated in the probe state.  Completing
the square gives the axis parameters

    g_c = -c1/(2 c2),        g_*² = (c0 c2 - c1²/4)/c2²,

so 1/F_tt factors through a Lorentzian in u = (g - g_c)/g_*.  Whenever the
cross term is affine, F_gt(g) = d0 + d1 g, the retained fraction collapses
to the two-coefficient master form

    R(u) = 1 - (α0 + α1 u)²/(1 + u²),

with α0 = (d0 + d1 g_c)/(√(F_gg c2)·g_*) and α1 = d1/√(F_gg c2).
Positive semidefiniteness of the information matrix bounds
(α0 + α1 u)² ≤ 1 + u², hence R ∈ [0, 1].

This module is pure coefficient algebra; model modules supply
(c0, c1, c2, d0, d1, F_gg) at each fixed interrogation time t.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import (
    DegenerateAxis,
    DegenerateBaseline,
    DegenerateTimingSector,
    KernelOutOfRange,
)
from .estimation import CLAMP_BAND, TOL_ABS, FisherMatrix2


@dataclass(frozen=True)
class KernelParams:
    """Structural coefficients of one model at one interrogation time t.

    c0, c1, c2 describe the quadratic timing block; d0, d1 the affine
    cross term; f_gg the baseline gravity information.  All are plain
    numbers in the model's working units.
    """

    c0: float
    c1: float
    c2: float
    d0: float
    d1: float
    f_gg: float
    t: float

    def __post_init__(self) -> None:
        if self.c0 < 0.0 or self.c2 < 0.0 or self.f_gg < 0.0:
            raise ValueError(
                f"c0, c2, f_gg must be nonnegative: ({self.c0}, {self.c2}, {self.f_gg})"
            )
        disc = self.c0 * self.c2 - 0.25 * self.c1**2
        if disc < -CLAMP_BAND * max(self.c0 * self.c2, 1.0):
            raise ValueError(
                f"coefficients violate Cauchy-Schwarz: c0*c2 - c1²/4 = {disc}"
            )


@dataclass(frozen=True)
class AxisParams:
    """Vertex g_c and width g_* of the completed-square timing block.
    Only constructible in the nondegenerate regime g_* > 0."""

    g_c: float
    g_star: float

    def __post_init__(self) -> None:
        if not self.g_star > 0.0:
            raise ValueError(f"g_star must be > 0, got {self.g_star}")


@dataclass(frozen=True)
class NormalizedCoeffs:
    """Master-form coefficients (α0, α1) at interrogation time t."""

    alpha0: float
    alpha1: float
    t: float


def axis_from_quadratic(params: KernelParams) -> AxisParams:
    """Complete the square of the timing block: (g_c, g_*)."""
    if params.c2 <= TOL_ABS:
        raise DegenerateTimingSector(
            f"c2={params.c2}: timing block has no curvature in g"
        )
    disc = params.c0 * params.c2 - 0.25 * params.c1**2
    if disc / params.c2**2 <= TOL_ABS:
        raise DegenerateAxis(f"g_*² = {disc / params.c2 ** 2} is numerically zero")
    return AxisParams(
        g_c=-params.c1 / (2.0 * params.c2),
        g_star=math.sqrt(disc) / params.c2,
    )


def timing_block(params: KernelParams, g: float) -> float:
    """F_tt(g) = c0 + c1 g + c2 g²."""
    return params.c0 + params.c1 * g + params.c2 * g**2


def cross_term(params: KernelParams, g: float) -> float:
    """F_gt(g) = d0 + d1 g."""
    return params.d0 + params.d1 * g


def u_coordinate(g: float, axis: AxisParams) -> float:
    """Normalized coordinate u = (g - g_c)/g_*."""
    return (g - axis.g_c) / axis.g_star


def normalized_coeffs(params: KernelParams, axis: AxisParams) -> NormalizedCoeffs:
    """Reduce the affine cross term to the dimensionless pair (α0, α1)."""
    if params.f_gg <= TOL_ABS:
        raise DegenerateBaseline(f"f_gg={params.f_gg} has no baseline information")
    if params.c2 <= TOL_ABS:
        raise DegenerateTimingSector(
            f"c2={params.c2}: timing block has no curvature in g"
        )
    root = math.sqrt(params.f_gg * params.c2)
    return NormalizedCoeffs(
        alpha0=(params.d0 + params.d1 * axis.g_c) / (root * axis.g_star),
        alpha1=params.d1 / root,
        t=params.t,
    )


def retention_kernel(coeffs: NormalizedCoeffs, u: float) -> float:
    """Master retention form R(u) = 1 - (α0 + α1 u)²/(1 + u²).

    Values inside the 1e-9 rounding band around [0, 1] are clamped;
    anything further out means the coefficients cannot come from a
    positive-semidefinite information matrix and is a hard error.
    """
    raw = 1.0 - (coeffs.alpha0 + coeffs.alpha1 * u) ** 2 / (1.0 + u**2)
    if raw < -CLAMP_BAND or raw > 1.0 + CLAMP_BAND:
        raise KernelOutOfRange(
            f"retention {raw} at u={u} violates the Cauchy-Schwarz bound"
        )
    return min(max(raw, 0.0), 1.0)


def fisher_from_kernel(params: KernelParams, g: float) -> FisherMatrix2:
    """Assemble the full 2x2 matrix (f_gg, cross_term, timing_block) at g."""
    return FisherMatrix2(
        f_gg=params.f_gg,
        f_gt=cross_term(params, g),
        f_tt=timing_block(params, g),
    )
