"""Three-pulse light-pulse interferometer information geometry.

The symmetric π/2-π-π/2 sequence with effective wavenumber k0 and pulse
separation T imprints the phase

    ΔΦ = -k0 g T² - φ_ctrl,        φ_ctrl = φ1 - 2φ2 + φ3,

read out through the two-port fringe P_b = ½[1 - C cos ΔΦ].

Internal readout only, at mid-fringe (|sin ΔΦ| = 1), gives a classical
Fisher matrix over (g, T) that is exactly rank one:

    f_gg = C²k0²T⁴,  f_gt = 2C²k0²gT³,  f_tt = 4C²k0²g²T².

Gravity information then exists only against prior timing knowledge and
takes the closed regularized form C²k0²T⁴/(1 + 4C²k0²g²T²ΔT²).

Full-state readout (internal and motional ports) restores a rank-two
geometry: the timing block gains the motional term 4k0²σ_v² with
σ_v² = Var(p)/m², so per atom

    f_gg = k0²T⁴,  f_gt = 2k0²gT³,  f_tt = 4k0²g²T² + 4k0²σ_v²,

the whole matrix scaling with the atom number N, and the profiled
information is N k0²T⁴ · σ_v²/(σ_v² + g²T²).
"""

from __future__ import annotations

from dataclasses import dataclass
import math

from .errors import DegenerateTimingBlock, Indeterminate, SingularWithoutPrior
from .estimation import TOL_ABS, FisherMatrix2, PriorInfo
from .kernel import KernelParams


@dataclass(frozen=True)
class KCConfig:
    """Interferometer parameters.

    t_sep is the pulse separation T; sigma_v the rms longitudinal velocity
    spread of the atomic source; phi_ctrl the combined control phase.
    """

    k0: float
    t_sep: float
    contrast: float = 1.0
    g: float = 9.81
    sigma_v: float = 0.0
    n_atoms: int = 1
    phi_ctrl: float = 0.0

    def __post_init__(self) -> None:
        if not self.k0 > 0.0:
            raise ValueError(f"k0 must be > 0, got {self.k0}")
        if not self.t_sep > 0.0:
            raise ValueError(f"pulse separation must be > 0, got {self.t_sep}")
        if not 0.0 <= self.contrast <= 1.0:
            raise ValueError(f"contrast must lie in [0,1], got {self.contrast}")
        if self.sigma_v < 0.0:
            raise ValueError(f"sigma_v must be >= 0, got {self.sigma_v}")
        if self.n_atoms < 1:
            raise ValueError(f"n_atoms must be >= 1, got {self.n_atoms}")


def delta_phi(cfg: KCConfig) -> float:
    """Interferometer phase -k0 g T² - φ_ctrl."""
    return -cfg.k0 * cfg.g * cfg.t_sep**2 - cfg.phi_ctrl


def fringe_probability(cfg: KCConfig) -> float:
    """Excited-port population P_b = ½[1 - C cos ΔΦ]."""
    return 0.5 * (1.0 - cfg.contrast * math.cos(delta_phi(cfg)))


def internal_fisher(cfg: KCConfig) -> FisherMatrix2:
    """Mid-fringe classical Fisher matrix of the internal readout over
    (g, T); exactly rank one (the fringe knows only the product gT²)."""
    amp = cfg.contrast**2 * cfg.k0**2
    return FisherMatrix2(
        f_gg=amp * cfg.t_sep**4,
        f_gt=2.0 * amp * cfg.g * cfg.t_sep**3,
        f_tt=4.0 * amp * cfg.g**2 * cfg.t_sep**2,
    )


def internal_effective_regularized(cfg: KCConfig, prior: PriorInfo) -> float:
    """Closed form C²k0²T⁴/(1 + 4C²k0²g²T²·ΔT²) for internal readout
    profiled against a timing prior of information I_t = 1/ΔT²."""
    baseline = cfg.contrast**2 * cfg.k0**2 * cfg.t_sep**4
    if cfg.g == 0.0:
        return baseline
    if prior.i_t_prior <= TOL_ABS:
        raise SingularWithoutPrior(
            "internal-only geometry is rank one; profiling at g != 0 "
            "requires prior timing information"
        )
    if math.isinf(prior.i_t_prior):
        return baseline
    penalty = (
        4.0 * cfg.contrast**2 * cfg.k0**2 * cfg.g**2 * cfg.t_sep**2
        / prior.i_t_prior
    )
    return baseline / (1.0 + penalty)


def fullstate_qfim(cfg: KCConfig) -> FisherMatrix2:
    """Full-state (internal + motional) QFIM for N atoms under ideal
    closure; determinant is positive iff sigma_v > 0."""
    k2 = cfg.k0**2
    per_atom = FisherMatrix2(
        f_gg=k2 * cfg.t_sep**4,
        f_gt=2.0 * k2 * cfg.g * cfg.t_sep**3,
        f_tt=4.0 * k2 * cfg.g**2 * cfg.t_sep**2 + 4.0 * k2 * cfg.sigma_v**2,
    )
    return per_atom.scaled(float(cfg.n_atoms))


def fullstate_effective(cfg: KCConfig) -> float:
    """Profiled full-state information N k0²T⁴ σ_v²/(σ_v² + g²T²)."""
    if cfg.sigma_v == 0.0 and cfg.g == 0.0:
        raise DegenerateTimingBlock(
            "timing block vanishes identically (sigma_v = 0 and g = 0)"
        )
    denom = cfg.sigma_v**2 + cfg.g**2 * cfg.t_sep**2
    return (
        cfg.n_atoms * cfg.k0**2 * cfg.t_sep**4 * cfg.sigma_v**2 / denom
    )


def fullstate_retention(g: float, t_sep: float, sigma_v: float) -> float:
    """Retention R = σ_v²/(σ_v² + g²T²), independent of k0 and N."""
    if sigma_v < 0.0:
        raise ValueError(f"sigma_v must be >= 0, got {sigma_v}")
    gt = g * t_sep
    if sigma_v == 0.0 and gt == 0.0:
        raise Indeterminate("retention is 0/0 when sigma_v = 0 and g·T = 0")
    return sigma_v**2 / (sigma_v**2 + gt**2)


def internal_kernel_params(cfg: KCConfig, prior: PriorInfo) -> KernelParams:
    """Structural coefficients of the prior-regularized internal record.

    The rank-one internal matrix has timing block 4C²k0²T²·g² with no
    constant part; the prior supplies c0 = I_t = 1/ΔT², after which the
    master form applies with (g_c, g_*, α0, α1) = (0, 1/(2Ck0TΔT), 0, 1),
    the pure Lorentzian class.
    """
    if prior.i_t_prior <= TOL_ABS:
        raise SingularWithoutPrior(
            "internal-only record has g_* = 0 without prior timing information"
        )
    amp = cfg.contrast**2 * cfg.k0**2
    return KernelParams(
        c0=prior.i_t_prior,
        c1=0.0,
        c2=4.0 * amp * cfg.t_sep**2,
        d0=0.0,
        d1=2.0 * amp * cfg.t_sep**3,
        f_gg=amp * cfg.t_sep**4,
        t=cfg.t_sep,
    )


def fullstate_kernel_params(cfg: KCConfig) -> KernelParams:
    """Structural coefficients of the per-atom full-state model at fixed T:
    quadratic timing block 4k0²σ_v² + 4k0²T²·g², affine cross term
    2k0²T³·g.  Maps onto the master form with (g_c, g_*, α0, α1) =
    (0, σ_v/T, 0, 1)."""
    k2 = cfg.k0**2
    return KernelParams(
        c0=4.0 * k2 * cfg.sigma_v**2,
        c1=0.0,
        c2=4.0 * k2 * cfg.t_sep**2,
        d0=0.0,
        d1=2.0 * k2 * cfg.t_sep**3,
        f_gg=k2 * cfg.t_sep**4,
        t=cfg.t_sep,
    )
