"""Two independent numerical routes to the (g, t) information matrix.

Both operate on any model exposing the block protocol
(``hamiltonian_blocks``, ``coupling_blocks``, ``state_blocks``,
``propagate_blocks``, ``weight``, ``hbar``):

* ``qfim_fd``: overlap form F_ij = 4 Re[⟨∂iψ|∂jψ⟩ − ⟨∂iψ|ψ⟩⟨ψ|∂jψ⟩]
  with central-difference state derivatives, run as an automated
  Richardson sweep (steps h and h/2 plus the extrapolant) so the step
  size is validated rather than trusted.  The form is invariant under
  smooth parameter-dependent phases, so propagator phase conventions
  drop out.

* ``generator_qfim``: covariance form from the local generators:
  H_t = H(g)/ħ and the Hadamard-Duhamel integral
  H_g = (1/ħ)∫₀ᵗ (∂_g H)_H(s) ds, evaluated by trapezoidal quadrature of
  the Heisenberg-evolved coupling in the eigenbasis of each block.
"""

from __future__ import annotations

import numpy as np

from ..errors import QuadratureNotConverged, StepTooLarge, StepTooSmall
from ..estimation import FisherMatrix2

RICHARDSON_TOL = 1e-6

Blocks = list[np.ndarray]


def overlap(model, a: Blocks, b: Blocks) -> complex:
    return sum(complex(np.vdot(x, y)) for x, y in zip(a, b)) * model.weight


def _fisher_from_derivatives(model, psi: Blocks, dg: Blocks, dt: Blocks):
    def entry(di: Blocks, dj: Blocks) -> float:
        direct = overlap(model, di, dj)
        proj = overlap(model, di, psi) * overlap(model, psi, dj)
        return 4.0 * (direct - proj).real

    return entry(dg, dg), entry(dg, dt), entry(dt, dt)


def _central(model, g, t, hg, ht, n_steps):
    """2nd-order central-difference derivative blocks at steps (hg, ht)."""
    def diff(plus: Blocks, minus: Blocks, h: float) -> Blocks:
        return [(p - m) / (2.0 * h) for p, m in zip(plus, minus)]

    dg = diff(
        model.propagate_blocks(g + hg, t, n_steps=n_steps),
        model.propagate_blocks(g - hg, t, n_steps=n_steps),
        hg,
    )
    dt = diff(
        model.propagate_blocks(g, t + ht, n_steps=n_steps),
        model.propagate_blocks(g, t - ht, n_steps=n_steps),
        ht,
    )
    return dg, dt


def qfim_fd(
    model,
    g: float,
    t: float,
    step_g: float | None = None,
    step_t: float | None = None,
    rtol: float = RICHARDSON_TOL,
) -> FisherMatrix2:
    """Finite-difference information matrix with step validation.

    Derivatives are computed at steps h and h/2 and Richardson-combined
    into a 4th-order stencil.  StepTooLarge: the extrapolant still moves
    by more than ``rtol`` relative to the h/2 entries (truncation error
    not yet in the asymptotic regime).  StepTooSmall: shrinking the step
    grows the spread (roundoff plateau).
    """
    # fixed default: h² truncation of the h/2 stencil lands under 4e-7,
    # inside rtol yet far above the ~1e-13 roundoff floor of the overlaps
    hg = step_g if step_g is not None else 5e-4
    ht = step_t if step_t is not None else 5e-4
    # one step count for every stencil point so states are smooth in t
    n_steps = None
    if hasattr(model, "default_steps"):
        n_steps = model.default_steps(t + ht)

    psi = model.propagate_blocks(g, t, n_steps=n_steps)
    dg_h, dt_h = _central(model, g, t, hg, ht, n_steps)
    dg_h2, dt_h2 = _central(model, g, t, hg / 2.0, ht / 2.0, n_steps)

    def richardson(fine: Blocks, coarse: Blocks) -> Blocks:
        return [(4.0 * f - c) / 3.0 for f, c in zip(fine, coarse)]

    coarse = _fisher_from_derivatives(model, psi, dg_h, dt_h)
    fine = _fisher_from_derivatives(model, psi, dg_h2, dt_h2)
    best = _fisher_from_derivatives(
        model, psi, richardson(dg_h2, dg_h), richardson(dt_h2, dt_h)
    )

    scale = max(abs(x) for x in best) or 1.0
    err_coarse = max(abs(c - b) for c, b in zip(coarse, best))
    err_fine = max(abs(f - b) for f, b in zip(fine, best))
    if err_fine > rtol * scale:
        if err_fine >= err_coarse:
            # shrinking the step did not help: the sweep sits on roundoff
            raise StepTooSmall(
                "three-step sweep does not contract "
                f"({err_coarse / scale:.3e} -> {err_fine / scale:.3e}) "
                f"at steps (hg={hg}, ht={ht})"
            )
        raise StepTooLarge(
            f"Richardson residual {err_fine / scale:.3e} exceeds {rtol} "
            f"at steps (hg={hg}, ht={ht})"
        )
    return FisherMatrix2(f_gg=best[0], f_gt=best[1], f_tt=best[2])


def _trapezoid_phases(w: np.ndarray, t: float, n: int, hbar: float) -> np.ndarray:
    """Trapezoid approximation of ∫₀ᵗ exp(i(w_j-w_k)s/ħ) ds, the phase
    matrix that turns eigenbasis coupling entries into the time-integrated
    Heisenberg operator."""
    delta = np.subtract.outer(w, w) / hbar
    h = t / n
    step = np.exp(1j * delta * h)
    power = np.ones_like(step)
    acc = 0.5 * power.copy()
    for _ in range(1, n):
        power = power * step
        acc += power
    acc += 0.5 * power * step
    return acc * h


def generator_qfim(
    model,
    g: float,
    t: float,
    n_quadrature: int = 512,
    rtol: float = 1e-6,
) -> FisherMatrix2:
    """Generator-covariance information matrix.

    Builds H_g = (1/ħ)∫(∂_g H)_H(s) ds per block in the eigenbasis of
    H(g) (the quadrature then only touches scalar phase factors) and
    returns 4× the symmetrized covariances of (H_g, H_t) in the initial
    state.  The quadrature count is validated by doubling.
    """
    if n_quadrature < 16:
        raise ValueError(f"n_quadrature must be >= 16, got {n_quadrature}")
    hbar = model.hbar

    prep = []
    for h_blk, q_blk, psi_blk in zip(
        model.hamiltonian_blocks(g), model.coupling_blocks(), model.state_blocks()
    ):
        w, v = np.linalg.eigh(h_blk)
        prep.append((w, v.conj().T @ q_blk @ v, v.conj().T @ psi_blk))

    def entries(n: int) -> tuple[float, float, float]:
        mean_g = mean_t = 0.0
        m_gg = m_gt = m_tt = 0.0
        for w, q_e, psi_e in prep:
            phases = _trapezoid_phases(w, t, n, hbar)
            a_g = (q_e * phases) @ psi_e / hbar
            a_t = w * psi_e / hbar
            wgt = model.weight
            mean_g += float((psi_e.conj() @ a_g).real) * wgt
            mean_t += float((psi_e.conj() @ a_t).real) * wgt
            m_gg += float((a_g.conj() @ a_g).real) * wgt
            m_gt += float((a_g.conj() @ a_t).real) * wgt
            m_tt += float((a_t.conj() @ a_t).real) * wgt
        return (
            4.0 * (m_gg - mean_g**2),
            4.0 * (m_gt - mean_g * mean_t),
            4.0 * (m_tt - mean_t**2),
        )

    coarse = entries(n_quadrature)
    fine = entries(2 * n_quadrature)
    scale = max(abs(x) for x in fine) or 1.0
    drift = max(abs(f - c) for f, c in zip(fine, coarse))
    if drift > rtol * scale:
        raise QuadratureNotConverged(
            f"doubling n_quadrature moves entries by {drift / scale:.3e} "
            f"relative (> {rtol})"
        )
    return FisherMatrix2(f_gg=fine[0], f_gt=fine[1], f_tt=fine[2])
