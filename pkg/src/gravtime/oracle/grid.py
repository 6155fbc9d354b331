"""Position-grid model: split-step spectral propagation and dense
operators for one-dimensional Hamiltonians H = p²/2m + V(z; g).

The grid is periodic with spectral kinetic action; boxes are auto-sized
from the analytic ballistic spread law so the wavepacket stays at least
``margin`` standard deviations away from the edges over the whole
trajectory.  States are stored as complex amplitude vectors normalized
under the dz-weighted inner product.

Dense Heisenberg-picture operators (for the operator-level identity
checks) are only formed for n_points <= 512; state-level work runs on
larger grids.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from ..errors import ConvergenceFailure, GridUnderResolved
from ..freefall import GaussianProbe

# dense operator work is O(n³); refuse beyond this size
DENSE_LIMIT = 512

# fraction of the Nyquist momentum that must stay unoccupied
NYQUIST_HEADROOM = 0.85

MOMENTUM_TAIL_TOL = 1e-10
NORM_TOL = 1e-12


def uniform_field(mass: float) -> Callable[[np.ndarray, float], np.ndarray]:
    """Potential factory V(z; g) = m g z."""

    def v(z: np.ndarray, g: float) -> np.ndarray:
        return mass * g * z

    return v


def harmonic_background(mass: float, omega: float) -> Callable[[np.ndarray, float], np.ndarray]:
    """g-independent harmonic background V(z) = ½ m ω² z²."""

    def v(z: np.ndarray, g: float) -> np.ndarray:
        return 0.5 * mass * omega**2 * z**2

    return v


def quartic_background(lam: float) -> Callable[[np.ndarray, float], np.ndarray]:
    """g-independent anharmonic background V(z) = λ z⁴ (negative control:
    breaks the weak-commutator condition)."""

    def v(z: np.ndarray, g: float) -> np.ndarray:
        return lam * z**4

    return v


@dataclass
class GridModel:
    """Discretized 1D sensor: grid geometry, Hamiltonian, initial state."""

    n_points: int
    box_length: float
    mass: float = 1.0
    hbar: float = 1.0
    potential: Callable[[np.ndarray, float], np.ndarray] | None = None
    initial_state: np.ndarray = field(default=None, repr=False)  # type: ignore[assignment]

    def __post_init__(self) -> None:
        if self.n_points & (self.n_points - 1) != 0:
            raise ValueError(f"n_points must be a power of two, got {self.n_points}")
        if self.potential is None:
            self.potential = uniform_field(self.mass)
        self.dz = self.box_length / self.n_points
        self.z = (np.arange(self.n_points) - self.n_points // 2) * self.dz
        self.k = 2.0 * np.pi * np.fft.fftfreq(self.n_points, d=self.dz)
        if self.initial_state is not None:
            self.validate_state(self.initial_state)

    # -- construction helpers ---------------------------------------------

    @classmethod
    def for_free_fall(
        cls,
        probe: GaussianProbe,
        g_max: float,
        t_max: float,
        n_points: int = 1024,
        margin: float = 8.0,
    ) -> "GridModel":
        """Box sized to hold the falling, spreading packet out to t_max at
        accelerations up to |g_max|, with ``margin`` spread-widths spare."""
        fall = 0.5 * abs(g_max) * t_max**2
        half = fall + margin * probe.spread_std(t_max) + 2.0 * probe.sigma
        model = cls(
            n_points=n_points,
            box_length=2.0 * half,
            mass=probe.mass,
            hbar=probe.hbar,
            potential=uniform_field(probe.mass),
        )
        model.initial_state = model.gaussian_state(sigma=probe.sigma)
        model.validate_state(model.initial_state)
        return model

    def gaussian_state(
        self, sigma: float, z0: float = 0.0, p0: float = 0.0
    ) -> np.ndarray:
        """Minimum-uncertainty packet ψ ∝ exp(-(z-z0)²/2σ² + i p0 z/ħ)."""
        psi = np.exp(
            -((self.z - z0) ** 2) / (2.0 * sigma**2)
            + 1j * p0 * self.z / self.hbar
        ).astype(complex)
        return psi / np.sqrt(self.norm_sq(psi))

    # -- inner products and moments ----------------------------------------

    def norm_sq(self, psi: np.ndarray) -> float:
        return float(np.vdot(psi, psi).real * self.dz)

    def inner(self, a: np.ndarray, b: np.ndarray) -> complex:
        return complex(np.vdot(a, b) * self.dz)

    def mean_z(self, psi: np.ndarray) -> float:
        return float(np.sum(np.abs(psi) ** 2 * self.z).real * self.dz)

    def var_z(self, psi: np.ndarray) -> float:
        m1 = self.mean_z(psi)
        m2 = float(np.sum(np.abs(psi) ** 2 * self.z**2).real * self.dz)
        return m2 - m1**2

    def momentum_moments(self, psi: np.ndarray) -> tuple[float, float]:
        """(mean, variance) of p̂ = ħk via the spectral representation."""
        phi = np.fft.fft(psi)
        w = np.abs(phi) ** 2
        w /= w.sum()
        p = self.hbar * self.k
        m1 = float(np.sum(w * p))
        return m1, float(np.sum(w * p**2) - m1**2)

    def momentum_tail(self, psi: np.ndarray, fraction: float = NYQUIST_HEADROOM) -> float:
        """Probability weight beyond ``fraction`` of the Nyquist momentum."""
        phi = np.fft.fft(psi)
        w = np.abs(phi) ** 2
        w /= w.sum()
        k_nyq = np.pi / self.dz
        return float(w[np.abs(self.k) > fraction * k_nyq].sum())

    def validate_state(self, psi: np.ndarray) -> None:
        if abs(self.norm_sq(psi) - 1.0) > 1e-9:
            raise ValueError("state is not normalized")
        tail = self.momentum_tail(psi)
        if tail > MOMENTUM_TAIL_TOL:
            raise GridUnderResolved(
                f"momentum tail {tail:.3e} beyond {NYQUIST_HEADROOM:.0%} of "
                f"Nyquist exceeds {MOMENTUM_TAIL_TOL}"
            )

    # -- propagation ---------------------------------------------------------

    def default_steps(self, t: float) -> int:
        """Step count keeping the Strang splitting error negligible for
        smooth potentials (dt ~ 1e-3 in natural units)."""
        return max(128, int(np.ceil(abs(t) / 1e-3)))

    def propagate(
        self,
        g: float,
        t: float,
        n_steps: int | None = None,
        psi0: np.ndarray | None = None,
        verify_dt: bool = False,
    ) -> np.ndarray:
        """Evolve under H(g) for time t with symmetric (potential-kinetic-
        potential) split-step spectral stepping.

        With verify_dt=True the propagation is repeated at half the step
        and the two final states must agree in fidelity to 1e-10.
        """
        psi = self.initial_state if psi0 is None else psi0
        if psi is None:
            raise ValueError("no state to evolve: set initial_state or pass psi0")
        if t == 0.0:
            return psi.copy()
        n = n_steps if n_steps is not None else self.default_steps(t)
        out = self._run_split(psi, g, t, n)
        if verify_dt:
            fine = self._run_split(psi, g, t, 2 * n)
            infidelity = 1.0 - abs(self.inner(fine, out))
            if infidelity > 1e-10:
                raise ConvergenceFailure(
                    f"halving dt changes final-state fidelity by {infidelity:.3e}"
                )
            return fine
        return out

    def _run_split(self, psi: np.ndarray, g: float, t: float, n_steps: int) -> np.ndarray:
        dt = t / n_steps
        half_v = np.exp(-0.5j * self.potential(self.z, g) * dt / self.hbar)
        kin = np.exp(-0.5j * self.hbar * self.k**2 * dt / self.mass)
        out = psi.astype(complex).copy()
        for _ in range(n_steps):
            out = half_v * out
            out = np.fft.ifft(kin * np.fft.fft(out))
            out = half_v * out
        return out

    # -- dense operators (n_points <= 512) -----------------------------------

    def _check_dense(self) -> None:
        if self.n_points > DENSE_LIMIT:
            raise ValueError(
                f"dense operators limited to n_points <= {DENSE_LIMIT}, "
                f"got {self.n_points}"
            )

    def position_matrix(self) -> np.ndarray:
        self._check_dense()
        return np.diag(self.z).astype(complex)

    def kinetic_matrix(self) -> np.ndarray:
        """Dense spectral kinetic operator F⁻¹ diag(ħ²k²/2m) F."""
        self._check_dense()
        eye = np.eye(self.n_points, dtype=complex)
        f = np.fft.fft(eye, axis=0)
        diag = (self.hbar**2 * self.k**2 / (2.0 * self.mass))[:, None]
        return np.fft.ifft(diag * f, axis=0)

    def hamiltonian_matrix(self, g: float) -> np.ndarray:
        return self.kinetic_matrix() + np.diag(self.potential(self.z, g)).astype(complex)

    # -- block protocol used by the QFIM routes -------------------------------

    @property
    def weight(self) -> float:
        """Weight of the discrete inner product."""
        return self.dz

    def hamiltonian_blocks(self, g: float) -> list[np.ndarray]:
        return [self.hamiltonian_matrix(g)]

    def coupling_blocks(self) -> list[np.ndarray]:
        """∂H/∂g as dense blocks; only meaningful for the uniform field."""
        dg = 1e-3
        dv = (self.potential(self.z, dg) - self.potential(self.z, -dg)) / (2.0 * dg)
        return [np.diag(dv).astype(complex)]

    def state_blocks(self) -> list[np.ndarray]:
        return [self.initial_state]

    def propagate_blocks(
        self, g: float, t: float, n_steps: int | None = None
    ) -> list[np.ndarray]:
        return [self.propagate(g, t, n_steps=n_steps)]

    def smooth_subspace(
        self, n_modes: int, ell: float = 1.0, center: float = 0.0
    ) -> np.ndarray:
        """Orthonormal basis (n_points × n_modes) of low harmonic-oscillator
        modes of length scale ell: smooth, band-limited, interior-supported
        test functions for projecting operator identities away from grid
        edge and Nyquist artifacts."""
        x = (self.z - center) / ell
        basis = np.zeros((self.n_points, n_modes))
        basis[:, 0] = np.pi**-0.25 / np.sqrt(ell) * np.exp(-0.5 * x**2)
        if n_modes > 1:
            basis[:, 1] = np.sqrt(2.0) * x * basis[:, 0]
        for n in range(1, n_modes - 1):
            basis[:, n + 1] = (
                np.sqrt(2.0 / (n + 1)) * x * basis[:, n]
                - np.sqrt(n / (n + 1.0)) * basis[:, n - 1]
            )
        basis *= np.sqrt(self.dz)
        q, _ = np.linalg.qr(basis)
        return q.astype(complex)
