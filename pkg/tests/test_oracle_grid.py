"""Position-grid oracle: state construction, moments, split-step propagation."""

import math

import numpy as np
import pytest

from gravtime.errors import ConvergenceFailure, GridUnderResolved
from gravtime.freefall import GaussianProbe
from gravtime.oracle.grid import (
    DENSE_LIMIT,
    GridModel,
    harmonic_background,
    quartic_background,
    uniform_field,
)


class TestConstruction:
    def test_power_of_two_required(self):
        with pytest.raises(ValueError):
            GridModel(n_points=300, box_length=20.0)

    def test_defaults_to_uniform_field(self):
        m = GridModel(n_points=64, box_length=20.0, mass=2.0)
        assert np.allclose(m.potential(m.z, 1.5), 2.0 * 1.5 * m.z)

    def test_box_holds_trajectory(self, small_grid):
        # packet dropped through g_max for t_max stays inside the box
        fall = 0.5 * 1.2 * 2.0**2
        assert small_grid.box_length / 2.0 > fall
        assert small_grid.z[0] == pytest.approx(-small_grid.box_length / 2.0)

    def test_rejects_unnormalized_initial_state(self):
        m = GridModel(n_points=64, box_length=20.0)
        with pytest.raises(ValueError):
            GridModel(
                n_points=64,
                box_length=20.0,
                initial_state=2.0 * m.gaussian_state(1.0),
            )


class TestStatesAndMoments:
    def test_gaussian_norm_and_moments(self, small_grid):
        psi = small_grid.gaussian_state(sigma=1.0, z0=0.5, p0=0.8)
        assert small_grid.norm_sq(psi) == pytest.approx(1.0, abs=1e-12)
        assert small_grid.mean_z(psi) == pytest.approx(0.5, abs=1e-9)
        assert small_grid.var_z(psi) == pytest.approx(0.5, rel=1e-9)
        m1, var = small_grid.momentum_moments(psi)
        assert m1 == pytest.approx(0.8, abs=1e-9)
        assert var == pytest.approx(0.5, rel=1e-9)  # ħ²/2σ² at σ=ħ=1

    def test_momentum_tail_flags_ragged_state(self):
        m = GridModel(n_points=128, box_length=30.0)
        rough = np.ones(m.n_points, dtype=complex)
        rough[m.n_points // 2] = 40.0  # near-delta spike fills Nyquist band
        rough /= math.sqrt(m.norm_sq(rough))
        with pytest.raises(GridUnderResolved):
            m.validate_state(rough)


class TestPropagation:
    def test_norm_preserved(self, small_grid):
        psi = small_grid.propagate(1.0, 1.5)
        assert small_grid.norm_sq(psi) == pytest.approx(1.0, abs=1e-12)

    def test_ehrenfest_drop(self, small_grid):
        psi = small_grid.propagate(1.0, 1.5)
        assert small_grid.mean_z(psi) == pytest.approx(-0.5 * 1.5**2, abs=1e-8)

    def test_dispersed_gaussian_closed_form(self, small_grid):
        # free-particle dispersion of a unit Gaussian, exact profile
        t = 1.2
        grid = GridModel(
            n_points=small_grid.n_points,
            box_length=small_grid.box_length,
            initial_state=small_grid.gaussian_state(1.0),
        )
        psi = grid.propagate(0.0, t)
        tau = 1.0 + 1j * t
        exact = np.exp(-grid.z**2 / (2.0 * tau)) / np.sqrt(tau)
        exact /= math.sqrt(grid.norm_sq(exact))
        overlap = abs(grid.inner(exact, psi))
        assert 1.0 - overlap <= 1e-8

    def test_zero_time_is_identity(self, small_grid):
        psi = small_grid.propagate(3.0, 0.0)
        assert np.array_equal(psi, small_grid.initial_state)
        assert psi is not small_grid.initial_state

    def test_verify_dt_accepts_smooth_case(self, small_grid):
        psi = small_grid.propagate(1.0, 0.4, verify_dt=True)
        assert small_grid.norm_sq(psi) == pytest.approx(1.0, abs=1e-10)

    def test_verify_dt_rejects_cliff(self):
        # a hard step potential defeats the step-halving agreement check
        def cliff(z, g):
            return 50.0 * (z > 0.0)

        m = GridModel(n_points=256, box_length=40.0, potential=cliff)
        m.initial_state = m.gaussian_state(1.0)
        with pytest.raises(ConvergenceFailure):
            m.propagate(1.0, 2.0, n_steps=64, verify_dt=True)

    def test_requires_a_state(self):
        m = GridModel(n_points=64, box_length=20.0)
        with pytest.raises(ValueError):
            m.propagate(1.0, 1.0)


class TestDenseOperators:
    def test_dense_limit(self):
        m = GridModel(n_points=1024, box_length=60.0)
        with pytest.raises(ValueError):
            m.position_matrix()
        assert DENSE_LIMIT == 512

    def test_hamiltonian_is_hermitian(self):
        m = GridModel(n_points=128, box_length=30.0)
        h = m.hamiltonian_matrix(0.7)
        assert np.max(np.abs(h - h.conj().T)) <= 1e-12

    def test_kinetic_acts_spectrally(self):
        m = GridModel(n_points=128, box_length=30.0)
        psi = m.gaussian_state(1.2)
        via_matrix = m.kinetic_matrix() @ psi
        via_fft = np.fft.ifft(0.5 * m.k**2 * np.fft.fft(psi))
        assert np.max(np.abs(via_matrix - via_fft)) <= 1e-10

    def test_coupling_is_field_gradient(self):
        m = GridModel(n_points=64, box_length=20.0, mass=3.0)
        (coup,) = m.coupling_blocks()
        assert np.allclose(np.diag(coup).real, 3.0 * m.z)

    def test_background_factories(self):
        z = np.linspace(-1.0, 1.0, 5)
        assert np.allclose(harmonic_background(2.0, 3.0)(z, 9.9), 9.0 * z**2)
        assert np.allclose(quartic_background(0.5)(z, 9.9), 0.5 * z**4)
        assert np.allclose(uniform_field(2.0)(z, 3.0), 6.0 * z)


class TestSmoothSubspace:
    def test_orthonormal_and_interior(self):
        m = GridModel(n_points=256, box_length=40.0)
        q = m.smooth_subspace(n_modes=8, ell=1.5)
        assert q.shape == (256, 8)
        gram = q.conj().T @ q
        assert np.max(np.abs(gram - np.eye(8))) <= 1e-10
        # modes must not touch the box edges
        edge_weight = np.sum(np.abs(q[:8, :]) ** 2) + np.sum(np.abs(q[-8:, :]) ** 2)
        assert edge_weight <= 1e-12
