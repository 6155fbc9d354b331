"""Operator identities that license the closed-form kernel machinery."""

import math

import pytest

from gravtime.oracle.fock import FockModel
from gravtime.oracle.grid import (
    GridModel,
    harmonic_background,
    quartic_background,
)
from gravtime.oracle.identities import (
    affine_shift_check,
    bch_factorization_check,
    commutator_report,
    commutator_scalarity,
)


def bare_grid(potential=None):
    return GridModel(n_points=256, box_length=30.0, potential=potential)


def small_fock():
    return FockModel(
        kbar=0.05,
        delta=0.3,
        a_coef=1.0,
        mu=2.0,
        beta=0.10 + 0.05j,
        fock_dim=48,
        photon_max=14,
    )


class TestWeakCommutator:
    def test_free_particle_scalar(self):
        residual, scalar = commutator_report(bare_grid(), 0.3, 1.1, n_modes=24)
        assert residual <= 1e-8
        # [ẑ0(u), ẑ0(v)] = iħ(v-u)/m for a free particle
        assert scalar == pytest.approx(0.8j, abs=1e-8)

    def test_equal_times_trivial(self):
        assert commutator_report(bare_grid(), 0.7, 0.7) == (0.0, 0.0j)

    def test_harmonic_background_scalar(self):
        m = bare_grid(potential=harmonic_background(1.0, 1.0))
        residual, scalar = commutator_report(m, 0.3, 1.1, n_modes=24)
        assert residual <= 1e-8
        # iħ sin(ω(v-u))/mω at ω = 1
        assert scalar == pytest.approx(1j * math.sin(0.8), abs=1e-8)

    def test_quartic_negative_control(self):
        m = bare_grid(potential=quartic_background(0.2))
        assert commutator_scalarity(m, 0.3, 1.1, n_modes=24) >= 1e-2

    def test_fock_blocks_share_oscillator_scalar(self):
        residual, scalar = commutator_report(small_fock(), 0.4, 1.5)
        assert residual <= 1e-8
        assert scalar == pytest.approx(2j * math.sin(1.1), abs=1e-8)


class TestAffineShift:
    # displacements past ~1.2 lean on the 24-mode subspace edge
    @pytest.mark.parametrize("s", [0.5, 0.9, 1.2])
    def test_free_fall_shift(self, s):
        report = affine_shift_check(bare_grid(), g=0.7, s=s, n_modes=24)
        assert report.residual <= 1e-8
        assert report.f_value == pytest.approx(-0.5 * s**2, abs=1e-8)

    def test_zero_coupling_short_circuit(self):
        report = affine_shift_check(bare_grid(), g=0.0, s=1.0)
        assert report == affine_shift_check(bare_grid(), 0.0, 5.0)
        assert report.residual == 0.0

    def test_fock_shift(self):
        s = 1.3
        report = affine_shift_check(small_fock(), g=0.5, s=s)
        assert report.residual <= 1e-8
        # displaced-oscillator response -2A(1 - cos s) per unit g
        assert report.f_value == pytest.approx(
            -2.0 * (1.0 - math.cos(s)), abs=1e-8
        )

    def test_uncoupled_background_reports_zero_shift(self):
        # the quartic factory carries no g term, so the Heisenberg
        # positions at g and 0 coincide and the shift must read as zero
        m = bare_grid(potential=quartic_background(0.2))
        report = affine_shift_check(m, g=0.7, s=1.0, n_modes=24)
        assert report.f_value == pytest.approx(0.0, abs=1e-10)


class TestPropagatorFactorization:
    def test_scalar_phase_closes_interference(self, small_grid):
        assert bch_factorization_check(small_grid, g=1.0, t=1.0) <= 1e-8

    def test_wrong_scalar_phase_is_visible(self, small_grid):
        off = bch_factorization_check(
            small_grid, g=1.0, t=1.0, phase_coeff=1.0 / 11.0
        )
        assert off >= 1e-3
        # deficit is the pure phase error g²mt³|1/12 - 1/11|/ħ
        assert off == pytest.approx(abs(1.0 / 12.0 - 1.0 / 11.0), rel=5e-2)
