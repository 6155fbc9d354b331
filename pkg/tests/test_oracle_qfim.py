"""Both numerical information-matrix routes against the closed free-fall form."""

import numpy as np
import pytest

from gravtime import freefall
from gravtime.errors import QuadratureNotConverged, StepTooLarge, StepTooSmall
from gravtime.oracle.qfim import (
    _trapezoid_phases,
    generator_qfim,
    overlap,
    qfim_fd,
)


def rel_err(got, want) -> float:
    entries = [
        (got.f_gg, want.f_gg),
        (got.f_gt, want.f_gt),
        (got.f_tt, want.f_tt),
    ]
    scale = max(abs(w) for _, w in entries)
    return max(abs(a - b) / scale for a, b in entries)


class TestFiniteDifferenceRoute:
    def test_matches_closed_form(self, unit_probe, small_grid):
        got = qfim_fd(small_grid, 0.8, 1.3)
        want = freefall.qfim(unit_probe, 0.8, 1.3)
        assert rel_err(got, want) <= 1e-6

    def test_step_too_large(self, small_grid):
        with pytest.raises(StepTooLarge):
            qfim_fd(small_grid, 0.8, 1.3, step_g=0.5, step_t=0.5)

    def test_refuses_roundoff_steps(self, small_grid):
        # near machine-epsilon steps the central differences are noise;
        # the three-step sweep must refuse rather than return garbage
        with pytest.raises((StepTooLarge, StepTooSmall)):
            qfim_fd(small_grid, 0.8, 1.3, step_g=1e-13, step_t=1e-13)

    def test_overlap_carries_measure(self, small_grid):
        psi = [small_grid.initial_state]
        assert overlap(small_grid, psi, psi) == pytest.approx(1.0, abs=1e-12)


class TestGeneratorRoute:
    def test_matches_closed_form(self, unit_probe, small_grid):
        got = generator_qfim(small_grid, 0.7, 1.1, n_quadrature=2048)
        want = freefall.qfim(unit_probe, 0.7, 1.1)
        assert rel_err(got, want) <= 1e-5

    def test_rejects_tiny_quadrature(self, small_grid):
        with pytest.raises(ValueError):
            generator_qfim(small_grid, 0.7, 1.1, n_quadrature=8)

    def test_doubling_validation_fires(self, small_grid):
        # long window: 16 trapezoid nodes undersample the spectral phases
        with pytest.raises(QuadratureNotConverged):
            generator_qfim(small_grid, 0.7, 5.0, n_quadrature=16)


class TestTrapezoidPhases:
    def test_matches_exact_window(self):
        w = np.array([0.0, 1.0, 2.0])
        t = 0.7
        acc = _trapezoid_phases(w, t, 4096, hbar=1.0)
        delta = np.subtract.outer(w, w)
        with np.errstate(divide="ignore", invalid="ignore"):
            exact = (np.exp(1j * delta * t) - 1.0) / (1j * delta)
        exact[delta == 0.0] = t
        assert np.max(np.abs(acc - exact)) <= 1e-7

    def test_diagonal_is_exact_time(self):
        acc = _trapezoid_phases(np.array([0.3, 1.7]), 2.5, 64, hbar=1.0)
        assert acc[0, 0] == pytest.approx(2.5, rel=1e-14)
        assert acc[1, 1] == pytest.approx(2.5, rel=1e-14)
