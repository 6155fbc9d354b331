"""Three-pulse interferometer: rank-one internal record, full-state recovery."""

import math

import pytest
from hypothesis import given, strategies as st

from gravtime import kasevich_chu as kc
from gravtime.errors import (
    DegenerateTimingBlock,
    Indeterminate,
    SingularWithoutPrior,
)
from gravtime.estimation import (
    PriorInfo,
    regularized_effective,
    retention,
    schur_effective,
)
from gravtime.kernel import (
    axis_from_quadratic,
    fisher_from_kernel,
    normalized_coeffs,
    retention_kernel,
    u_coordinate,
)

positive = st.floats(min_value=1e-2, max_value=1e2)
gravities = st.floats(min_value=-50.0, max_value=50.0)


def cfg(**kw):
    base = dict(k0=2.0, t_sep=1.0, g=0.5)
    base.update(kw)
    return kc.KCConfig(**base)


class TestConfig:
    @pytest.mark.parametrize(
        "bad",
        [
            dict(k0=0.0),
            dict(t_sep=-1.0),
            dict(contrast=1.2),
            dict(sigma_v=-0.1),
            dict(n_atoms=0),
        ],
    )
    def test_rejects(self, bad):
        with pytest.raises(ValueError):
            cfg(**bad)


class TestFringe:
    def test_phase_and_probability(self):
        c = cfg(k0=2.0, t_sep=1.0, g=0.5, phi_ctrl=0.25)
        assert kc.delta_phi(c) == pytest.approx(-1.25, rel=1e-15)
        assert kc.fringe_probability(c) == pytest.approx(
            0.5 * (1.0 - math.cos(1.25)), rel=1e-14
        )

    def test_contrast_shrinks_fringe(self):
        # g=0 so the control phase pi puts the fringe exactly at its crest
        full = kc.fringe_probability(cfg(g=0.0, contrast=1.0, phi_ctrl=math.pi))
        dim = kc.fringe_probability(cfg(g=0.0, contrast=0.5, phi_ctrl=math.pi))
        assert full == pytest.approx(1.0, abs=1e-12)
        assert dim == pytest.approx(0.75, abs=1e-12)


class TestInternal:
    def test_golden_matrix(self):
        f = kc.internal_fisher(cfg())
        assert (f.f_gg, f.f_gt, f.f_tt) == (4.0, 4.0, 4.0)

    @given(positive, positive, gravities, st.floats(min_value=0.1, max_value=1.0))
    def test_exactly_rank_one(self, k0, t_sep, g, contrast):
        f = kc.internal_fisher(kc.KCConfig(k0=k0, t_sep=t_sep, g=g, contrast=contrast))
        assert abs(f.det) <= 1e-12 * max(f.f_gg * f.f_tt, 1.0)

    def test_profiling_needs_prior(self):
        # at g != 0 the raw Schur complement annihilates the record
        assert schur_effective(kc.internal_fisher(cfg())) == pytest.approx(
            0.0, abs=1e-12
        )
        # at g = 0 the timing block itself vanishes
        with pytest.raises(DegenerateTimingBlock):
            schur_effective(kc.internal_fisher(cfg(g=0.0)))
        with pytest.raises(SingularWithoutPrior):
            kc.internal_effective_regularized(cfg(), PriorInfo(i_t_prior=0.0))

    def test_regularized_matches_generic_path(self):
        c = cfg()
        prior = PriorInfo.from_delta_t(0.5)
        direct = kc.internal_effective_regularized(c, prior)
        generic = regularized_effective(kc.internal_fisher(c), prior)
        assert direct == pytest.approx(generic, rel=1e-12)
        assert direct == pytest.approx(2.0, rel=1e-12)

    def test_zero_g_keeps_everything(self):
        c = cfg(g=0.0)
        assert kc.internal_effective_regularized(
            c, PriorInfo(i_t_prior=0.0)
        ) == pytest.approx(kc.internal_fisher(c).f_gg)

    def test_infinite_prior_restores_baseline(self):
        c = cfg()
        out = kc.internal_effective_regularized(c, PriorInfo(i_t_prior=math.inf))
        assert out == pytest.approx(kc.internal_fisher(c).f_gg)


class TestFullState:
    def test_golden_matrix(self):
        f = kc.fullstate_qfim(cfg(k0=2.0, t_sep=1.0, g=0.5, sigma_v=0.6))
        assert (f.f_gg, f.f_gt, f.f_tt) == (4.0, 4.0, 4.0 + 4.0 * 4.0 * 0.36)

    def test_atom_number_scales_linearly(self):
        one = kc.fullstate_qfim(cfg(sigma_v=0.3, n_atoms=1))
        many = kc.fullstate_qfim(cfg(sigma_v=0.3, n_atoms=7))
        assert many.f_gg == pytest.approx(7.0 * one.f_gg, rel=1e-15)
        assert many.f_gt == pytest.approx(7.0 * one.f_gt, rel=1e-15)

    @given(positive, positive, gravities, positive, st.integers(1, 1000))
    def test_effective_closed_form(self, k0, t_sep, g, sigma_v, n):
        c = kc.KCConfig(k0=k0, t_sep=t_sep, g=g, sigma_v=sigma_v, n_atoms=n)
        want = n * k0**2 * t_sep**4 * sigma_v**2 / (sigma_v**2 + g**2 * t_sep**2)
        assert kc.fullstate_effective(c) == pytest.approx(want, rel=1e-12)
        # the explicit Schur subtraction cancels; allow roundoff at f_gg scale
        f = kc.fullstate_qfim(c)
        assert schur_effective(f) == pytest.approx(
            want, rel=1e-9, abs=1e-13 * f.f_gg
        )

    @given(positive, positive, gravities, positive)
    def test_retention_independent_of_k0(self, k0, t_sep, g, sigma_v):
        r = kc.fullstate_retention(g, t_sep, sigma_v)
        assert 0.0 < r <= 1.0
        c = kc.KCConfig(k0=k0, t_sep=t_sep, g=g, sigma_v=sigma_v, n_atoms=3)
        assert retention(kc.fullstate_qfim(c)) == pytest.approx(
            r, rel=1e-9, abs=1e-12
        )

    def test_degenerate_cases(self):
        with pytest.raises(DegenerateTimingBlock):
            kc.fullstate_effective(cfg(g=0.0, sigma_v=0.0))
        with pytest.raises(Indeterminate):
            kc.fullstate_retention(0.0, 1.0, 0.0)
        with pytest.raises(ValueError):
            kc.fullstate_retention(1.0, 1.0, -0.5)

    def test_zero_spread_loses_everything(self):
        assert kc.fullstate_retention(9.81, 1.0, 0.0) == 0.0


class TestKernelMaps:
    def test_internal_record_is_pure_lorentzian(self):
        c = cfg(contrast=0.8)
        prior = PriorInfo.from_delta_t(0.25)
        params = kc.internal_kernel_params(c, prior)
        axis = axis_from_quadratic(params)
        assert axis.g_c == 0.0
        want_gstar = 1.0 / (2.0 * 0.8 * 2.0 * 1.0 * 0.25)
        assert axis.g_star == pytest.approx(want_gstar, rel=1e-12)
        co = normalized_coeffs(params, axis)
        assert (co.alpha0, co.alpha1) == (0.0, pytest.approx(1.0, rel=1e-12))
        # kernel route reproduces the closed-form regularized profile
        r = retention_kernel(co, u_coordinate(0.7, axis))
        assert r * params.f_gg == pytest.approx(
            kc.internal_effective_regularized(cfg(contrast=0.8, g=0.7), prior),
            rel=1e-12,
        )

    def test_internal_record_requires_prior(self):
        with pytest.raises(SingularWithoutPrior):
            kc.internal_kernel_params(cfg(), PriorInfo(i_t_prior=0.0))

    @given(positive, positive, gravities, positive)
    def test_fullstate_kernel_matches_qfim(self, k0, t_sep, g, sigma_v):
        c = kc.KCConfig(k0=k0, t_sep=t_sep, g=g, sigma_v=sigma_v)
        params = kc.fullstate_kernel_params(c)
        assembled = fisher_from_kernel(params, g)
        direct = kc.fullstate_qfim(c)
        assert assembled.f_gg == pytest.approx(direct.f_gg, rel=1e-12)
        assert assembled.f_gt == pytest.approx(direct.f_gt, rel=1e-12)
        assert assembled.f_tt == pytest.approx(direct.f_tt, rel=1e-12)

    def test_fullstate_axis(self):
        c = cfg(sigma_v=0.3)
        axis = axis_from_quadratic(kc.fullstate_kernel_params(c))
        assert axis.g_c == 0.0
        assert axis.g_star == pytest.approx(0.3 / c.t_sep, rel=1e-12)
