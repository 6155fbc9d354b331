"""Truncated-Fock oracle: coherent states, block dynamics, truncation police."""

import math

import numpy as np
import pytest

from gravtime.errors import TruncationTail
from gravtime.oracle.fock import FockModel, coherent_vector


def model(**kw):
    base = dict(
        kbar=0.05,
        delta=0.3,
        a_coef=1.0,
        mu=2.0,
        beta=0.10 + 0.05j,
        fock_dim=48,
        photon_max=14,
    )
    base.update(kw)
    return FockModel(**base)


class TestCoherentVector:
    def test_poisson_weights(self):
        alpha = 1.3 + 0.4j
        c = coherent_vector(40, alpha)
        lam = abs(alpha) ** 2
        for n in (0, 1, 5, 9):
            want = math.exp(-lam) * lam**n / math.factorial(n)
            assert abs(c[n]) ** 2 == pytest.approx(want, rel=1e-12)

    def test_near_unit_norm(self):
        c = coherent_vector(48, 1.5)
        assert float(np.vdot(c, c).real) == pytest.approx(1.0, abs=1e-12)

    def test_vacuum(self):
        c = coherent_vector(8, 0.0)
        assert c[0] == 1.0
        assert np.all(c[1:] == 0.0)


class TestTruncationPolice:
    def test_construction_guard(self):
        with pytest.raises(TruncationTail):
            model(fock_dim=4, beta=3.0 + 0.0j)

    def test_good_model_passes(self):
        m = model()
        assert m.truncation_tail() <= 1e-8

    def test_dynamic_tail_guard(self):
        # strong coupling walks the mechanical state up the oscillator
        # ladder until it hits the truncation ceiling
        m = model(fock_dim=8, kbar=2.0, photon_max=12, mu=1.0, beta=0.0j)
        with pytest.raises(TruncationTail):
            m.propagate_blocks(0.0, math.pi)

    def test_validation(self):
        with pytest.raises(ValueError):
            model(fock_dim=1)
        with pytest.raises(ValueError):
            model(mu=-1.0)
        with pytest.raises(ValueError):
            model(photon_max=-1)


class TestBlocks:
    def test_state_block_weights_are_poissonian(self):
        m = model()
        w = m.photon_block_weights(m.state_blocks())
        mech = float(np.vdot(m.mechanical_state, m.mechanical_state).real)
        for n in (0, 3, 7):
            want = math.exp(-m.mu) * m.mu**n / math.factorial(n) * mech
            assert w[n] == pytest.approx(want, rel=1e-12)

    def test_hamiltonian_structure(self):
        m = model(kbar=0.2, delta=0.5, a_coef=1.5)
        g = 0.7
        blocks = m.hamiltonian_blocks(g)
        x = np.diag(np.sqrt(np.arange(1, m.fock_dim)), k=1)
        x = x + x.T
        n_op = np.diag(np.arange(m.fock_dim))
        for n in (0, 2, 9):
            want = -0.5 * n * np.eye(m.fock_dim) + n_op + (1.5 * g - 0.2 * n) * x
            assert np.max(np.abs(blocks[n] - want)) <= 1e-13

    def test_coupling_blocks(self):
        m = model(a_coef=2.0)
        for coup in m.coupling_blocks():
            assert np.max(np.abs(coup - 2.0 * m._x_op)) == 0.0


class TestDynamics:
    def test_block_weights_conserved(self):
        m = model()
        before = m.photon_block_weights(m.state_blocks())
        after = m.photon_block_weights(m.propagate_blocks(0.6, 2.7))
        assert np.max(np.abs(after - before)) <= 1e-10

    def test_revival_per_block(self):
        # each block Hamiltonian is a displaced oscillator plus a constant,
        # so at t = 2π every block returns to itself up to a phase
        m = model(beta=0.2 + 0.0j)
        start = m.state_blocks()
        end = m.propagate_blocks(0.4, 2.0 * math.pi)
        for b0, b1 in zip(start, end):
            norm_sq = float(np.vdot(b0, b0).real)
            assert abs(np.vdot(b0, b1)) == pytest.approx(norm_sq, abs=1e-9)

    def test_zero_time_identity(self):
        m = model()
        end = m.propagate_blocks(0.9, 0.0)
        for b0, b1 in zip(m.state_blocks(), end):
            assert np.max(np.abs(b0 - b1)) <= 1e-12

    def test_n_steps_ignored(self):
        m = model()
        a = m.propagate_blocks(0.3, 1.1)
        b = m.propagate_blocks(0.3, 1.1, n_steps=7)
        for x, y in zip(a, b):
            assert np.array_equal(x, y)
