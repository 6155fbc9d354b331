import numpy as np
import pytest

from gravtime import freefall, optomech
from gravtime.oracle.grid import GridModel


@pytest.fixture(scope="session")
def unit_probe() -> freefall.GaussianProbe:
    return freefall.GaussianProbe(sigma=1.0)


@pytest.fixture(scope="session")
def small_grid(unit_probe) -> GridModel:
    # 256 points keeps dense operator work cheap for oracle tests
    return GridModel.for_free_fall(unit_probe, g_max=1.2, t_max=2.0, n_points=256)


@pytest.fixture(scope="session")
def opto_cfg() -> optomech.OptoConfig:
    return optomech.OptoConfig(
        kbar=0.05, mu=2.0, beta_r=0.10, beta_i=0.05, delta=0.3,
        a_coef=1.0, fock_dim=48, photon_max=14,
    )


@pytest.fixture(scope="session")
def rng() -> np.random.Generator:
    return np.random.default_rng(20260825)
