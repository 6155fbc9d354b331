"""Joint gravity-time quantum estimation toolkit.

Closed-form information matrices and degradation kernels for three
sensor families (free-fall Gaussian packets, light-pulse atom
interferometers, optomechanical probes), the Schur-complement machinery
that turns a 2x2 information matrix into an effective single-parameter
bound, and numerical oracles that validate every closed form from the
Schrödinger equation up.
"""

from . import (
    errors,
    estimation,
    experiments,
    freefall,
    kasevich_chu,
    kernel,
    optomech,
)
from .estimation import FisherMatrix2, PriorInfo
from .kernel import AxisParams, KernelParams, NormalizedCoeffs

__version__ = "0.1.0"

__all__ = [
    "AxisParams",
    "FisherMatrix2",
    "KernelParams",
    "NormalizedCoeffs",
    "PriorInfo",
    "__version__",
    "errors",
    "estimation",
    "experiments",
    "freefall",
    "kasevich_chu",
    "kernel",
    "optomech",
]
