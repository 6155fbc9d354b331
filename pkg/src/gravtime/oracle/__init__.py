"""Numerical oracles: grid and Fock models, two QFIM routes, operator
identity checks, and the pulse-level interferometer simulation."""

from . import fock, grid, identities, pulses, qfim
from .fock import FockModel
from .grid import GridModel
from .qfim import generator_qfim, qfim_fd

__all__ = [
    "FockModel",
    "GridModel",
    "fock",
    "generator_qfim",
    "grid",
    "identities",
    "pulses",
    "qfim",
    "qfim_fd",
]
