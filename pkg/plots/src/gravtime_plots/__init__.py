"""Figure renderer for the gravtime CLI's CSV datasets.

Read-only over the CSV files: nothing here recomputes physics.  The
input schema is the one documented by ``gravtime figures``.
"""

from .errors import MissingInput, PlotsError, SchemaMismatch
from .figures import FigureSpec, build_figure, render
from .loader import Table, read_table

__all__ = [
    "FigureSpec",
    "MissingInput",
    "PlotsError",
    "SchemaMismatch",
    "Table",
    "build_figure",
    "read_table",
    "render",
]
