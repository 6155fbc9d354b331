"""CSV input: ``# key = value`` metadata lines, a header, quoted cells."""

from __future__ import annotations

import csv
import pathlib
from dataclasses import dataclass

import numpy as np

from .errors import MissingInput, SchemaMismatch


@dataclass(frozen=True)
class Table:
    """One parsed dataset: metadata, header, and raw string cells."""

    path: pathlib.Path
    meta: dict[str, str]
    header: tuple[str, ...]
    rows: tuple[tuple[str, ...], ...]

    def column(self, name: str) -> list[str]:
        try:
            idx = self.header.index(name)
        except ValueError:
            raise SchemaMismatch(
                f"{self.path}: no column {name!r} in header {self.header}"
            ) from None
        return [row[idx] for row in self.rows]

    def floats(self, name: str) -> np.ndarray:
        cells = self.column(name)
        try:
            return np.array([float(c) for c in cells], dtype=float)
        except ValueError as exc:
            raise SchemaMismatch(
                f"{self.path}: column {name!r} is not numeric ({exc})"
            ) from None


def read_table(path: str | pathlib.Path) -> Table:
    path = pathlib.Path(path)
    if not path.is_file():
        raise MissingInput(f"input CSV not found: {path}")
    meta: dict[str, str] = {}
    data_lines: list[str] = []
    for raw in path.read_text().splitlines():
        if not raw.strip():
            continue
        if raw.lstrip().startswith("#"):
            key, sep, value = raw.lstrip()[1:].partition("=")
            if sep:
                meta[key.strip()] = value.strip()
            continue
        data_lines.append(raw)
    if not data_lines:
        raise SchemaMismatch(f"{path}: no header line")
    parsed = list(csv.reader(data_lines))
    header = tuple(parsed[0])
    rows = []
    for offset, cells in enumerate(parsed[1:], start=2):
        if len(cells) != len(header):
            raise SchemaMismatch(
                f"{path}: data line {offset} has {len(cells)} cells, "
                f"header has {len(header)}"
            )
        rows.append(tuple(cells))
    return Table(path=path, meta=meta, header=header, rows=tuple(rows))


def require_header(table: Table, expected: tuple[str, ...]) -> None:
    if table.header != expected:
        raise SchemaMismatch(
            f"{table.path}: header {table.header} does not match the "
            f"documented schema {expected}"
        )


def require_meta(table: Table, key: str) -> str:
    if key not in table.meta:
        raise SchemaMismatch(f"{table.path}: metadata key {key!r} missing")
    return table.meta[key]
