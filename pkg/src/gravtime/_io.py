"""Flat-file plumbing: CSV with ``#`` metadata lines, line-delimited
JSON records, and a key = value config reader.

Floats are rendered with ``repr`` so output is bit-identical across runs
and round-trips losslessly.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Iterable, Mapping, Sequence


def _format_cell(value) -> str:
    # float() strips numpy scalar wrappers so repr stays plain
    if isinstance(value, float):
        return repr(float(value))
    return str(value)


def _quote_cell(cell: str) -> str:
    # minimal RFC-style quoting so text cells may contain commas
    if "," in cell or '"' in cell or "\n" in cell:
        return '"' + cell.replace('"', '""') + '"'
    return cell


def render_csv(
    header: Sequence[str],
    rows: Iterable[Sequence],
    metadata: Mapping[str, object] | None = None,
) -> str:
    lines = []
    if metadata:
        for key, value in metadata.items():
            lines.append(f"# {key} = {_format_cell(value)}")
    lines.append(",".join(_quote_cell(h) for h in header))
    for row in rows:
        if len(row) != len(header):
            raise ValueError(
                f"row width {len(row)} does not match header width {len(header)}"
            )
        lines.append(",".join(_quote_cell(_format_cell(cell)) for cell in row))
    return "\n".join(lines) + "\n"


def write_csv(
    path: str | Path,
    header: Sequence[str],
    rows: Iterable[Sequence],
    metadata: Mapping[str, object] | None = None,
) -> None:
    Path(path).write_text(render_csv(header, rows, metadata))


def render_records(records: Iterable[Mapping]) -> str:
    return "\n".join(json.dumps(dict(r), sort_keys=True) for r in records) + "\n"


def write_records(path: str | Path, records: Iterable[Mapping]) -> None:
    Path(path).write_text(render_records(records))


def read_config(path: str | Path) -> dict[str, str]:
    """Flat ``key = value`` file; blank lines and ``#`` comments ignored."""
    out: dict[str, str] = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        out[key.strip()] = value.strip()
    return out
