#!/usr/bin/env python3
"""Regenerate the CSV datasets behind the three figures.

Thin wrapper over ``gravtime figures``; writes one file per figure into
the chosen output directory at production resolution.  Pass extra
``gravtime figures`` flags after ``--`` to override model parameters,
e.g. ``make_figure_data.py -- --kbar 0.1 --mu 1.0``.
"""

import argparse
import pathlib
import sys

from gravtime.cli import main as gravtime_main

FIGURES = ("fig1", "fig2", "fig3")


def run(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--out-dir", type=pathlib.Path, default=pathlib.Path("data"),
        help="directory for fig1.csv, fig2.csv, fig3.csv (default: data/)",
    )
    parser.add_argument(
        "--only", choices=FIGURES, default=None,
        help="regenerate a single figure dataset",
    )
    parser.add_argument(
        "passthrough", nargs="*",
        help="extra flags handed to every 'gravtime figures' call",
    )
    args = parser.parse_args(argv)

    args.out_dir.mkdir(parents=True, exist_ok=True)
    wanted = (args.only,) if args.only else FIGURES
    for fig in wanted:
        out = args.out_dir / f"{fig}.csv"
        code = gravtime_main(
            ["figures", fig, "--out", str(out), *args.passthrough]
        )
        if code != 0:
            print(f"{fig}: gravtime exited with {code}", file=sys.stderr)
            return code
        print(f"wrote {out}")
    return 0


if __name__ == "__main__":
    raise SystemExit(run())
