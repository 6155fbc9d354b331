"""Command line: render one figure from its CSV dataset."""

from __future__ import annotations

import argparse
import pathlib
import sys

from .errors import PlotsError
from .figures import FigureSpec, render


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gravtime-plots",
        description="render a gravtime figure dataset to an image file",
    )
    parser.add_argument("figure", choices=("fig1", "fig2", "fig3"))
    parser.add_argument("input_csv", type=pathlib.Path)
    parser.add_argument(
        "--out", type=pathlib.Path, default=None,
        help="image path; extension picks the format (default: <figure>.png)",
    )
    parser.add_argument("--title", default=None)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    spec = FigureSpec(
        figure_id=int(args.figure[-1]),
        input_csv=args.input_csv,
        output_path=args.out or pathlib.Path(f"{args.figure}.png"),
        title=args.title,
    )
    try:
        written = render(spec)
    except PlotsError as exc:
        print(f"error [{type(exc).__name__}]: {exc}", file=sys.stderr)
        return 1
    print(written)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
