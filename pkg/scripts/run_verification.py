#!/usr/bin/env python3
"""Run the oracle verification suite and keep a JSON-record log.

Equivalent to ``gravtime verify --out <log>``; exit code 0 means every
check passed, 2 means at least one residual exceeded its tolerance or a
numerical guard fired.
"""

import argparse
import pathlib

from gravtime.cli import main as gravtime_main


def run(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--log", type=pathlib.Path, default=pathlib.Path("verification.jsonl"),
        help="JSON-record log path (default: verification.jsonl)",
    )
    parser.add_argument(
        "--fast", action="store_true", help="trim the point lists"
    )
    parser.add_argument(
        "--tol", type=float, default=None, help="oracle self-validation rtol"
    )
    args = parser.parse_args(argv)

    cli_args = ["verify", "--out", str(args.log)]
    if args.fast:
        cli_args.append("--fast")
    if args.tol is not None:
        cli_args.extend(["--tol", str(args.tol)])
    code = gravtime_main(cli_args)
    print(f"log written to {args.log}")
    return code


if __name__ == "__main__":
    raise SystemExit(run())
