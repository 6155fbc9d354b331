"""Fixture CSVs come from the real gravtime CLI at reduced resolution."""

import subprocess
import sys

import pytest


def _emit(out_path, *args):
    cmd = [sys.executable, "-m", "gravtime.cli", "figures", *args, "--out", str(out_path)]
    proc = subprocess.run(cmd, capture_output=True, text=True)
    if proc.returncode != 0:
        raise RuntimeError(
            f"fixture generation failed ({proc.returncode}): {proc.stderr}"
        )
    return out_path


@pytest.fixture(scope="session")
def data_dir(tmp_path_factory):
    root = tmp_path_factory.mktemp("csv")
    _emit(root / "fig1.csv", "fig1", "--grid-points", "11")
    _emit(
        root / "fig2.csv", "fig2",
        "--grid-points", "3", "--t-points", "6", "--t-max", "13.0",
        "--fock-dim", "32", "--photon-max", "14",
    )
    _emit(root / "fig3.csv", "fig3", "--grid-points", "5")
    return root
