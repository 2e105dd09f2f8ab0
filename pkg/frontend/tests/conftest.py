"""Dataset generation through the simulator CLI only."""

import subprocess

import pytest

from svgtools import RECIPES


@pytest.fixture(scope="session")
def dataset_dir(tmp_path_factory):
    """All eight figure datasets, produced by the simulator executable."""
    root = tmp_path_factory.mktemp("figdata")
    for figure_id, args in RECIPES.items():
        out = root / figure_id
        result = subprocess.run(
            ["zakbench", *args, "--out", str(out)],
            capture_output=True,
            text=True,
        )
        assert result.returncode == 0, f"{figure_id}: {result.stderr}"
    return root
