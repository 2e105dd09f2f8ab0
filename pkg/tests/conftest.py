"""Shared fixtures."""

import pytest

from runcache import _pair_run


@pytest.fixture(scope="session")
def pair_run():
    """Cached (params, trace_A, trace_B, PhaseTrace) at chosen settings."""
    return _pair_run
