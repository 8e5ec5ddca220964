import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from dirac_decoherence.grid import Grid1D, make_gaussian_packet


@pytest.fixture(scope="session")
def grid():
    return Grid1D(20.0, 1024)


@pytest.fixture(scope="session")
def equal_packet(grid):
    """Unit-width Gaussian in an equal chirality superposition at the origin."""
    return make_gaussian_packet(grid, 0.0, 1.0, (1.0, 1.0))
