import numpy as np
import pytest

from hydroblow import Profile, build_grid


@pytest.fixture(scope="session")
def grid257():
    return build_grid(257)


@pytest.fixture(scope="session")
def y257(grid257):
    return grid257.nodes


def profile_on(grid, fn):
    return Profile(grid, np.asarray(fn(grid.nodes), dtype=float))
