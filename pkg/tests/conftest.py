import numpy as np
import pytest

import zonalab as zl


@pytest.fixture(scope="session")
def sphere3():
    return zl.SphereSpec(3)


@pytest.fixture(scope="session")
def grid144(sphere3):
    # shared high-resolution grid, exact through degree 32 products
    return zl.make_grid(sphere3, 144, kexact=32)


@pytest.fixture(scope="session")
def grid80(sphere3):
    # cheaper grid for unit tests that only touch low degrees
    return zl.make_grid(sphere3, 80, kexact=16)


@pytest.fixture()
def rng():
    return np.random.default_rng(1234)
