import numpy as np
import pytest

from toda_stability.lattice import LatticeWindow


@pytest.fixture
def window():
    return LatticeWindow(-40, 40, 0.5)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
