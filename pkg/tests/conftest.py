import numpy as np
import pytest

from petzmi.states import random_bipartite


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


@pytest.fixture
def qubit_pair():
    return random_bipartite(2, 2, 42)
