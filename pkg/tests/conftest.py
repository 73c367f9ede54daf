import numpy as np
import pytest

from ctrlu.linalg import haar_unitary


@pytest.fixture
def rng():
    return np.random.default_rng(20240521)


@pytest.fixture(scope="session")
def haar_1000():
    rng = np.random.default_rng(1)
    return [haar_unitary(rng) for _ in range(1000)]
