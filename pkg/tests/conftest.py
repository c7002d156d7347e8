import numpy as np
import pytest

from resilience_roc.empirical import TwoSampleData


@pytest.fixture
def fixture_data():
    """x = {1, 3}, y = {2, 4}: small enough for every quantity to be done by hand."""
    return TwoSampleData([1.0, 3.0], [2.0, 4.0])


@pytest.fixture
def reversed_data():
    return TwoSampleData([2.0, 4.0], [1.0, 3.0])


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_fixture(rng, ties=True, max_size=12):
    m, n = rng.integers(1, max_size + 1, size=2)
    if ties:
        x = rng.integers(0, 8, size=m).astype(float)
        y = rng.integers(0, 8, size=n).astype(float)
    else:
        x, y = rng.normal(size=m), rng.normal(0.7, 1.3, size=n)
    return TwoSampleData(x, y)
