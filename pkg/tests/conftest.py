import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20260810)


def random_distribution(rng, size):
    """Strictly positive random probability vector."""
    p = rng.random(size) + 1e-3
    return p / p.sum()


def product_distribution(p, q):
    return np.outer(p, q).ravel()
