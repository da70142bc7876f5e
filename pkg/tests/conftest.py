import numpy as np
import pytest

from wallachflow.core import Metric, SpaceParams, normalize_to_sigma


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


@pytest.fixture
def params_sixth():
    return SpaceParams(1.0 / 6.0)


def random_metrics(rng, n, lo=0.1, hi=10.0):
    return rng.uniform(lo, hi, size=(n, 3))


def random_sigma_metric(rng, spread=0.2):
    return normalize_to_sigma(Metric(*np.exp(rng.uniform(-spread, spread, 3))))
