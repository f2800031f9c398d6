import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(271828)


def max_abs_diff(a, b) -> float:
    return float(np.max(np.abs(np.asarray(a) - np.asarray(b))))
