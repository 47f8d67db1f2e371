from __future__ import annotations

import numpy as np
import pytest

from fouropt.model import CostMatrix


def make_random_matrix(n: int, seed: int, max_cost: int = 100) -> CostMatrix:
    rng = np.random.default_rng(seed)
    upper = np.triu(rng.integers(1, max_cost + 1, size=(n, n)), k=1)
    return CostMatrix.from_array(upper + upper.T)


@pytest.fixture
def random_matrix():
    return make_random_matrix


@pytest.fixture
def uniform8() -> CostMatrix:
    return CostMatrix.uniform(8)
