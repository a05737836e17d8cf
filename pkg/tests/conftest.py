import random
from math import gcd

import pytest

from toric_os import ToricArrangement


@pytest.fixture
def torsion_triple():
    """Three hypertori in a 2-torus; one pair meets in three points."""
    return ToricArrangement([[3, 1], [0, 1], [1, 0]])


@pytest.fixture
def unimodular_triple():
    """Three hypertori in a 2-torus with all intersections connected."""
    return ToricArrangement([[1, 1], [0, 1], [1, 0]])


@pytest.fixture
def rank3_example():
    """Four hypertori in a 3-torus; three zero-dimensional layers."""
    return ToricArrangement([[1, 0, 0], [0, 1, 0], [1, 1, 0], [1, -1, 3]])


def random_essential_arrangement(rng: random.Random, max_dim: int = 3, max_size: int = 5):
    """Random primitive central arrangement, projected onto its span."""
    d = rng.randint(1, max_dim)
    n = rng.randint(1, max_size)
    cols = []
    for _ in range(n):
        while True:
            v = [rng.randint(-3, 3) for _ in range(d)]
            g = 0
            for x in v:
                g = gcd(g, x)
            if g:
                cols.append([x // g for x in v])
                break
    ess, _ = ToricArrangement(cols, dimension=d).essentialize()
    return ess
