import random

import pytest

import ncsp

# Small named instances reused across the suite.

G1_ARCS = [(1, 2, 2), (2, 1, -5), (2, 3, 1), (3, 4, 1), (4, 1, 4), (1, 3, 10)]
G5_ARCS = [(1, 2, 1), (2, 1, -3), (3, 4, 1), (4, 3, -3), (2, 3, 1), (4, 1, 1)]

# Two strongly connected components joined by one cross arc: a special pair
# {1, 2} and the singleton {3}.
TWO_COMP_ARCS = [(1, 2, 2), (2, 1, -5), (2, 3, 1)]

# The special pairs of this one form a triangle, which is impossible for a
# nearly conservative weight function.
FOREST_TRIANGLE = [
    (1, 2, 1), (2, 1, -2),
    (2, 3, 1), (3, 2, -2),
    (3, 1, 1), (1, 3, -2),
]


@pytest.fixture
def g1():
    return ncsp.prepare(G1_ARCS, 4)


@pytest.fixture
def g5():
    return ncsp.prepare(G5_ARCS, 4)


def random_arcs(rng: random.Random, n: int, density: float, lo: int = -5, hi: int = 5):
    return [
        (u, v, rng.randint(lo, hi))
        for u in range(1, n + 1)
        for v in range(1, n + 1)
        if u != v and rng.random() < density
    ]


def random_instances(seed: int, count: int, n_range=(3, 8), densities=(0.3, 0.6)):
    """Seeded stream of (arcs, n) pairs used by the property suites."""
    rng = random.Random(seed)
    for _ in range(count):
        n = rng.randint(*n_range)
        yield random_arcs(rng, n, rng.choice(densities)), n
