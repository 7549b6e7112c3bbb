import random

import pytest

from domgame.forest import Forest, random_forest


def path_forest(n: int) -> Forest:
    return Forest(n, frozenset((i, i + 1) for i in range(n - 1)))


def star_forest(leaves: int) -> Forest:
    return Forest(leaves + 1, frozenset((0, i) for i in range(1, leaves + 1)))


def spider_forest(legs: int, length: int) -> Forest:
    """Center 0 with ``legs`` paths of ``length`` edges hanging off it."""
    edges = []
    v = 1
    for _ in range(legs):
        prev = 0
        for _ in range(length):
            edges.append((prev, v))
            prev = v
            v += 1
    return Forest(v, frozenset(edges))


def random_forests(count: int, n_max: int, seed: int, n_min: int = 2):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randint(n_min, n_max)
        components = rng.randint(1, max(1, n // 4))
        out.append(random_forest(n, components, rng.getrandbits(32)))
    return out


@pytest.fixture
def p2():
    return path_forest(2)


@pytest.fixture
def p3():
    return path_forest(3)


@pytest.fixture
def p4():
    return path_forest(4)


@pytest.fixture
def p5():
    return path_forest(5)
