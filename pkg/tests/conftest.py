import random

import pytest

from incidence.poset import Preorder
from incidence.scalar import prime_field
from incidence.suite import suite

F2, F3, F5 = prime_field(2), prime_field(3), prime_field(5)

SUITE = suite()


@pytest.fixture
def S():
    return SUITE


@pytest.fixture
def rng():
    return random.Random(12345)


def random_preorder(rng, n_max=4, density=0.3):
    n = rng.randint(1, n_max)
    labels = [f"p{k}" for k in range(n)]
    rels = [(a, b) for a in labels for b in labels if a != b and rng.random() < density]
    return Preorder(labels, rels)
