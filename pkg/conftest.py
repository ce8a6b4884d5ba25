import numpy as np
import pytest

from src.core.masks import LabelMap, binarize
from src.harness.fixtures import generate_fixture, named_fixture


@pytest.fixture(scope="session")
def s1_pair():
    """(auto, gt) label maps of the canonical S1 fixture"""
    return generate_fixture(named_fixture('s1'))


@pytest.fixture(scope="session")
def s1_masks(s1_pair):
    auto, gt = s1_pair
    return binarize(auto), binarize(gt)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def random_pair(rng):
    """Factory of same-sized random label-map pairs drawn from the seeded generator"""
    def make(max_side: int = 12, labels: int = 4, min_side: int = 1):
        width = int(rng.integers(min_side, max_side + 1))
        height = int(rng.integers(min_side, max_side + 1))
        a = LabelMap(rng.integers(0, labels, size=(height, width)))
        b = LabelMap(rng.integers(0, labels, size=(height, width)))
        return a, b
    return make
