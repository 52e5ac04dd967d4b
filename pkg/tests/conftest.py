import random

import pytest

from swatree import build_tree, compute_sizes

# 16-node worked example used throughout: weights equal subtree sizes, the
# main heavy path carries nodes 1..6 with weights 1,2,5,6,9,16 and encodes
# to "1010111010111011111110".
GOLDEN_EDGES = [
    (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, None),
    (7, 5), (8, 5), (9, 3), (10, 3),
    (11, 6), (12, 11), (13, 11),
    (14, 6), (15, 14), (16, 14),
]
GOLDEN_ENCODING = "1010111010111011111110"


@pytest.fixture(scope="session")
def golden_tree():
    tree = build_tree(GOLDEN_EDGES)
    weights = compute_sizes(tree)
    return tree, weights


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)


def random_text(rng, max_len=64, sigma=2):
    n = rng.randint(1, max_len)
    return bytes(rng.randrange(sigma) + 97 for _ in range(n))
