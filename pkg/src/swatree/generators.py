"""Random and structured tree generators shared by tests, bench, and verify."""

import random

from .treecore import build_tree, compute_sizes


def path_tree(n, rng=None):
    return build_tree([(i, i - 1 if i > 1 else None) for i in range(1, n + 1)])


def star_tree(n, rng=None):
    return build_tree([(i, 1 if i > 1 else None) for i in range(1, n + 1)])


def caterpillar_tree(n, rng=None):
    """Spine with a pendant leaf on every other node."""
    pairs = [(1, None)]
    spine = 1
    for i in range(2, n + 1):
        if i % 2 == 0:
            pairs.append((i, spine))
            spine = i
        else:
            pairs.append((i, spine))
    return build_tree(pairs)


def random_binary_tree(n, rng=None):
    rng = rng or random.Random(0)
    pairs = [(1, None)]
    open_slots = [1, 1]  # nodes with fewer than two children
    for i in range(2, n + 1):
        j = rng.randrange(len(open_slots))
        parent = open_slots[j]
        open_slots[j] = open_slots[-1]
        open_slots.pop()
        pairs.append((i, parent))
        open_slots.extend([i, i])
    return build_tree(pairs)


def random_attachment_tree(n, rng=None):
    rng = rng or random.Random(0)
    pairs = [(1, None)] + [(i, rng.randint(1, i - 1)) for i in range(2, n + 1)]
    return build_tree(pairs)


FAMILIES = {
    "path": path_tree,
    "star": star_tree,
    "caterpillar": caterpillar_tree,
    "random-binary": random_binary_tree,
    "random-attachment": random_attachment_tree,
}


def size_weights(tree):
    """weight(u) = size(u), the canonical size-constrained max-heap assignment."""
    return compute_sizes(tree)


def random_heap_weights(tree, rng=None):
    """A random valid assignment: positive, size-bounded, nonincreasing downward."""
    rng = rng or random.Random(0)
    sizes = compute_sizes(tree)
    weights = [0] * (tree.n + 1)
    order = [tree.root]
    i = 0
    while i < len(order):
        u = order[i]
        i += 1
        cap = sizes[u] if u == tree.root else min(sizes[u], weights[tree.parent[u]])
        weights[u] = rng.randint(1, cap)
        order.extend(tree.children[u])
    return weights
