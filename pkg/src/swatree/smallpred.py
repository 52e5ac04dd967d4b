"""Predecessor/successor search over small sets of positive integer keys.

These sets play the role of per-leaf fusion trees: one entry per
heavy-path top node on a root-to-leaf path, so their size is
logarithmic in the tree size. A flat sorted array with binary search
meets the functional contract; the constant-factor behaviour is checked
empirically in the benchmark suite rather than structurally.
"""

from bisect import bisect_left, bisect_right


class SmallPredecessorSet:
    """Sorted (key, payload) pairs with predecessor/successor queries."""

    __slots__ = ("keys", "payloads")

    def __init__(self, keys, payloads):
        self.keys = keys
        self.payloads = payloads

    def __len__(self):
        return len(self.keys)

    def entries(self):
        return list(zip(self.keys, self.payloads))

    def predecessor(self, q):
        """Maximum (key, payload) with key <= q, or None."""
        i = bisect_right(self.keys, q)
        if i == 0:
            return None
        return self.keys[i - 1], self.payloads[i - 1]

    def successor(self, q):
        """Minimum (key, payload) with key >= q, or None."""
        i = bisect_left(self.keys, q)
        if i == len(self.keys):
            return None
        return self.keys[i], self.payloads[i]


def build_small_set(entries, max_size=None):
    """Build a SmallPredecessorSet from (key, payload) pairs.

    Duplicate keys are collapsed keep-last: when callers list entries in
    root-to-leaf order this retains the deepest node, which is the tie
    policy the SWA query needs.
    """
    collapsed = {}
    for key, payload in entries:
        if key <= 0:
            raise ValueError(f"keys must be positive, got {key}")
        collapsed[key] = payload
    if max_size is not None and len(collapsed) > max_size:
        raise ValueError(f"set size {len(collapsed)} exceeds cap {max_size}")
    keys = sorted(collapsed)
    return SmallPredecessorSet(keys, [collapsed[k] for k in keys])
