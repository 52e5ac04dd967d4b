"""SWA index with O(n log n)-space: heavy paths, unary path encodings, per-leaf
predecessor sets over top-node weights, and an LCA structure.

A query either answers at the node itself, or finds the heavy path
holding the answer through the representative leaf's predecessor set and
resolves the exact node with one select and one rank on the path
encoding, plus at most one LCA query.
"""

import gc
from dataclasses import dataclass, field

from .bitrank import BitVector
from .smallpred import build_small_set
from .treecore import (
    LcaStructure,
    compute_depths,
    compute_sizes,
    heavy_path_decomposition,
    representative_leaf,
    validate_weights,
)


@dataclass
class QueryStats:
    """Per-query operation counts, filled when passed to a query function."""

    probes: int = 0  # table / predecessor-set lookups
    rank: int = 0
    select: int = 0
    lca: int = 0

    def reset(self):
        self.probes = self.rank = self.select = self.lca = 0


@dataclass(frozen=True)
class PathEncoding:
    """Unary-coded weight profile of one heavy path.

    The bit string is the concatenation of the bottom node's weight and the
    successive weight deltas, each coded as a 1-run closed by a single 0.
    0-count = path length, 1-count = top-node weight.
    """

    bv: BitVector
    length: int
    path_id: int = 0

    @property
    def top_weight(self):
        return self.bv.count(1)

    def weight_at(self, i):
        """Weight of the i-th node from the bottom (decodability check)."""
        return self.bv.rank(1, self.bv.select(0, i))


def encode_path(path, weights, path_id=0):
    """Encode a bottom-to-top heavy path of nodes into a PathEncoding."""
    parts = []
    prev = 0
    for v in path:
        delta = weights[v] - prev
        if delta < 0:
            raise ValueError(f"weights decrease along path at node {v} ({weights[v]} < {prev})")
        parts.append("1" * delta + "0")
        prev = weights[v]
    return PathEncoding(bv=BitVector("".join(parts)), length=len(path), path_id=path_id)


def path_lowest_with_weight(enc, k, stats=None):
    """1-based position (from the bottom) of the lowest node with weight >= k."""
    if k < 1:
        raise ValueError(f"threshold k must be positive, got {k}")
    if k > enc.bv.count(1):
        return None
    j = enc.bv.select(1, k)
    f = enc.bv.rank(0, j)
    if stats is not None:
        stats.select += 1
        stats.rank += 1
    return f + 1


@dataclass
class SwaIndexLog:
    tree: object
    weights: list
    sizes: list
    depths: list
    hpd: object
    lca: LcaStructure
    encodings: list  # by path id, [0] unused
    rep_leaf: list
    leaf_sets: dict = field(repr=False, default_factory=dict)

    def encoding_bits(self):
        return sum(e.bv.m for e in self.encodings[1:])

    def space_words(self):
        total = 4 * (self.tree.n + 1)  # sizes, depths, path_id, pos arrays
        total += self.lca.space_words()
        for e in self.encodings[1:]:
            total += e.bv.raw_words() + (e.bv.aux_bits() + 63) // 64
        for s in self.leaf_sets.values():
            total += 2 * len(s)
        return total


def build_swa_log(tree, weights):
    """Build the O(n log n)-space SWA index; weights must pass validation."""
    # Pause the cyclic collector; large builds allocate millions of
    # container objects and collection passes dominate otherwise.
    gc_was_enabled = gc.isenabled()
    gc.disable()
    try:
        return _build_swa_log(tree, weights)
    finally:
        if gc_was_enabled:
            gc.enable()


def _build_swa_log(tree, weights):
    sizes = compute_sizes(tree)
    report = validate_weights(tree, weights, sizes)
    if not report.ok:
        raise ValueError(f"invalid weight assignment: {report.detail}")
    depths = compute_depths(tree)
    hpd = heavy_path_decomposition(tree, sizes)
    lca = LcaStructure(tree, depths)
    encodings = [None]
    for pid in range(1, hpd.num_paths + 1):
        encodings.append(encode_path(hpd.paths[pid], weights, pid))
    rep = representative_leaf(tree, hpd)
    # One predecessor set per leaf: (top-node weight -> path id) for every
    # heavy path crossed on the way to the root, deepest entry winning ties.
    set_cap = tree.n.bit_length() + 1
    parent = tree.parent
    leaf_sets = {}
    for pid in range(1, hpd.num_paths + 1):
        leaf = hpd.bottom_node[pid]
        chain = []
        p = pid
        while True:
            top = hpd.top_node[p]
            chain.append((weights[top], p))
            if top == tree.root:
                break
            p = hpd.path_id[parent[top]]
        chain.reverse()  # root-to-leaf order so keep-last keeps the deepest
        leaf_sets[leaf] = build_small_set(chain, max_size=set_cap)
    return SwaIndexLog(
        tree=tree,
        weights=weights,
        sizes=sizes,
        depths=depths,
        hpd=hpd,
        lca=lca,
        encodings=encodings,
        rep_leaf=rep,
        leaf_sets=leaf_sets,
    )


def resolve_on_path(index, u, k, pid, stats=None):
    """Lowest ancestor of u with weight >= k, knowing it lies on heavy path pid."""
    hpd = index.hpd
    pos = path_lowest_with_weight(index.encodings[pid], k, stats)
    w2 = hpd.paths[pid][pos - 1]
    if hpd.path_id[u] == pid:
        w1 = index.tree.parent[u]
    else:
        w1 = index.lca.query(hpd.bottom_node[pid], u)
        if stats is not None:
            stats.lca += 1
    depths = index.depths
    return w1 if depths[w1] < depths[w2] else w2


def swa_query_log(index, u, k, stats=None):
    """Lowest ancestor-or-self of u with weight >= k; None iff k > weight(root)."""
    if not 1 <= u <= index.tree.n:
        raise ValueError(f"node id {u} outside [1,{index.tree.n}]")
    if k < 1:
        raise ValueError(f"threshold k must be positive, got {k}")
    if index.weights[u] >= k:
        return u
    hit = index.leaf_sets[index.rep_leaf[u]].successor(k)
    if stats is not None:
        stats.probes += 1
    if hit is None:
        return None
    return resolve_on_path(index, u, k, hit[1], stats)
