"""Linear-space SWA index: heavy-path contraction, two-level micro/macro
decomposition of the contracted tree, and a global tabulation of micro-tree
answers.

The contracted tree has one node per heavy path, weighted by the path's
top node. It is split with parameter chi^2 into a top tree and middle
trees, each middle tree again with parameter chi into bottom trees.
Micro-tree (middle/bottom) queries go through a global table keyed by a
canonical weighted-shape encoding; top-tree queries use per-leaf
predecessor sets. A resolved contracted node hands over to the shared
heavy-path rank/select finish.

Nodes whose contracted weight, leaf count, or node count exceed the
level's cap are promoted to the level above; the caps are what keeps the
table keys short, and the max-heap property makes promotion upward-closed.
"""

import gc
import math
from dataclasses import dataclass, field

from .smallpred import build_small_set
from .treecore import RootedTree, build_tree, compute_depths, compute_sizes, heavy_path_decomposition, validate_weights, LcaStructure
from .swa_log import QueryStats, encode_path, resolve_on_path

TOP, MIDDLE, BOTTOM = 0, 1, 2
_ESCAPE = -1


class ConfigurationError(ValueError):
    """Raised when the table budget or encoding caps cannot be met."""


@dataclass(frozen=True)
class ContractedTree:
    """One node per heavy path of the original tree, linked by light edges.

    Contracted node ids coincide with heavy-path ids.
    """

    tree: RootedTree
    weights: list  # contracted weight = weight of the path's top node
    hpd: object


def contract_tree(tree, hpd, weights):
    pairs = []
    for pid in range(1, hpd.num_paths + 1):
        top = hpd.top_node[pid]
        par = None if top == tree.root else hpd.path_id[tree.parent[top]]
        pairs.append((pid, par))
    ct = build_tree(pairs)
    cweights = [0] + [weights[hpd.top_node[p]] for p in range(1, hpd.num_paths + 1)]
    return ContractedTree(tree=ct, weights=cweights, hpd=hpd)


def _leaf_counts(tree):
    counts = [0] * (tree.n + 1)
    order = [tree.root]
    i = 0
    while i < len(order):
        order.extend(tree.children[order[i]])
        i += 1
    for u in reversed(order):
        if not tree.children[u]:
            counts[u] = 1
        if u != tree.root:
            counts[tree.parent[u]] += counts[u]
    return counts


@dataclass(frozen=True)
class ArtDecomposition:
    chi: int
    is_top: bytearray  # per node
    micro_id: list  # per node, 0 for top-tree nodes
    micro_roots: list  # micro_roots[0] unused
    micro_nodes: list  # micro_nodes[0] unused

    def label(self, u):
        return "top" if self.is_top[u] else "bottom"

    def top_leaf_count(self, tree):
        count = 0
        for u in range(1, tree.n + 1):
            if self.is_top[u] and all(not self.is_top[c] for c in tree.children[u]):
                count += 1
        return count


def art_decompose(tree, chi, weights=None, weight_cap=None, node_cap=None, leaf_counts=None, node_counts=None, roots=None):
    """Partition into a top tree and bottom trees.

    Bottom-tree roots are the minimal-depth nodes with at most chi leaves
    below; the optional weight/node caps add promotion rules for
    tabulation (all three predicates hold downward-closed).
    """
    if chi < 1:
        raise ValueError(f"chi must be >= 1, got {chi}")
    if leaf_counts is None:
        leaf_counts = _leaf_counts(tree)
    if node_counts is None and node_cap is not None:
        node_counts = compute_sizes(tree)
    is_top = bytearray(tree.n + 1)
    micro_id = [0] * (tree.n + 1)
    micro_roots = [0]
    micro_nodes = [None]

    def fits(u):
        if leaf_counts[u] > chi:
            return False
        if weight_cap is not None and weights[u] > weight_cap:
            return False
        if node_cap is not None and node_counts[u] > node_cap:
            return False
        return True

    stack = list(roots) if roots is not None else [tree.root]
    while stack:
        u = stack.pop()
        if fits(u):
            mid = len(micro_roots)
            micro_roots.append(u)
            nodes = [u]
            i = 0
            while i < len(nodes):
                v = nodes[i]
                micro_id[v] = mid
                nodes.extend(tree.children[v])
                i += 1
            micro_nodes.append(nodes)
        else:
            is_top[u] = 1
            stack.extend(tree.children[u])
    return ArtDecomposition(chi=chi, is_top=is_top, micro_id=micro_id, micro_roots=micro_roots, micro_nodes=micro_nodes)


class MicroTree:
    """A middle or bottom tree with its canonical tabulation key.

    Children are sorted recursively by their encoded subtree, so two
    weight-isomorphic micro trees share one key.
    """

    __slots__ = (
        "level",
        "root",
        "ct_ids",
        "local_of_ct",
        "parent_local",
        "weights_local",
        "canon_of_local",
        "local_of_canon",
        "base_key",
        "key_bits",
        "weight_cap",
        "_u_bits",
        "_k_bits",
    )

    def __init__(self, level, root, nodes, ct_tree, ct_weights, weight_cap, node_cap):
        if len(nodes) > node_cap:
            raise ConfigurationError(f"micro tree has {len(nodes)} nodes, cap {node_cap}")
        self.level = level
        self.root = root
        self.ct_ids = list(nodes)
        self.local_of_ct = {v: i for i, v in enumerate(self.ct_ids)}
        self.weight_cap = weight_cap
        in_micro = self.local_of_ct
        self.parent_local = [
            in_micro[ct_tree.parent[v]] if v != root else -1 for v in self.ct_ids
        ]
        self.weights_local = [ct_weights[v] for v in self.ct_ids]
        for v, w in zip(self.ct_ids, self.weights_local):
            if w > weight_cap:
                raise ConfigurationError(f"contracted node {v} weight {w} exceeds cap {weight_cap}")
        kids = [[] for _ in nodes]
        for i, p in enumerate(self.parent_local):
            if p >= 0:
                kids[p].append(i)

        w_bits = (weight_cap + 1).bit_length()

        def enc(v):
            subs = sorted(enc(c) for c in kids[v])
            struct = "1" + "".join(s[0] for s in subs) + "0"
            ws = [self.weights_local[v]]
            order = [v]
            for s in subs:
                ws.extend(s[1])
                order.extend(s[2])
            return struct, ws, order

        struct, ws, order = enc(in_micro[root])
        self.canon_of_local = [0] * len(nodes)
        for ci, loc in enumerate(order):
            self.canon_of_local[loc] = ci
        self.local_of_canon = order
        key = int("1" + ("1" if level == BOTTOM else "0") + struct, 2)
        for w in ws:
            key = (key << w_bits) | w
        self.base_key = key
        self._u_bits = max(1, (node_cap - 1).bit_length())
        self._k_bits = (weight_cap + 2).bit_length()
        self.key_bits = 2 + len(struct) + len(ws) * w_bits + self._u_bits + self._k_bits

    def query_key(self, local, k):
        k_eff = min(k, self.weight_cap + 1)
        return ((self.base_key << self._u_bits) | self.canon_of_local[local]) << self._k_bits | k_eff

    def compute_answer(self, canon_u, k):
        """Walk the micro ancestors of u; canonical answer index or escape."""
        v = self.local_of_canon[canon_u]
        while v >= 0:
            if self.weights_local[v] >= k:
                return self.canon_of_local[v]
            v = self.parent_local[v]
        return _ESCAPE


def encode_micro_tree(micro, u_ct, k):
    """Canonical key bits for an SWA query at node u_ct with threshold k."""
    return micro.query_key(micro.local_of_ct[u_ct], k)


class QueryTable:
    """Global memoized mapping from canonical query keys to micro-tree answers."""

    def __init__(self, budget_bits):
        self.entries = {}
        self.bits = 0
        self.budget_bits = budget_bits

    def get(self, key):
        return self.entries.get(key)

    def put(self, key, value, entry_bits):
        if key not in self.entries:
            self.bits += entry_bits
            if self.bits > self.budget_bits:
                raise ConfigurationError(
                    f"query table grew past its bit budget ({self.bits} > {self.budget_bits}); lower epsilon"
                )
            self.entries[key] = value


@dataclass
class SwaIndexLinear:
    tree: object
    weights: list
    sizes: list
    depths: list
    hpd: object
    lca: LcaStructure
    encodings: list
    contracted: ContractedTree
    level: list  # per contracted node
    micro_of: list  # per contracted node, MicroTree or None
    table: QueryTable
    top_rep_leaf: list  # per top contracted node, a descendant top-tree leaf
    top_sets: dict = field(repr=False, default_factory=dict)
    chi: int = 1
    eager: bool = False

    def encoding_bits(self):
        return sum(e.bv.m for e in self.encodings[1:])

    def space_words(self):
        total = 4 * (self.tree.n + 1)
        total += self.lca.space_words()
        for e in self.encodings[1:]:
            total += e.bv.raw_words() + (e.bv.aux_bits() + 63) // 64
        ct = self.contracted.tree
        total += 4 * (ct.n + 1)
        for m in {id(m): m for m in self.micro_of if m is not None}.values():
            total += 5 * len(m.ct_ids)
        total += (self.table.bits + 63) // 64
        for s in self.top_sets.values():
            total += 2 * len(s)
        return total


def _chi_for(n, epsilon):
    if n < 5:
        return 1
    log_n = math.log2(n)
    return max(1, int(epsilon * log_n / math.log2(log_n)))


def build_swa_linear(tree, weights, epsilon=1.0, eager_table=False):
    """Build the linear-space SWA index. epsilon scales chi (and hence the caps)."""
    if epsilon <= 0:
        raise ConfigurationError(f"epsilon must be positive, got {epsilon}")
    # Pause the cyclic collector: the build allocates millions of container
    # objects and collection passes over them dominate large builds.
    gc_was_enabled = gc.isenabled()
    gc.disable()
    try:
        return _build_swa_linear(tree, weights, epsilon, eager_table)
    finally:
        if gc_was_enabled:
            gc.enable()


def _build_swa_linear(tree, weights, epsilon, eager_table):
    sizes = compute_sizes(tree)
    report = validate_weights(tree, weights, sizes)
    if not report.ok:
        raise ValueError(f"invalid weight assignment: {report.detail}")
    depths = compute_depths(tree)
    hpd = heavy_path_decomposition(tree, sizes)
    lca = LcaStructure(tree, depths)
    encodings = [None] + [encode_path(hpd.paths[p], weights, p) for p in range(1, hpd.num_paths + 1)]
    contracted = contract_tree(tree, hpd, weights)
    ct, cweights = contracted.tree, contracted.weights

    chi = _chi_for(tree.n, epsilon)
    wcap_mid, ncap_mid = chi * chi, 4 * chi * chi
    wcap_bot, ncap_bot = chi, 4 * chi

    leaf_counts = _leaf_counts(ct)
    node_counts = compute_sizes(ct)
    art1 = art_decompose(
        ct, chi * chi, weights=cweights, weight_cap=wcap_mid, node_cap=ncap_mid,
        leaf_counts=leaf_counts, node_counts=node_counts,
    )
    level = [TOP] * (ct.n + 1)
    micro_of = [None] * (ct.n + 1)
    micros = []
    # One second-level pass over all middle roots at once; per-root calls
    # would reallocate the O(n) marker arrays each time.
    art2 = art_decompose(
        ct, chi, weights=cweights, weight_cap=wcap_bot, node_cap=ncap_bot,
        leaf_counts=leaf_counts, node_counts=node_counts,
        roots=art1.micro_roots[1:],
    )
    for bid in range(1, len(art2.micro_roots)):
        bnodes = art2.micro_nodes[bid]
        micro = MicroTree(BOTTOM, art2.micro_roots[bid], bnodes, ct, cweights, wcap_bot, ncap_bot)
        micros.append(micro)
        for v in bnodes:
            level[v] = BOTTOM
            micro_of[v] = micro
    for mid in range(1, len(art1.micro_roots)):
        middle_nodes = [v for v in art1.micro_nodes[mid] if micro_of[v] is None]
        if middle_nodes:
            micro = MicroTree(MIDDLE, art1.micro_roots[mid], middle_nodes, ct, cweights, wcap_mid, ncap_mid)
            micros.append(micro)
            for v in middle_nodes:
                level[v] = MIDDLE
                micro_of[v] = micro

    # Top-tree machinery: representative top leaves and per-leaf predecessor sets.
    top_rep_leaf = [0] * (ct.n + 1)
    top_children = [[c for c in ct.children[u] if level[c] == TOP] if level[u] == TOP else None for u in range(ct.n + 1)]
    if level[ct.root] == TOP:
        order = [ct.root]
        i = 0
        while i < len(order):
            order.extend(top_children[order[i]])
            i += 1
        for u in reversed(order):
            kids = top_children[u]
            top_rep_leaf[u] = u if not kids else top_rep_leaf[kids[0]]
    top_sets = {}
    set_cap = ct.n.bit_length() + 1 if ct.n else 1
    for u in range(1, ct.n + 1):
        if level[u] == TOP and not top_children[u]:
            chain = []
            v = u
            while v:
                chain.append((cweights[v], v))
                v = ct.parent[v]
            chain.reverse()
            top_sets[u] = build_small_set(chain)

    table = QueryTable(budget_bits=max(1 << 24, 1024 * tree.n))
    index = SwaIndexLinear(
        tree=tree,
        weights=weights,
        sizes=sizes,
        depths=depths,
        hpd=hpd,
        lca=lca,
        encodings=encodings,
        contracted=contracted,
        level=level,
        micro_of=micro_of,
        table=table,
        top_rep_leaf=top_rep_leaf,
        top_sets=top_sets,
        chi=chi,
        eager=eager_table,
    )
    if eager_table:
        filled = set()
        for micro in micros:
            if micro.base_key in filled:
                continue
            filled.add(micro.base_key)
            size = len(micro.ct_ids)
            for local in range(size):
                for k in range(1, micro.weight_cap + 2):
                    key = micro.query_key(local, k)
                    table.put(key, micro.compute_answer(micro.canon_of_local[local], k), micro.key_bits)
    return index


def _micro_query(index, micro, ct_node, k, stats):
    """Lowest ancestor-or-self of ct_node within its micro tree, or None (escape)."""
    if k > micro.weight_cap:
        return None
    local = micro.local_of_ct[ct_node]
    key = micro.query_key(local, k)
    if stats is not None:
        stats.probes += 1
    val = index.table.get(key)
    if val is None:
        val = micro.compute_answer(micro.canon_of_local[local], k)
        index.table.put(key, val, micro.key_bits)
    if val == _ESCAPE:
        return None
    return micro.ct_ids[micro.local_of_canon[val]]


def _resolve_contracted(index, start, k, stats):
    """Lowest ancestor-or-self of contracted node start with weight >= k."""
    ct = index.contracted.tree
    cweights = index.contracted.weights
    x = start
    while True:
        if index.level[x] == TOP:
            if cweights[x] >= k:
                return x
            hit = index.top_sets[index.top_rep_leaf[x]].successor(k)
            if stats is not None:
                stats.probes += 1
            return hit[1] if hit else None
        micro = index.micro_of[x]
        res = _micro_query(index, micro, x, k, stats)
        if res is not None:
            return res
        par = ct.parent[micro.root]
        if par == 0:
            return None
        x = par


def swa_query_linear(index, u, k, stats=None):
    """Lowest ancestor-or-self of u with weight >= k; None iff k > weight(root)."""
    if not 1 <= u <= index.tree.n:
        raise ValueError(f"node id {u} outside [1,{index.tree.n}]")
    if k < 1:
        raise ValueError(f"threshold k must be positive, got {k}")
    if index.weights[u] >= k:
        return u
    uh = index.hpd.path_id[u]
    if index.contracted.weights[uh] >= k:
        wh = uh
    else:
        wh = _resolve_contracted(index, uh, k, stats)
    if wh is None:
        return None
    return resolve_on_path(index, u, k, wh, stats)
