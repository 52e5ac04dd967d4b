"""Rooted-tree substrate: sizes, weight validation, heavy paths, LCA.

Node ids are 1-based everywhere; per-node arrays have an unused slot 0.
All structures are immutable after construction.
"""

from dataclasses import dataclass

import numpy as np


class TreeStructureError(ValueError):
    """Raised for malformed parent lists (multiple roots, cycles, dangling ids)."""


class TreeFormatError(ValueError):
    """Raised for malformed tree files; carries the offending line number."""

    def __init__(self, lineno, message):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


@dataclass(frozen=True)
class RootedTree:
    n: int
    root: int
    parent: list  # parent[u], parent[root] == 0
    children: list  # children[u], ascending node ids

    def is_leaf(self, u):
        return not self.children[u]

    def leaves(self):
        return [u for u in range(1, self.n + 1) if not self.children[u]]


def build_tree(parents):
    """Build and validate a RootedTree from (node, parent-or-None) pairs.

    Node ids must form [1, n]. parent 0 or None marks the root.
    """
    pairs = list(parents)
    n = len(pairs)
    seen = set()
    parent = [0] * (n + 1)
    root = 0
    for node, par in pairs:
        if not isinstance(node, int) or not 1 <= node <= n:
            raise TreeStructureError(f"node id {node} outside [1,{n}]")
        if node in seen:
            raise TreeStructureError(f"node {node} listed twice")
        seen.add(node)
        if par is None or par == 0:
            if root:
                raise TreeStructureError(f"multiple roots: {root} and {node}")
            root = node
        else:
            if not isinstance(par, int) or not 1 <= par <= n:
                raise TreeStructureError(f"node {node} has dangling parent {par}")
            parent[node] = par
    if not root:
        raise TreeStructureError("no root node (every node has a parent)")
    children = [[] for _ in range(n + 1)]
    for u in range(1, n + 1):
        if u != root:
            children[parent[u]].append(u)
    # Reachability check doubles as cycle detection.
    reached = 1
    stack = [root]
    visited = bytearray(n + 1)
    visited[root] = 1
    while stack:
        u = stack.pop()
        for v in children[u]:
            if visited[v]:
                raise TreeStructureError(f"node {v} reached twice (cycle)")
            visited[v] = 1
            reached += 1
            stack.append(v)
    if reached != n:
        bad = next(u for u in range(1, n + 1) if not visited[u])
        raise TreeStructureError(f"node {bad} not reachable from root (cycle or forest)")
    return RootedTree(n=n, root=root, parent=parent, children=children)


def bfs_order(tree):
    """Nodes in BFS order from the root."""
    order = [tree.root]
    i = 0
    children = tree.children
    while i < len(order):
        order.extend(children[order[i]])
        i += 1
    return order


def compute_sizes(tree):
    """size[u] = number of nodes in the subtree rooted at u."""
    size = [1] * (tree.n + 1)
    size[0] = 0
    parent = tree.parent
    for u in reversed(bfs_order(tree)):
        if u != tree.root:
            size[parent[u]] += size[u]
    return size


def compute_depths(tree):
    """depth[root] = 0."""
    depth = [0] * (tree.n + 1)
    parent = tree.parent
    for u in bfs_order(tree):
        if u != tree.root:
            depth[u] = depth[parent[u]] + 1
    return depth


@dataclass(frozen=True)
class WeightReport:
    ok: bool
    node: int | None = None
    rule: str | None = None
    detail: str = ""


def validate_weights(tree, weights, sizes=None):
    """Check the size-constrained max-heap rules; report the first violation."""
    if len(weights) != tree.n + 1:
        return WeightReport(False, None, "shape", f"expected {tree.n + 1} weight slots, got {len(weights)}")
    if sizes is None:
        sizes = compute_sizes(tree)
    parent = tree.parent
    for u in bfs_order(tree):
        w = weights[u]
        if not isinstance(w, int) or w < 1:
            return WeightReport(False, u, "positive", f"weight({u})={w} is not a positive integer")
        if w > sizes[u]:
            return WeightReport(False, u, "size-bound", f"weight({u})={w} > size({u})={sizes[u]}")
        if u != tree.root and w > weights[parent[u]]:
            return WeightReport(
                False, u, "max-heap", f"weight({u})={w} > weight(parent {parent[u]})={weights[parent[u]]}"
            )
    return WeightReport(True)


@dataclass(frozen=True)
class HeavyPathDecomposition:
    path_id: list  # per node, 1-based path ids
    pos_on_path: list  # per node, 1 = deepest node of its path
    paths: list  # paths[p] = node list bottom-to-top; paths[0] unused
    top_node: list
    bottom_node: list

    @property
    def num_paths(self):
        return len(self.paths) - 1


def heavy_path_decomposition(tree, sizes=None):
    """Decompose into heavy paths; heavy-child ties go to the smallest node id."""
    if sizes is None:
        sizes = compute_sizes(tree)
    n = tree.n
    heavy = [0] * (n + 1)
    for u in range(1, n + 1):
        best = 0
        best_size = 0
        for v in tree.children[u]:
            if sizes[v] > best_size:
                best, best_size = v, sizes[v]
        heavy[u] = best
    path_id = [0] * (n + 1)
    pos_on_path = [0] * (n + 1)
    paths = [None]
    top_node = [0]
    bottom_node = [0]
    parent = tree.parent
    for u in bfs_order(tree):
        if u != tree.root and heavy[parent[u]] == u:
            continue  # not a path top
        chain = []
        v = u
        while v:
            chain.append(v)
            v = heavy[v]
        chain.reverse()  # bottom-to-top
        pid = len(paths)
        paths.append(chain)
        top_node.append(u)
        bottom_node.append(chain[0])
        for pos, v in enumerate(chain, start=1):
            path_id[v] = pid
            pos_on_path[v] = pos
    return HeavyPathDecomposition(path_id, pos_on_path, paths, top_node, bottom_node)


def representative_leaf(tree, hpd):
    """Per node: the bottom of its heavy path, a leaf descendant."""
    return [hpd.bottom_node[hpd.path_id[u]] if u else 0 for u in range(tree.n + 1)]


_RMQ_BLOCK = 64


class LcaStructure:
    """Euler tour + blocked range-minimum directory over depths.

    Blocks are scanned directly (bounded work per query); a sparse table
    over block minima covers the middle range.
    """

    def __init__(self, tree, depths=None):
        if depths is None:
            depths = compute_depths(tree)
        n = tree.n
        euler = np.empty(2 * n - 1 if n else 0, dtype=np.int32)
        first = np.zeros(n + 1, dtype=np.int64)
        # Iterative Euler tour.
        idx = 0
        stack = [(tree.root, 0)]
        children = tree.children
        while stack:
            u, ci = stack.pop()
            if ci == 0:
                first[u] = idx
            euler[idx] = u
            idx += 1
            if ci < len(children[u]):
                stack.append((u, ci + 1))
                stack.append((children[u][ci], 0))
        self._euler = euler
        self._first = first
        self._n = n
        d = np.asarray(depths, dtype=np.int32)
        self._edepth = d[euler]
        m = len(euler)
        nb = (m + _RMQ_BLOCK - 1) // _RMQ_BLOCK
        pad = nb * _RMQ_BLOCK - m
        padded = np.concatenate([self._edepth, np.full(pad, np.iinfo(np.int32).max, dtype=np.int32)])
        blocks = padded.reshape(nb, _RMQ_BLOCK)
        bpos = blocks.argmin(axis=1)
        bval = blocks[np.arange(nb), bpos]
        bpos = bpos + np.arange(nb) * _RMQ_BLOCK
        levels_val = [bval]
        levels_pos = [bpos.astype(np.int64)]
        span = 1
        while 2 * span <= nb:
            prev_v, prev_p = levels_val[-1], levels_pos[-1]
            left_v, right_v = prev_v[: nb - 2 * span + 1], prev_v[span: nb - span + 1]
            take_right = right_v < left_v
            levels_val.append(np.where(take_right, right_v, left_v))
            levels_pos.append(np.where(take_right, prev_p[span: nb - span + 1], prev_p[: nb - 2 * span + 1]))
            span *= 2
        self._lv = levels_val
        self._lp = levels_pos

    def _argmin_range(self, l, r):
        """Index of the minimum depth in euler[l..r] inclusive."""
        ed = self._edepth
        bl, br = l // _RMQ_BLOCK, r // _RMQ_BLOCK
        if br - bl <= 1:
            return l + int(ed[l: r + 1].argmin())
        li = l + int(ed[l: (bl + 1) * _RMQ_BLOCK].argmin())
        ri = br * _RMQ_BLOCK + int(ed[br * _RMQ_BLOCK: r + 1].argmin())
        best = li if ed[li] <= ed[ri] else ri
        lo, hi = bl + 1, br - 1
        if lo <= hi:
            k = (hi - lo + 1).bit_length() - 1
            a = int(self._lp[k][lo])
            b = int(self._lp[k][hi - (1 << k) + 1])
            mid = a if ed[a] <= ed[b] else b
            if ed[mid] < ed[best]:
                best = mid
        return best

    def query(self, u, v):
        """The lowest common ancestor of u and v."""
        if not (1 <= u <= self._n and 1 <= v <= self._n):
            raise ValueError(f"node ids {u},{v} outside [1,{self._n}]")
        l, r = int(self._first[u]), int(self._first[v])
        if l > r:
            l, r = r, l
        return int(self._euler[self._argmin_range(l, r)])

    def space_words(self):
        total = len(self._euler) + len(self._first) + len(self._edepth)
        for v, p in zip(self._lv, self._lp):
            total += len(v) + len(p)
        return total


def build_lca(tree, depths=None):
    return LcaStructure(tree, depths)


def lca(structure, u, v):
    return structure.query(u, v)


# -- tree text format (CLI interface) ---------------------------------------
# line 1: n; lines 2..n+1: "node_id parent_id weight", parent_id 0 for the root.


def parse_tree_lines(lines):
    """Parse the tree text format; returns (RootedTree, weights)."""
    it = iter(enumerate(lines, start=1))
    try:
        lineno, header = next(it)
    except StopIteration:
        raise TreeFormatError(1, "empty input, expected node count") from None
    try:
        n = int(header.split()[0])
    except (ValueError, IndexError):
        raise TreeFormatError(lineno, f"expected node count, got {header.strip()!r}") from None
    pairs = []
    weights = [0] * (n + 1)
    count = 0
    for lineno, line in it:
        if not line.strip():
            continue
        fields = line.split()
        if len(fields) != 3:
            raise TreeFormatError(lineno, f"expected 'node parent weight', got {line.strip()!r}")
        try:
            node, par, w = int(fields[0]), int(fields[1]), int(fields[2])
        except ValueError:
            raise TreeFormatError(lineno, f"non-integer field in {line.strip()!r}") from None
        if not 1 <= node <= n:
            raise TreeFormatError(lineno, f"node id {node} outside [1,{n}]")
        pairs.append((node, par if par else None))
        weights[node] = w
        count += 1
    if count != n:
        raise TreeFormatError(lineno if count else 1, f"expected {n} node lines, got {count}")
    try:
        tree = build_tree(pairs)
    except TreeStructureError as exc:
        raise TreeFormatError(1, str(exc)) from exc
    return tree, weights


def read_tree_file(path):
    with open(path, "r", encoding="ascii") as fh:
        return parse_tree_lines(fh)


def format_tree(tree, weights):
    """Inverse of parse_tree_lines."""
    lines = [str(tree.n)]
    for u in range(1, tree.n + 1):
        lines.append(f"{u} {tree.parent[u]} {weights[u]}")
    return "\n".join(lines) + "\n"
