"""Suffix trees over single texts and document dictionaries.

Construction goes suffix array (SA-IS induced sorting) -> LCP (Kasai) ->
tree from LCP intervals, with suffix links derived afterwards via LCA
queries on the finished tree. Documents get distinct terminator symbols
outside the byte alphabet, so no document suffix is a prefix of
another's path and LCP values never cross a document boundary.

Suffix tree nodes are dense 0-based indices with the root at 0; the
rooted-tree view used by the SWA indexes shifts them to 1-based ids.
"""

from dataclasses import dataclass

from .treecore import LcaStructure, RootedTree, compute_sizes, heavy_path_decomposition


# -- suffix array ------------------------------------------------------------


def suffix_array(seq):
    """SA-IS over an arbitrary integer sequence (no terminator requirement)."""
    n = len(seq)
    if n == 0:
        return []
    ranks = {v: i + 1 for i, v in enumerate(sorted(set(seq)))}
    s = [ranks[v] for v in seq] + [0]
    sa = _sais(s, len(ranks) + 1)
    return [p for p in sa if p < n]


def _sais(s, sigma):
    """Core induced sorting; s ends with its unique minimum symbol."""
    n = len(s)
    if n == 1:
        return [0]
    stype = bytearray(n)
    stype[n - 1] = 1
    for i in range(n - 2, -1, -1):
        if s[i] < s[i + 1] or (s[i] == s[i + 1] and stype[i + 1]):
            stype[i] = 1
    counts = [0] * sigma
    for c in s:
        counts[c] += 1

    def heads():
        out = [0] * sigma
        acc = 0
        for c in range(sigma):
            out[c] = acc
            acc += counts[c]
        return out

    def tails():
        out = [0] * sigma
        acc = 0
        for c in range(sigma):
            acc += counts[c]
            out[c] = acc - 1
        return out

    def induce(lms_order):
        sa = [-1] * n
        tail = tails()
        for p in reversed(lms_order):
            c = s[p]
            sa[tail[c]] = p
            tail[c] -= 1
        head = heads()
        for i in range(n):
            p = sa[i]
            if p > 0 and not stype[p - 1]:
                c = s[p - 1]
                sa[head[c]] = p - 1
                head[c] += 1
        tail = tails()
        for i in range(n - 1, -1, -1):
            p = sa[i]
            if p > 0 and stype[p - 1]:
                c = s[p - 1]
                sa[tail[c]] = p - 1
                tail[c] -= 1
        return sa

    lms = [i for i in range(1, n) if stype[i] and not stype[i - 1]]
    sa = induce(lms)
    # Name LMS substrings in their induced order.
    lms_set = set(lms)
    order = [p for p in sa if p in lms_set]
    name = {order[0]: 0}
    names = 1
    for a, b in zip(order, order[1:]):
        if _lms_equal(s, stype, lms_set, a, b):
            name[b] = names - 1
        else:
            name[b] = names
            names += 1
    if names < len(lms):
        # Recurse on the reduced string with its own fresh terminator.
        shifted = [name[p] + 1 for p in lms] + [0]
        sub_sa = _sais(shifted, names + 2)
        ordered = [lms[p] for p in sub_sa if p < len(lms)]
    else:
        ordered = order
    return induce(ordered)


def _lms_equal(s, stype, lms_set, a, b):
    if s[a] != s[b]:
        return False
    i = 1
    while True:
        a_lms = (a + i) in lms_set
        b_lms = (b + i) in lms_set
        if a_lms and b_lms:
            return True
        if a_lms != b_lms:
            return False
        if a + i >= len(s) or b + i >= len(s) or s[a + i] != s[b + i]:
            return False
        i += 1


def lcp_array(seq, sa):
    """Kasai's algorithm; lcp[i] is the LCP of sa[i-1] and sa[i], lcp[0] = 0."""
    n = len(sa)
    rank = [0] * n
    for i, p in enumerate(sa):
        rank[p] = i
    lcp = [0] * n
    h = 0
    for p in range(n):
        r = rank[p]
        if r > 0:
            q = sa[r - 1]
            while p + h < n and q + h < n and seq[p + h] == seq[q + h]:
                h += 1
            lcp[r] = h
            if h:
                h -= 1
        else:
            h = 0
    return lcp


# -- suffix tree -------------------------------------------------------------


@dataclass(frozen=True)
class Locus:
    """Position of a substring: shallowest explicit node at string depth >= depth."""

    node: int
    depth: int


@dataclass(frozen=True)
class MatchingStatistics:
    """Per pattern position (1-based): longest matching prefix length and its locus node."""

    lengths: list
    loci: list

    def __len__(self):
        return len(self.lengths)


class SuffixTree:
    """Compacted trie over the suffixes of a text or document dictionary."""

    def __init__(self, docs, generalized):
        self.docs = docs
        self.generalized = generalized
        symbols = []
        doc_start = []
        doc_end = []
        self.appended_sentinel = False
        if generalized:
            for i, doc in enumerate(docs):
                doc_start.append(len(symbols))
                symbols.extend(doc)
                symbols.append(256 + i)  # per-document terminator, outside the byte alphabet
                doc_end.append(len(symbols) - 1)
            self.appended_sentinel = True
        else:
            doc = docs[0]
            doc_start.append(0)
            symbols.extend(doc)
            if doc.count(doc[-1:]) > 1:
                symbols.append(-1)  # terminator below the byte alphabet
                self.appended_sentinel = True
            doc_end.append(len(symbols) - 1)
        self.symbols = symbols
        self.doc_start = doc_start
        self.doc_end = doc_end
        self.npos = len(symbols)
        doc_of = [0] * self.npos
        if generalized:
            for i in range(len(docs)):
                for p in range(doc_start[i], doc_end[i] + 1):
                    doc_of[p] = i
        self.doc_of = doc_of

        sa = suffix_array(symbols)
        lcp = lcp_array(symbols, sa)
        self.sa = sa
        self._build_from_sa_lcp(sa, lcp)
        self._slink = None
        self._rooted = None
        self._lca = None
        self._wa = None

    # -- construction --------------------------------------------------------

    def _trunc_len(self, p):
        return self.doc_end[self.doc_of[p]] - p + 1

    def _build_from_sa_lcp(self, sa, lcp):
        parent = [-1]
        sdepth = [0]
        repr_pos = [sa[0]]
        leaf_pos = [-1]
        stack = [0]
        for i, p in enumerate(sa):
            l = lcp[i]
            last = -1
            while sdepth[stack[-1]] > l:
                last = stack.pop()
            top = stack[-1]
            if sdepth[top] < l:
                v = len(parent)
                parent.append(top)
                sdepth.append(l)
                repr_pos.append(repr_pos[last])
                leaf_pos.append(-1)
                parent[last] = v
                stack.append(v)
                top = v
            leaf = len(parent)
            parent.append(top)
            sdepth.append(self._trunc_len(p))
            repr_pos.append(p)
            leaf_pos.append(p)
            stack.append(leaf)
        self.parent = parent
        self.sdepth = sdepth
        self.repr_pos = repr_pos
        self.leaf_pos = leaf_pos
        self.num_nodes = len(parent)
        children = [{} for _ in range(self.num_nodes)]
        for v in range(1, self.num_nodes):
            first = self.symbols[repr_pos[v] + sdepth[parent[v]]]
            children[parent[v]][first] = v
        self.children = children
        pos_to_leaf = [0] * self.npos
        for v in range(self.num_nodes):
            if leaf_pos[v] >= 0:
                pos_to_leaf[leaf_pos[v]] = v
        self.pos_to_leaf = pos_to_leaf

    # -- views ----------------------------------------------------------------

    def is_leaf(self, v):
        return self.leaf_pos[v] >= 0

    def leaf_document(self, v):
        """0-based document id of a leaf."""
        return self.doc_of[self.leaf_pos[v]]

    def leaf_suffix_start(self, v):
        """1-based suffix start within the leaf's document."""
        p = self.leaf_pos[v]
        return p - self.doc_start[self.doc_of[p]] + 1

    def to_rooted_tree(self):
        """RootedTree view with node ids shifted to 1-based."""
        if self._rooted is None:
            self._rooted = RootedTree(
                n=self.num_nodes,
                root=1,
                parent=[0] + [self.parent[v] + 1 if v else 0 for v in range(self.num_nodes)],
                children=[[]] + [sorted(c + 1 for c in self.children[v].values()) for v in range(self.num_nodes)],
            )
        return self._rooted

    def lca_struct(self):
        if self._lca is None:
            self._lca = LcaStructure(self.to_rooted_tree())
        return self._lca

    def node_lca(self, a, b):
        return self.lca_struct().query(a + 1, b + 1) - 1

    def encode_pattern(self, pattern):
        if isinstance(pattern, str):
            pattern = pattern.encode()
        return list(pattern)

    # -- suffix links -----------------------------------------------------------

    def ensure_suffix_links(self):
        if self._slink is not None:
            return
        slink = [-1] * self.num_nodes
        slink[0] = 0
        leftleaf = [0] * self.num_nodes
        order = [0]
        i = 0
        while i < len(order):
            order.extend(self.children[order[i]].values())
            i += 1
        for v in reversed(order):
            kids = list(self.children[v].values())
            leftleaf[v] = v if not kids else leftleaf[kids[0]]
        for v in order:
            if v == 0:
                continue
            if self.is_leaf(v):
                p = self.leaf_pos[v]
                slink[v] = self.pos_to_leaf[p + 1] if p < self.doc_end[self.doc_of[p]] else 0
            else:
                kids = list(self.children[v].values())
                s1 = self.leaf_pos[leftleaf[kids[0]]]
                s2 = self.leaf_pos[leftleaf[kids[-1]]]
                slink[v] = self.node_lca(self.pos_to_leaf[s1 + 1], self.pos_to_leaf[s2 + 1])
        self._slink = slink

    @property
    def suffix_link(self):
        self.ensure_suffix_links()
        return self._slink

    # -- weighted-ancestor machinery over string depths --------------------------

    def _wa_machinery(self):
        if self._wa is None:
            rt = self.to_rooted_tree()
            self._wa = heavy_path_decomposition(rt, compute_sizes(rt))
        return self._wa

    def ancestor_locus(self, node, depth):
        """Shallowest ancestor-or-self of node with string depth >= depth."""
        if depth < 1:
            return 0
        if self.sdepth[node] < depth:
            raise ValueError(f"node {node} is shallower ({self.sdepth[node]}) than target depth {depth}")
        hpd = self._wa_machinery()
        rt = self.to_rooted_tree()
        sdepth = self.sdepth
        v = node + 1
        while True:
            pid = hpd.path_id[v]
            top = hpd.top_node[pid]
            par = rt.parent[top]
            if par and sdepth[par - 1] >= depth:
                v = par
                continue
            path = hpd.paths[pid]
            lo, hi = hpd.pos_on_path[v] - 1, hpd.pos_on_path[top] - 1
            # string depth decreases upward along the path; binary search the boundary
            while lo < hi:
                mid = (lo + hi + 1) // 2
                if sdepth[path[mid] - 1] >= depth:
                    lo = mid
                else:
                    hi = mid - 1
            return path[lo] - 1


def build_suffix_tree(text):
    """Suffix tree of a byte string; a fresh terminator is appended unless the
    final byte already occurs nowhere else."""
    if isinstance(text, str):
        text = text.encode()
    if not text:
        raise ValueError("cannot index an empty text")
    return SuffixTree([bytes(text)], generalized=False)


def build_generalized_suffix_tree(docs):
    """Generalized suffix tree over a dictionary of byte strings."""
    docs = [d.encode() if isinstance(d, str) else bytes(d) for d in docs]
    if not docs:
        raise ValueError("dictionary must contain at least one document")
    return SuffixTree(docs, generalized=True)


def leaf_count_weights(st):
    """weight[v] = number of leaf descendants; 1-based like the rooted-tree view."""
    weights = [0] * (st.num_nodes + 1)
    order = [0]
    i = 0
    while i < len(order):
        order.extend(st.children[order[i]].values())
        i += 1
    for v in reversed(order):
        w = 1 if st.is_leaf(v) else sum(weights[c + 1] for c in st.children[v].values())
        weights[v + 1] = w
    return weights


def document_frequency_weights(st):
    """weight[v] = distinct documents with a leaf below v (color-set-size counting)."""
    if not st.generalized:
        raise ValueError("document frequencies need a generalized suffix tree")
    leaf_w = leaf_count_weights(st)
    corr = [0] * st.num_nodes
    last_leaf = {}
    for p in st.sa:
        doc = st.doc_of[p]
        leaf = st.pos_to_leaf[p]
        prev = last_leaf.get(doc)
        if prev is not None:
            corr[st.node_lca(prev, leaf)] += 1
        last_leaf[doc] = leaf
    order = [0]
    i = 0
    while i < len(order):
        order.extend(st.children[order[i]].values())
        i += 1
    sub = list(corr)
    for v in reversed(order):
        for c in st.children[v].values():
            sub[v] += sub[c]
    weights = [0] * (st.num_nodes + 1)
    for v in range(st.num_nodes):
        weights[v + 1] = leaf_w[v + 1] - sub[v]
    return weights


def locus_of_substring(st, i, j):
    """Locus of text[i..j] (1-based, inclusive) in a single-text suffix tree."""
    text_len = len(st.docs[0])
    if not 1 <= i <= j <= text_len:
        raise ValueError(f"substring range [{i},{j}] outside [1,{text_len}]")
    depth = j - i + 1
    leaf = st.pos_to_leaf[i - 1]
    return Locus(node=st.ancestor_locus(leaf, depth), depth=depth)


def matching_statistics(st, pattern):
    """For each pattern position, the longest prefix of the remainder occurring
    in the index, with its locus node. Linear via suffix-link descent."""
    st.ensure_suffix_links()
    syms = st.encode_pattern(pattern)
    m = len(syms)
    out_len = [0] * m
    out_loc = [0] * m
    symbols = st.symbols
    sdepth = st.sdepth
    children = st.children
    repr_pos = st.repr_pos
    slink = st._slink
    node = 0
    child = -1
    l = 0
    for i in range(m):
        while True:
            if l == sdepth[node]:
                child = children[node].get(syms[i + l]) if i + l < m else None
                if child is None:
                    child = -1
                    break
            if i + l < m and symbols[repr_pos[child] + l] == syms[i + l]:
                l += 1
                if l == sdepth[child]:
                    node = child
                    child = -1
            else:
                break
        out_len[i] = l
        out_loc[i] = node if l == sdepth[node] else child
        if l == 0:
            continue
        node = slink[node]  # slink[root] is root
        l -= 1
        child = -1
        while l > sdepth[node]:
            c = children[node][syms[i + 1 + sdepth[node]]]
            if sdepth[c] <= l:
                node = c
            else:
                child = c
                break
    return MatchingStatistics(lengths=out_len, loci=out_loc)
