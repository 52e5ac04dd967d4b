"""String applications built on suffix trees plus SWA queries.

Three queries, all reduced to size-constrained weighted ancestors:
longest frequent prefix inside a text, longest frequent substring of a
pattern (against a document dictionary or a single text), and the
frequency-constrained substring complexity table.
"""

from dataclasses import dataclass, field

from .stringindex import (
    build_generalized_suffix_tree,
    build_suffix_tree,
    document_frequency_weights,
    leaf_count_weights,
    locus_of_substring,
    matching_statistics,
)
from .swa_linear import build_swa_linear, swa_query_linear
from .swa_log import build_swa_log, swa_query_log


def _build_swa(st, weights, variant, epsilon, eager_table):
    rt = st.to_rooted_tree()
    if variant == "log":
        return build_swa_log(rt, weights), swa_query_log
    if variant == "linear":
        return build_swa_linear(rt, weights, epsilon=epsilon, eager_table=eager_table), swa_query_linear
    raise ValueError(f"unknown variant {variant!r} (expected 'log' or 'linear')")


@dataclass
class IlfpIndex:
    """Longest frequent prefix queries inside a fixed text."""

    st: object
    weights: list = field(repr=False)
    swa: object = field(repr=False)
    query_fn: object = field(repr=False)

    @property
    def text_length(self):
        return len(self.st.docs[0])


def build_ilfp_index(text, variant="linear", epsilon=1.0, eager_table=False):
    st = build_suffix_tree(text)
    weights = leaf_count_weights(st)
    swa, fn = _build_swa(st, weights, variant, epsilon, eager_table)
    return IlfpIndex(st=st, weights=weights, swa=swa, query_fn=fn)


def ilfp(index, i, j, f):
    """Length of the longest prefix of text[i..j] occurring at least f times."""
    if f < 1:
        raise ValueError(f"frequency threshold must be positive, got {f}")
    st = index.st
    locus = locus_of_substring(st, i, j)  # validates the range
    node_id = locus.node + 1
    if index.weights[node_id] >= f:
        return j - i + 1
    w = index.query_fn(index.swa, node_id, f)
    return st.sdepth[w - 1] if w is not None else 0


@dataclass
class LfsIndex:
    """Longest frequent substring queries for patterns against a fixed index."""

    st: object
    weights: list = field(repr=False)
    swa: object = field(repr=False)
    query_fn: object = field(repr=False)
    mode: str = "dict"  # "dict" counts documents, "text" counts occurrences

    @property
    def num_documents(self):
        return len(self.st.docs)


def build_lfs_index(docs, variant="linear", epsilon=1.0, eager_table=False):
    """Dictionary mode: weights are document frequencies over a generalized tree."""
    st = build_generalized_suffix_tree(docs)
    st.ensure_suffix_links()
    weights = document_frequency_weights(st)
    swa, fn = _build_swa(st, weights, variant, epsilon, eager_table)
    return LfsIndex(st=st, weights=weights, swa=swa, query_fn=fn, mode="dict")


def build_lfs_text_index(text, variant="linear", epsilon=1.0, eager_table=False):
    """Text mode: weights are occurrence counts over a single suffix tree."""
    st = build_suffix_tree(text)
    st.ensure_suffix_links()
    weights = leaf_count_weights(st)
    swa, fn = _build_swa(st, weights, variant, epsilon, eager_table)
    return LfsIndex(st=st, weights=weights, swa=swa, query_fn=fn, mode="text")


def _lfs(index, pattern, f):
    if f < 1:
        raise ValueError(f"frequency threshold must be positive, got {f}")
    st = index.st
    ms = matching_statistics(st, pattern)
    best_start, best_len = 1, 0
    for i, (length, node) in enumerate(zip(ms.lengths, ms.loci)):
        if length <= best_len:
            continue
        if index.weights[node + 1] >= f:
            cand = length  # frequency is constant along an edge
        else:
            w = index.query_fn(index.swa, node + 1, f)
            cand = st.sdepth[w - 1] if w is not None else 0
        if cand > best_len:
            best_start, best_len = i + 1, cand
    return best_start, best_len


def lfs_dict(index, pattern, f):
    """(start, length) of a longest substring of pattern in >= f documents;
    smallest start on ties, (1, 0) if nothing qualifies."""
    if index.mode != "dict":
        raise ValueError("index was built for text mode, use lfs_text")
    return _lfs(index, pattern, f)


def lfs_text(index, pattern, f):
    """(start, length) of a longest substring of pattern occurring >= f times in the text."""
    if index.mode != "text":
        raise ValueError("index was built for dictionary mode, use lfs_dict")
    return _lfs(index, pattern, f)


@dataclass
class ComplexityTable:
    """S[i,j] = distinct length-i substrings of X whose document frequency
    falls in the j-th interval; rows are lengths 1..|X|."""

    values: list
    intervals: list

    @property
    def num_lengths(self):
        return len(self.values)

    @property
    def num_classes(self):
        return len(self.intervals)

    def cell(self, i, j):
        """1-based length i and class j."""
        return self.values[i - 1][j - 1]

    def to_tsv(self):
        header = ["length"] + [f"{a}-{b}" for a, b in self.intervals]
        lines = ["\t".join(header)]
        for i, row in enumerate(self.values, start=1):
            lines.append("\t".join([str(i)] + [str(x) for x in row]))
        return "\n".join(lines) + "\n"


def check_intervals(intervals, d):
    """Validate that intervals are nonempty, sorted, disjoint, within [1,d]."""
    if not intervals:
        raise ValueError("need at least one interval")
    prev_end = 0
    for a, b in intervals:
        if not 1 <= a <= b <= d:
            raise ValueError(f"interval [{a},{b}] outside [1,{d}]")
        if a <= prev_end:
            raise ValueError(f"interval [{a},{b}] overlaps or is out of order")
        prev_end = b


def substring_complexity(gst_index, text, intervals):
    """ComplexityTable of text against the dictionary behind gst_index.

    One pass of matching statistics maps text into the generalized tree;
    each explicit node of the text's own suffix tree then contributes a
    depth interval per class, delimited by SWA boundary depths, and the
    intervals are accumulated with difference arrays.
    """
    if gst_index.mode != "dict":
        raise ValueError("substring complexity needs a dictionary-mode index")
    if isinstance(text, str):
        text = text.encode()
    d = gst_index.num_documents
    intervals = [(int(a), int(b)) for a, b in intervals]
    check_intervals(intervals, d)
    gst = gst_index.st
    st_x = build_suffix_tree(text)
    ms = matching_statistics(gst, text)
    rows = len(text)
    tau = len(intervals)
    diffs = [[0] * (rows + 2) for _ in range(tau)]
    sdepth_x = st_x.sdepth
    for v in range(1, st_x.num_nodes):
        lo = sdepth_x[st_x.parent[v]] + 1
        hi = sdepth_x[v]
        if st_x.appended_sentinel and st_x.is_leaf(v):
            hi -= 1  # the artificial terminator is not text
        if hi < lo:
            continue
        s = st_x.repr_pos[v]  # all depths in [lo,hi] are prefixes of text[s..]
        m_v = min(hi, ms.lengths[s])
        if m_v < 1:
            continue
        g = ms.loci[s] if m_v == ms.lengths[s] else gst.ancestor_locus(ms.loci[s], m_v)
        bound_cache = {}

        def boundary(t):
            # longest prefix length whose document frequency is >= t
            if t in bound_cache:
                return bound_cache[t]
            if t <= gst_index.weights[g + 1]:
                c = m_v
            else:
                w = gst_index.query_fn(gst_index.swa, g + 1, t)
                c = min(m_v, gst.sdepth[w - 1]) if w is not None else 0
            bound_cache[t] = c
            return c

        for j, (alpha, beta) in enumerate(intervals):
            hi_j = min(hi, boundary(alpha))
            lo_j = max(lo, boundary(beta + 1) + 1)
            if hi_j >= lo_j:
                diffs[j][lo_j] += 1
                diffs[j][hi_j + 1] -= 1
    values = [[0] * tau for _ in range(rows)]
    for j in range(tau):
        acc = 0
        for i in range(1, rows + 1):
            acc += diffs[j][i]
            values[i - 1][j] = acc
    return ComplexityTable(values=values, intervals=intervals)
