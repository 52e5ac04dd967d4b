"""Brute-force reference implementations.

These share no code with the indexed structures they check; the CLI's
--verify mode re-runs sampled answers against them end-to-end.
"""


def swa_brute(tree, weights, u, k):
    """Walk from u toward the root; first node with weight >= k, else None."""
    v = u
    while v:
        if weights[v] >= k:
            return v
        v = tree.parent[v]
    return None


def count_occurrences(text, sub):
    """Occurrences of sub in text, overlapping; the empty string occurs |text|+1 times."""
    if not sub:
        return len(text) + 1
    count = 0
    start = 0
    while True:
        idx = text.find(sub, start)
        if idx < 0:
            return count
        count += 1
        start = idx + 1


def count_documents(docs, sub):
    """Number of documents containing sub."""
    if not sub:
        return len(docs)
    return sum(1 for d in docs if sub in d)


def complexity_brute(text, docs, intervals):
    """Exact frequency-constrained substring complexity table by enumeration."""
    from .apps import ComplexityTable, check_intervals

    check_intervals(intervals, len(docs))
    rows = len(text)
    values = [[0] * len(intervals) for _ in range(rows)]
    for length in range(1, rows + 1):
        distinct = {text[i: i + length] for i in range(rows - length + 1)}
        for sub in distinct:
            df = count_documents(docs, sub)
            for j, (alpha, beta) in enumerate(intervals):
                if alpha <= df <= beta:
                    values[length - 1][j] += 1
    return ComplexityTable(values=values, intervals=list(intervals))
