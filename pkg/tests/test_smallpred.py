import pytest
from hypothesis import given, settings, strategies as st

from swatree.smallpred import SmallPredecessorSet, build_small_set


def scan_pred(entries, q):
    best = None
    for k, p in entries:
        if k <= q and (best is None or k > best[0]):
            best = (k, p)
    return best


def scan_succ(entries, q):
    best = None
    for k, p in entries:
        if k >= q and (best is None or k < best[0]):
            best = (k, p)
    return best


def test_exhaustive_small(rng):
    for trial in range(300):
        n = rng.randint(0, 12)
        keys = rng.sample(range(1, 257), n)
        entries = [(k, f"p{k}") for k in keys]
        s = build_small_set(entries)
        assert len(s) == n
        for q in range(0, 260):
            assert s.predecessor(q) == scan_pred(entries, q)
            assert s.successor(q) == scan_succ(entries, q)


def test_empty_set():
    s = build_small_set([])
    assert len(s) == 0
    assert s.predecessor(5) is None
    assert s.successor(5) is None


def test_duplicates_keep_last():
    s = build_small_set([(3, "shallow"), (7, "x"), (3, "deep")])
    assert s.predecessor(3) == (3, "deep")
    assert s.entries() == [(3, "deep"), (7, "x")]


def test_positive_keys_required():
    with pytest.raises(ValueError):
        build_small_set([(0, "a")])
    with pytest.raises(ValueError):
        build_small_set([(-2, "a")])


def test_size_cap():
    entries = [(k, k) for k in range(1, 10)]
    build_small_set(entries, max_size=9)
    with pytest.raises(ValueError):
        build_small_set(entries, max_size=8)
    # duplicates collapse before the cap applies
    build_small_set([(1, "a")] * 100, max_size=1)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.tuples(st.integers(min_value=1, max_value=1000), st.integers()), max_size=40),
       st.integers(min_value=0, max_value=1001))
def test_matches_scan(pairs, q):
    s = build_small_set(pairs)
    collapsed = {}
    for k, p in pairs:
        collapsed[k] = p
    entries = list(collapsed.items())
    assert s.predecessor(q) == scan_pred(entries, q)
    assert s.successor(q) == scan_succ(entries, q)


def test_direct_construction():
    s = SmallPredecessorSet([2, 5], ["a", "b"])
    assert s.successor(3) == (5, "b")
    assert s.predecessor(1) is None
