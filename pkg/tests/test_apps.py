import pytest

from swatree.apps import (
    ComplexityTable,
    build_ilfp_index,
    build_lfs_index,
    build_lfs_text_index,
    check_intervals,
    ilfp,
    lfs_dict,
    lfs_text,
    substring_complexity,
)
from swatree.oracles import complexity_brute, count_documents, count_occurrences

from conftest import random_text

EXAMPLE_DICT = [b"a", b"ananan", b"baba", b"ban", b"banna", b"nana"]
EXAMPLE_INTERVALS = [(1, 2), (3, 4), (5, 6)]


def ilfp_brute(text, i, j, f):
    best = 0
    for t in range(1, j - i + 2):
        if count_occurrences(text, text[i - 1: i - 1 + t]) >= f:
            best = t
    return best


def lfs_brute(count_fn, pattern, f):
    for length in range(len(pattern), 0, -1):
        for start in range(len(pattern) - length + 1):
            if count_fn(pattern[start: start + length]) >= f:
                return start + 1, length
    return 1, 0


# -- ILFP -----------------------------------------------------------------------


def test_ilfp_golden():
    for variant in ("log", "linear"):
        index = build_ilfp_index(b"CAGAGA$", variant=variant)
        assert ilfp(index, 2, 7, 3) == 1  # "A"
        assert ilfp(index, 2, 7, 1) == 6  # any substring occurs once
        assert ilfp(index, 2, 7, 8) == 0  # above the leaf count


def test_ilfp_f1_returns_full_range(rng):
    text = random_text(rng, max_len=30)
    index = build_ilfp_index(text)
    for i in range(1, len(text) + 1):
        for j in range(i, len(text) + 1):
            assert ilfp(index, i, j, 1) == j - i + 1


def test_ilfp_matches_brute(rng):
    for trial in range(25):
        text = random_text(rng, max_len=24, sigma=2)
        for variant in ("log", "linear"):
            index = build_ilfp_index(text, variant=variant)
            for i in range(1, len(text) + 1):
                for j in range(i, len(text) + 1):
                    for f in range(1, len(text) + 3):
                        assert ilfp(index, i, j, f) == ilfp_brute(text, i, j, f), (text, i, j, f)


def test_ilfp_domain_errors():
    index = build_ilfp_index(b"abc")
    with pytest.raises(ValueError):
        ilfp(index, 0, 2, 1)
    with pytest.raises(ValueError):
        ilfp(index, 2, 4, 1)
    with pytest.raises(ValueError):
        ilfp(index, 1, 2, 0)


# -- LFS ------------------------------------------------------------------------


def test_lfs_dict_golden():
    index = build_lfs_index(EXAMPLE_DICT)
    # two longest qualifying substrings of length 2 exist ("ba" and "an");
    # the smallest-start rule picks "ba" at position 1
    assert lfs_dict(index, b"banana", 3) == (1, 2)
    assert lfs_dict(index, b"banana", 7) == (1, 0)  # above d
    start, length = lfs_dict(index, b"banana", 1)
    assert length == max(
        l for l in range(7) for s in range(6 - l + 1) if count_documents(EXAMPLE_DICT, b"banana"[s:s + l]) >= 1
    )


def test_lfs_text_golden():
    index = build_lfs_text_index(b"CAGAGA$")
    assert lfs_text(index, b"AGAGA", 3) == (1, 1)  # only "A" occurs 3 times or more
    assert lfs_text(index, b"AGAGA", 1) == (1, 5)


def test_lfs_mode_guards():
    d = build_lfs_index([b"ab"])
    t = build_lfs_text_index(b"ab")
    with pytest.raises(ValueError):
        lfs_text(d, b"a", 1)
    with pytest.raises(ValueError):
        lfs_dict(t, b"a", 1)
    with pytest.raises(ValueError):
        lfs_dict(d, b"a", 0)


def test_lfs_dict_matches_brute(rng):
    for trial in range(60):
        d = rng.randint(1, 6)
        docs = [random_text(rng, max_len=16, sigma=2) for _ in range(d)]
        pattern = random_text(rng, max_len=12, sigma=3)
        index = build_lfs_index(docs, variant=rng.choice(["log", "linear"]))
        for f in range(1, d + 2):
            assert lfs_dict(index, pattern, f) == lfs_brute(
                lambda s: count_documents(docs, s), pattern, f
            ), (docs, pattern, f)


def test_lfs_text_matches_brute(rng):
    for trial in range(60):
        text = random_text(rng, max_len=24, sigma=2)
        pattern = random_text(rng, max_len=12, sigma=3)
        index = build_lfs_text_index(text, variant=rng.choice(["log", "linear"]))
        for f in range(1, len(text) + 2):
            assert lfs_text(index, pattern, f) == lfs_brute(
                lambda s: count_occurrences(text, s), pattern, f
            ), (text, pattern, f)


# -- substring complexity ---------------------------------------------------------


def test_complexity_golden():
    index = build_lfs_index(EXAMPLE_DICT)
    table = substring_complexity(index, b"banana", EXAMPLE_INTERVALS)
    assert table.cell(2, 2) == 3  # "an", "na", "ba" in 3..4 documents
    assert table.num_lengths == 6 and table.num_classes == 3
    assert table.values == complexity_brute(b"banana", EXAMPLE_DICT, EXAMPLE_INTERVALS).values


def test_complexity_single_class_counts_present_substrings(rng):
    docs = [b"abab", b"bba"]
    index = build_lfs_index(docs)
    text = b"ababba"
    table = substring_complexity(index, text, [(1, 2)])
    for i in range(1, len(text) + 1):
        present = {
            text[s: s + i]
            for s in range(len(text) - i + 1)
            if count_documents(docs, text[s: s + i]) >= 1
        }
        assert table.cell(i, 1) == len(present)


def test_complexity_matches_brute(rng):
    for trial in range(50):
        d = rng.randint(1, 6)
        docs = [random_text(rng, max_len=16, sigma=2) for _ in range(d)]
        text = random_text(rng, max_len=20, sigma=2)
        cuts = sorted(rng.sample(range(1, d + 1), rng.randint(1, d)))
        intervals, lo = [], 1
        for c in cuts:
            if lo <= c:
                intervals.append((lo, c))
                lo = c + 1
        if lo <= d:
            intervals.append((lo, d))
        index = build_lfs_index(docs, variant=rng.choice(["log", "linear"]))
        got = substring_complexity(index, text, intervals)
        expect = complexity_brute(text, docs, intervals)
        assert got.values == expect.values, (docs, text, intervals)


def test_complexity_row_sums(rng):
    # summing a full partition counts every distinct substring present in D
    docs = [random_text(rng, max_len=12) for _ in range(4)]
    text = random_text(rng, max_len=15)
    index = build_lfs_index(docs)
    table = substring_complexity(index, text, [(1, 4)])
    split = substring_complexity(index, text, [(1, 1), (2, 4)])
    for i in range(1, len(text) + 1):
        assert table.cell(i, 1) == split.cell(i, 1) + split.cell(i, 2)


def test_check_intervals():
    check_intervals([(1, 2), (3, 4)], 4)
    with pytest.raises(ValueError):
        check_intervals([], 4)
    with pytest.raises(ValueError):
        check_intervals([(0, 2)], 4)
    with pytest.raises(ValueError):
        check_intervals([(1, 5)], 4)
    with pytest.raises(ValueError):
        check_intervals([(1, 2), (2, 3)], 4)  # overlap
    with pytest.raises(ValueError):
        check_intervals([(3, 4), (1, 2)], 4)  # out of order
    with pytest.raises(ValueError):
        check_intervals([(2, 1)], 4)


def test_table_tsv():
    table = ComplexityTable(values=[[1, 0], [2, 3]], intervals=[(1, 1), (2, 2)])
    lines = table.to_tsv().splitlines()
    assert lines[0] == "length\t1-1\t2-2"
    assert lines[1] == "1\t1\t0"
    assert lines[2] == "2\t2\t3"
