import io
import json
import os

from swatree.cli import run
from swatree.treecore import build_tree, compute_sizes, format_tree

from conftest import GOLDEN_EDGES


def invoke(argv):
    out = io.StringIO()
    code = run(argv, out=out)
    return code, out.getvalue()


def golden_tree_file(tmp_path):
    tree = build_tree(GOLDEN_EDGES)
    weights = compute_sizes(tree)
    path = tmp_path / "tree.txt"
    path.write_text(format_tree(tree, weights))
    return str(path)


def write(tmp_path, name, data):
    path = tmp_path / name
    if isinstance(data, bytes):
        path.write_bytes(data)
    else:
        path.write_text(data)
    return str(path)


# -- swa ---------------------------------------------------------------------


def test_swa_golden_query(tmp_path):
    tree = golden_tree_file(tmp_path)
    queries = write(tmp_path, "q.txt", "2 7\n1 17\n")
    for variant in ("log", "linear"):
        code, out = invoke(["swa", tree, queries, "--variant", variant])
        assert code == 0
        assert out == "2\t7\t5\n1\t17\t-\n"


def test_swa_jsonl(tmp_path):
    tree = golden_tree_file(tmp_path)
    queries = write(tmp_path, "q.txt", "2 7\n")
    code, out = invoke(["swa", tree, queries, "--format", "jsonl"])
    assert code == 0
    assert json.loads(out) == {"u": 2, "k": 7, "answer": 5}


def test_swa_query_errors_keep_batch_running(tmp_path):
    tree = golden_tree_file(tmp_path)
    queries = write(tmp_path, "q.txt", "2 7\nbogus line\n99 1\n2 0\n3 3\n")
    code, out = invoke(["swa", tree, queries])
    lines = out.splitlines()
    assert code == 0
    assert len(lines) == 5
    assert lines[0] == "2\t7\t5"
    assert "ERR" in lines[1] and "ERR" in lines[2] and "ERR" in lines[3]
    assert lines[4] == "3\t3\t3"


def test_swa_malformed_tree_exits_2(tmp_path, capsys):
    bad = write(tmp_path, "bad.txt", "3\n1 0 3\n2 1 two\n3 1 1\n")
    queries = write(tmp_path, "q.txt", "1 1\n")
    code, _ = invoke(["swa", bad, queries])
    assert code == 2
    assert "line 3" in capsys.readouterr().err


def test_swa_verify_flag(tmp_path):
    tree = golden_tree_file(tmp_path)
    queries = write(tmp_path, "q.txt", "\n".join(f"{u} {k}" for u in (1, 5, 16) for k in (1, 7, 16)) + "\n")
    code, out = invoke(["swa", tree, queries, "--verify"])
    assert code == 0
    assert len(out.splitlines()) == 9


# -- string subcommands --------------------------------------------------------


def test_ilfp_golden(tmp_path):
    text = write(tmp_path, "x.txt", b"CAGAGA$")
    queries = write(tmp_path, "q.txt", "2 7 3\n2 7 8\n0 1 1\n")
    code, out = invoke(["ilfp", text, queries, "--verify"])
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "2\t7\t3\t1"
    assert lines[1] == "2\t7\t8\t0"
    assert "ERR" in lines[2]


def test_lfs_dict_lines(tmp_path):
    dicts = write(tmp_path, "d.txt", b"a\nananan\nbaba\nban\nbanna\nnana\n")
    pattern = write(tmp_path, "p.txt", b"banana")
    code, out = invoke(["lfs", "--dict-lines", dicts, pattern, "3", "--verify"])
    assert code == 0
    assert out == "1\t2\n"


def test_lfs_dict_dir(tmp_path):
    docdir = tmp_path / "docs"
    docdir.mkdir()
    for i, doc in enumerate([b"abab", b"bba"]):
        (docdir / f"doc{i}.txt").write_bytes(doc)
    pattern = write(tmp_path, "p.txt", b"abba")
    code, out = invoke(["lfs", "--dict-dir", str(docdir), pattern, "2"])
    assert code == 0
    start, length = (int(x) for x in out.split())
    assert length == 2  # "ab" and "ba" are both in two documents


def test_lfs_text(tmp_path):
    text = write(tmp_path, "x.txt", b"CAGAGA$")
    pattern = write(tmp_path, "p.txt", b"AGAGA")
    code, out = invoke(["lfs-text", text, pattern, "3", "--verify"])
    assert code == 0
    assert out == "1\t1\n"


def test_complexity_golden(tmp_path):
    dicts = write(tmp_path, "d.txt", b"a\nananan\nbaba\nban\nbanna\nnana\n")
    text = write(tmp_path, "x.txt", b"banana")
    code, out = invoke(
        ["complexity", "--dict-lines", dicts, text, "--intervals", "1-2,3-4,5-6", "--verify"]
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "length\t1-2\t3-4\t5-6"
    row2 = lines[2].split("\t")
    assert row2[0] == "2" and row2[2] == "3"


def test_complexity_bad_intervals(tmp_path, capsys):
    dicts = write(tmp_path, "d.txt", b"a\nb\n")
    text = write(tmp_path, "x.txt", b"ab")
    code, _ = invoke(["complexity", "--dict-lines", dicts, text, "--intervals", "1-1"])
    assert code == 2
    assert "partition" in capsys.readouterr().err
    code, _ = invoke(["complexity", "--dict-lines", dicts, text, "--intervals", "nonsense"])
    assert code == 2


def test_complexity_jsonl(tmp_path):
    dicts = write(tmp_path, "d.txt", b"ab\nba\n")
    text = write(tmp_path, "x.txt", b"aba")
    code, out = invoke(["complexity", "--dict-lines", dicts, text, "--intervals", "1-2", "--format", "jsonl"])
    assert code == 0
    rows = [json.loads(line) for line in out.splitlines()]
    assert rows[0]["length"] == 1 and "1-2" in rows[0]


# -- bench and verify ------------------------------------------------------------


def test_bench_writes_report_and_figures(tmp_path):
    out_dir = tmp_path / "bench"
    code, out = invoke(
        ["bench", "--sizes", "64,128", "--families", "path,random-attachment",
         "--queries", "50", "--out-dir", str(out_dir), "--seed", "7"]
    )
    assert code == 0
    assert out.splitlines()[0].startswith("family\tn\tbuild_s")
    assert len(out.splitlines()) == 5  # header + 2 families x 2 sizes
    for name in ("bench.tsv", "build_time.png", "query_latency.png", "space.png"):
        assert (out_dir / name).exists()
    assert (out_dir / "bench.tsv").read_text() == out


def test_bench_deterministic_for_fixed_seed(tmp_path):
    args = ["bench", "--sizes", "64", "--families", "star", "--queries", "10",
            "--seed", "3", "--out-dir", str(tmp_path / "b")]
    _, out1 = invoke(args)
    _, out2 = invoke(args)
    split1 = [line.split("\t") for line in out1.splitlines()]
    split2 = [line.split("\t") for line in out2.splitlines()]
    # timings jitter; structural columns must match exactly
    for r1, r2 in zip(split1, split2):
        assert r1[:2] == r2[:2] and r1[6:] == r2[6:]


def test_verify_subcommand(tmp_path):
    code, out = invoke(["verify", "--sizes", "32,64", "--families", "path,random-binary",
                        "--queries", "60", "--seed", "1", "--strings"])
    assert code == 0
    lines = out.splitlines()
    assert all(line.endswith("OK") for line in lines)
    assert sum(1 for line in lines if line.startswith("swa")) == 8  # 2 families x 2 sizes x 2 weight styles
    assert sum(1 for line in lines if line.startswith("ilfp")) == 10
