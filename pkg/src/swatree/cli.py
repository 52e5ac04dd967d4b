"""Command-line front end.

Subcommands: swa, ilfp, lfs, lfs-text, complexity, bench, verify.
Indexes are rebuilt per invocation; there is no on-disk index format.
Malformed input files exit with code 2 and a line-numbered diagnostic;
per-query domain errors print "ERR <reason>" on the matching output line
and the batch continues with exit code 0.
"""

import argparse
import json
import os
import random
import statistics
import sys
import time

from .apps import (
    build_ilfp_index,
    build_lfs_index,
    build_lfs_text_index,
    check_intervals,
    ilfp,
    lfs_dict,
    lfs_text,
    substring_complexity,
)
from .generators import FAMILIES, random_heap_weights, size_weights
from .oracles import count_documents, count_occurrences, swa_brute
from .swa_linear import build_swa_linear, swa_query_linear
from .swa_log import build_swa_log, swa_query_log
from .treecore import TreeFormatError, read_tree_file


def _add_common(sub):
    sub.add_argument("--variant", choices=["log", "linear"], default="linear")
    sub.add_argument("--epsilon", type=float, default=1.0)
    sub.add_argument("--eager-table", action="store_true")
    sub.add_argument("--format", choices=["tsv", "jsonl"], default="tsv")
    sub.add_argument("--verify", action="store_true", help="recheck every answer against a brute-force oracle")


def _add_dict_source(sub):
    grp = sub.add_mutually_exclusive_group(required=True)
    grp.add_argument("--dict-lines", metavar="FILE", help="dictionary file, one document per line")
    grp.add_argument("--dict-dir", metavar="DIR", help="directory of document files")


def build_parser():
    p = argparse.ArgumentParser(
        prog="swatree",
        description="Size-constrained weighted ancestor queries on trees, with string applications.",
    )
    subs = p.add_subparsers(dest="command", required=True)

    s = subs.add_parser("swa", help="batch SWA queries on a tree file")
    s.add_argument("tree", help="tree file: first line n, then 'node parent weight' lines (parent 0 = root)")
    s.add_argument("queries", nargs="?", help="query lines 'u k' (default: stdin)")
    _add_common(s)

    s = subs.add_parser("ilfp", help="longest frequent prefix queries inside a text")
    s.add_argument("text", help="text file (raw bytes)")
    s.add_argument("queries", nargs="?", help="query lines 'i j f' (default: stdin)")
    _add_common(s)

    s = subs.add_parser("lfs", help="longest substring of a pattern occurring in >= f documents")
    _add_dict_source(s)
    s.add_argument("pattern", help="pattern file (raw bytes)")
    s.add_argument("threshold", type=int, help="document frequency threshold f")
    _add_common(s)

    s = subs.add_parser("lfs-text", help="longest substring of a pattern occurring >= f times in a text")
    s.add_argument("text", help="text file (raw bytes)")
    s.add_argument("pattern", help="pattern file (raw bytes)")
    s.add_argument("threshold", type=int, help="occurrence threshold f")
    _add_common(s)

    s = subs.add_parser("complexity", help="frequency-constrained substring complexity table")
    _add_dict_source(s)
    s.add_argument("text", help="text file (raw bytes)")
    s.add_argument("--intervals", required=True, metavar="SPEC", help='interval partition "a1-b1,a2-b2,..." covering [1,d]')
    _add_common(s)

    s = subs.add_parser("bench", help="build/query/space benchmark sweep with figures")
    s.add_argument("--sizes", default="1024,4096,16384,65536", help="comma-separated tree sizes")
    s.add_argument("--families", default="random-attachment", help=f"comma-separated families from {sorted(FAMILIES)}")
    s.add_argument("--queries", type=int, default=1000, help="timed queries per size")
    s.add_argument("--out-dir", default="bench_out", help="directory for the TSV report and figures")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--variant", choices=["log", "linear"], default="linear")
    s.add_argument("--epsilon", type=float, default=1.0)
    s.add_argument("--eager-table", action="store_true")

    s = subs.add_parser("verify", help="re-check sampled indexed answers against brute-force oracles")
    s.add_argument("--sizes", default="64,256,1024", help="comma-separated tree sizes")
    s.add_argument("--families", default="path,star,caterpillar,random-binary,random-attachment")
    s.add_argument("--queries", type=int, default=200, help="sampled queries per case")
    s.add_argument("--strings", action="store_true", help="also verify the string applications")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--epsilon", type=float, default=1.0)

    return p


# -- input helpers ------------------------------------------------------------


def _read_bytes(path):
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        raise TreeFormatError(0, f"cannot read {path}: {exc.strerror}") from exc
    return data.rstrip(b"\r\n")


def _read_docs(args):
    if args.dict_lines:
        try:
            with open(args.dict_lines, "rb") as fh:
                raw = fh.read()
        except OSError as exc:
            raise TreeFormatError(0, f"cannot read {args.dict_lines}: {exc.strerror}") from exc
        docs = [ln.rstrip(b"\r") for ln in raw.split(b"\n")]
        if docs and docs[-1] == b"":
            docs.pop()
        if not docs:
            raise TreeFormatError(1, "empty dictionary file")
        return docs
    try:
        names = sorted(os.listdir(args.dict_dir))
    except OSError as exc:
        raise TreeFormatError(0, f"cannot read {args.dict_dir}: {exc.strerror}") from exc
    docs = [_read_bytes(os.path.join(args.dict_dir, name)) for name in names if os.path.isfile(os.path.join(args.dict_dir, name))]
    if not docs:
        raise TreeFormatError(0, f"no document files in {args.dict_dir}")
    return docs


def _query_lines(args):
    if args.queries:
        with open(args.queries, "r", encoding="ascii") as fh:
            return fh.read().splitlines()
    return sys.stdin.read().splitlines()


def _parse_intervals(spec, d):
    intervals = []
    for part in spec.split(","):
        piece = part.strip()
        try:
            a, b = piece.split("-")
            intervals.append((int(a), int(b)))
        except ValueError:
            raise TreeFormatError(0, f"bad interval {piece!r}, expected 'a-b'") from None
    try:
        check_intervals(intervals, d)
    except ValueError as exc:
        raise TreeFormatError(0, str(exc)) from None
    covered = sum(b - a + 1 for a, b in intervals)
    if intervals[0][0] != 1 or intervals[-1][1] != d or covered != d:
        raise TreeFormatError(0, f"intervals must partition [1,{d}]")
    return intervals


def _emit(out, fmt, fields):
    if fmt == "jsonl":
        out.write(json.dumps(fields, separators=(",", ":")) + "\n")
    else:
        out.write("\t".join(str(v) for v in fields.values()) + "\n")


# -- subcommands ---------------------------------------------------------------


def _cmd_swa(args, out):
    tree, weights = read_tree_file(args.tree)
    if args.variant == "log":
        index = build_swa_log(tree, weights)
        query = swa_query_log
    else:
        index = build_swa_linear(tree, weights, epsilon=args.epsilon, eager_table=args.eager_table)
        query = swa_query_linear
    failures = 0
    for line in _query_lines(args):
        if not line.strip():
            continue
        try:
            u, k = (int(x) for x in line.split())
        except ValueError:
            _emit(out, args.format, {"query": line.strip(), "error": "ERR expected 'u k'"})
            continue
        try:
            ans = query(index, u, k)
        except ValueError as exc:
            _emit(out, args.format, {"u": u, "k": k, "error": f"ERR {exc}"})
            continue
        if args.verify and ans != swa_brute(tree, weights, u, k):
            print(f"VERIFY MISMATCH: u={u} k={k} got {ans}", file=sys.stderr)
            failures += 1
        _emit(out, args.format, {"u": u, "k": k, "answer": ans if ans is not None else "-"})
    return 1 if failures else 0


def _cmd_ilfp(args, out):
    text = _read_bytes(args.text)
    index = build_ilfp_index(text, variant=args.variant, epsilon=args.epsilon, eager_table=args.eager_table)
    failures = 0
    for line in _query_lines(args):
        if not line.strip():
            continue
        try:
            i, j, f = (int(x) for x in line.split())
        except ValueError:
            _emit(out, args.format, {"query": line.strip(), "error": "ERR expected 'i j f'"})
            continue
        try:
            length = ilfp(index, i, j, f)
        except ValueError as exc:
            _emit(out, args.format, {"i": i, "j": j, "f": f, "error": f"ERR {exc}"})
            continue
        if args.verify:
            ok = count_occurrences(text, text[i - 1: i - 1 + length]) >= f if length else True
            if length < j - i + 1 and count_occurrences(text, text[i - 1: i + length]) >= f:
                ok = False
            if not ok:
                print(f"VERIFY MISMATCH: i={i} j={j} f={f} got {length}", file=sys.stderr)
                failures += 1
        _emit(out, args.format, {"i": i, "j": j, "f": f, "length": length})
    return 1 if failures else 0


def _cmd_lfs(args, out, text_mode):
    pattern = _read_bytes(args.pattern)
    if text_mode:
        text = _read_bytes(args.text)
        index = build_lfs_text_index(text, variant=args.variant, epsilon=args.epsilon, eager_table=args.eager_table)
        start, length = lfs_text(index, pattern, args.threshold)
        counts = lambda s: count_occurrences(text, s)
    else:
        docs = _read_docs(args)
        index = build_lfs_index(docs, variant=args.variant, epsilon=args.epsilon, eager_table=args.eager_table)
        start, length = lfs_dict(index, pattern, args.threshold)
        counts = lambda s: count_documents(docs, s)
    if args.verify:
        sub = pattern[start - 1: start - 1 + length]
        ok = counts(sub) >= args.threshold if length else True
        longer = any(
            counts(pattern[i: i + length + 1]) >= args.threshold for i in range(len(pattern) - length)
        )
        if not ok or longer:
            print(f"VERIFY MISMATCH: f={args.threshold} got start={start} length={length}", file=sys.stderr)
            _emit(out, args.format, {"start": start, "length": length})
            return 1
    _emit(out, args.format, {"start": start, "length": length})
    return 0


def _cmd_complexity(args, out):
    docs = _read_docs(args)
    text = _read_bytes(args.text)
    intervals = _parse_intervals(args.intervals, len(docs))
    index = build_lfs_index(docs, variant=args.variant, epsilon=args.epsilon, eager_table=args.eager_table)
    table = substring_complexity(index, text, intervals)
    if args.verify:
        from .oracles import complexity_brute

        expect = complexity_brute(text, docs, intervals)
        if expect.values != table.values:
            print("VERIFY MISMATCH: complexity table differs from enumeration", file=sys.stderr)
            out.write(table.to_tsv())
            return 1
    if args.format == "jsonl":
        labels = [f"{a}-{b}" for a, b in intervals]
        for i, row in enumerate(table.values, start=1):
            rec = {"length": i}
            rec.update(zip(labels, row))
            out.write(json.dumps(rec, separators=(",", ":")) + "\n")
    else:
        out.write(table.to_tsv())
    return 0


def _cmd_bench(args, out):
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    sizes = [int(s) for s in args.sizes.split(",")]
    families = [f.strip() for f in args.families.split(",")]
    for fam in families:
        if fam not in FAMILIES:
            raise TreeFormatError(0, f"unknown family {fam!r}, expected one of {sorted(FAMILIES)}")
    os.makedirs(args.out_dir, exist_ok=True)
    rng = random.Random(args.seed)
    rows = []
    for fam in families:
        for n in sizes:
            tree = FAMILIES[fam](n, rng)
            weights = size_weights(tree)
            t0 = time.perf_counter()
            if args.variant == "log":
                index = build_swa_log(tree, weights)
                query = swa_query_log
            else:
                index = build_swa_linear(tree, weights, epsilon=args.epsilon, eager_table=args.eager_table)
                query = swa_query_linear
            build_s = time.perf_counter() - t0
            lat = []
            for _ in range(args.queries):
                u = rng.randint(1, n)
                k = rng.randint(1, n)
                t0 = time.perf_counter()
                query(index, u, k)
                lat.append(time.perf_counter() - t0)
            lat.sort()
            rows.append(
                {
                    "family": fam,
                    "n": n,
                    "build_s": build_s,
                    "q50_us": statistics.median(lat) * 1e6,
                    "q90_us": lat[int(0.9 * (len(lat) - 1))] * 1e6,
                    "q99_us": lat[int(0.99 * (len(lat) - 1))] * 1e6,
                    "space_words": index.space_words(),
                    "words_per_node": index.space_words() / n,
                }
            )
    header = ["family", "n", "build_s", "q50_us", "q90_us", "q99_us", "space_words", "words_per_node"]
    lines = ["\t".join(header)]
    for r in rows:
        lines.append("\t".join(f"{r[h]:.6g}" if isinstance(r[h], float) else str(r[h]) for h in header))
    report = "\n".join(lines) + "\n"
    out.write(report)
    with open(os.path.join(args.out_dir, "bench.tsv"), "w", encoding="ascii") as fh:
        fh.write(report)

    for metric, ylabel, fname in [
        ("build_s", "build time (s)", "build_time.png"),
        ("q50_us", "median query latency (us)", "query_latency.png"),
        ("words_per_node", "space (words per node)", "space.png"),
    ]:
        fig, ax = plt.subplots(figsize=(6, 4))
        for fam in families:
            pts = [(r["n"], r[metric]) for r in rows if r["family"] == fam]
            ax.plot([p[0] for p in pts], [p[1] for p in pts], marker="o", label=fam)
        ax.set_xscale("log", base=2)
        if metric == "build_s":
            ax.set_yscale("log", base=2)
        ax.set_xlabel("n")
        ax.set_ylabel(ylabel)
        ax.legend()
        fig.tight_layout()
        fig.savefig(os.path.join(args.out_dir, fname), dpi=120)
        plt.close(fig)
    return 0


def _cmd_verify(args, out):
    sizes = [int(s) for s in args.sizes.split(",")]
    families = [f.strip() for f in args.families.split(",")]
    for fam in families:
        if fam not in FAMILIES:
            raise TreeFormatError(0, f"unknown family {fam!r}, expected one of {sorted(FAMILIES)}")
    rng = random.Random(args.seed)
    failures = 0
    for fam in families:
        for n in sizes:
            tree = FAMILIES[fam](n, rng)
            for weights in (size_weights(tree), random_heap_weights(tree, rng)):
                log_index = build_swa_log(tree, weights)
                lin_index = build_swa_linear(tree, weights, epsilon=args.epsilon)
                bad = 0
                for _ in range(args.queries):
                    u = rng.randint(1, n)
                    k = rng.randint(1, max(weights) + 1)
                    expect = swa_brute(tree, weights, u, k)
                    if swa_query_log(log_index, u, k) != expect or swa_query_linear(lin_index, u, k) != expect:
                        bad += 1
                status = "OK" if not bad else f"MISMATCH ({bad}/{args.queries})"
                out.write(f"swa\t{fam}\tn={n}\t{status}\n")
                failures += bad
    if args.strings:
        alphabet = b"ab"
        for trial in range(10):
            text = bytes(rng.choice(alphabet) for _ in range(rng.randint(1, 40)))
            index = build_ilfp_index(text)
            bad = 0
            for _ in range(args.queries):
                i = rng.randint(1, len(text))
                j = rng.randint(i, len(text))
                f = rng.randint(1, len(text) + 1)
                length = ilfp(index, i, j, f)
                ok = length == 0 or count_occurrences(text, text[i - 1: i - 1 + length]) >= f
                if length < j - i + 1 and count_occurrences(text, text[i - 1: i + length]) >= f:
                    ok = False
                if not ok:
                    bad += 1
            status = "OK" if not bad else f"MISMATCH ({bad}/{args.queries})"
            out.write(f"ilfp\ttrial={trial}\t{status}\n")
            failures += bad
    return 1 if failures else 0


def run(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "swa":
            return _cmd_swa(args, out)
        if args.command == "ilfp":
            return _cmd_ilfp(args, out)
        if args.command == "lfs":
            return _cmd_lfs(args, out, text_mode=False)
        if args.command == "lfs-text":
            return _cmd_lfs(args, out, text_mode=True)
        if args.command == "complexity":
            return _cmd_complexity(args, out)
        if args.command == "bench":
            return _cmd_bench(args, out)
        if args.command == "verify":
            return _cmd_verify(args, out)
    except TreeFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    parser.error(f"unknown command {args.command!r}")


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
