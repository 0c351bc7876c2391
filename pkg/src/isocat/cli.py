"""Command-line interface.

Exit codes: 0 success, 2 corpus/input errors, 3 invariant violations.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import cocycles, twist
from .groups import NotAGroup, order_list, subgroup
from .iso import are_isomorphic
from .pipeline import (
    CorpusError, InvariantViolation, PartnerNotFound, classify_corpus,
    element_words,
)
from .presentation import (
    Overflow, ParseError, parse_group_file, product_table_text, realize,
)
from .report import emit_report


def _load_group(path):
    pres = parse_group_file(Path(path).read_text())
    G = realize(pres)
    for note in pres.annotations:
        print(f"note [{pres.name}]: {note}", file=sys.stderr)
    return G


def cmd_classify(args) -> int:
    report = classify_corpus(args.corpus, jobs=args.jobs)
    text = emit_report(report, fmt=args.format, out=args.out)
    if args.out is None:
        sys.stdout.write(text)
    if args.figures:
        from .figures import render_report_figures

        for p in render_report_figures(report, args.figures):
            print(f"wrote {p}", file=sys.stderr)
    return 0


def cmd_orderlist(args) -> int:
    G = _load_group(args.file)
    print(order_list(G))
    return 0


def cmd_iso(args) -> int:
    G, H = _load_group(args.file1), _load_group(args.file2)
    witness = are_isomorphic(G, H)
    if witness is None:
        print("not-isomorphic")
    else:
        print("isomorphic")
        if args.witness:
            print(" ".join(str(v) for v in witness.mapping))
    return 0


def _parse_subgroup_words(G, spec_text):
    words = element_words(G)
    index = {w: i for i, w in enumerate(words)}
    els = []
    for token in spec_text.split(","):
        token = token.strip()
        if token not in index:
            raise CorpusError(f"no element with word {token!r} "
                              f"(words follow the file's generators)")
        els.append(index[token])
    return els


def cmd_twist(args) -> int:
    G = _load_group(args.group)
    els = _parse_subgroup_words(G, args.subgroup)
    N = subgroup(G, els)
    B = cocycles.basis_from_generators(N, els)
    reps = cocycles.nondegenerate_reps(B.type)
    by_index = {w.index: w for w in reps}
    if args.cocycle not in by_index:
        raise CorpusError(f"type {B.type} has representatives "
                          f"{sorted(by_index)}; got {args.cocycle}")
    w = by_index[args.cocycle]
    if not cocycles.is_g_invariant(G, B, w):
        print("cocycle is not invariant; no twisted group", file=sys.stderr)
        return 3
    T = twist.twisted_group(G, B, w)
    out = Path(args.out) if args.out else Path(f"{G.name}_twist.grp")
    out.write_text(product_table_text(T.group, name=f"{G.name}_twist"))
    print(f"wrote {out}")
    if args.emit_relations:
        words = element_words(G)
        for i, j, k in twist.twist_relations(G, B, w):
            print(f"{words[i]} * {words[j]} = {words[k]}")
    if args.emit_table:
        sys.stdout.write(product_table_text(T.group, name=f"{G.name}_twist"))
    return 0


def cmd_cocycles(args) -> int:
    t = {"c2x2": (2, 2), "c4x4": (4, 4), "c2x4": (2, 2, 2, 2)}[args.type]
    for w in cocycles.nondegenerate_reps(t):
        print(f"#{w.index}: {w.describe()}")
        if w.lam is not None:
            for row in w.lam:
                print("    " + " ".join(str(v) for v in row))
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="isocat")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", help="classify a corpus directory")
    c.add_argument("--corpus", required=True)
    c.add_argument("--format", choices=("text", "json"), default="text")
    c.add_argument("--out", default=None)
    c.add_argument("--jobs", type=int, default=1)
    c.add_argument("--figures", default=None, metavar="DIR")
    c.set_defaults(func=cmd_classify)

    o = sub.add_parser("orderlist", help="order list of one group file")
    o.add_argument("file")
    o.set_defaults(func=cmd_orderlist)

    i = sub.add_parser("iso", help="isomorphism test for two group files")
    i.add_argument("file1")
    i.add_argument("file2")
    i.add_argument("--witness", action="store_true")
    i.set_defaults(func=cmd_iso)

    t = sub.add_parser("twist", help="twist a group by a cocycle")
    t.add_argument("--group", required=True)
    t.add_argument("--subgroup", required=True,
                   help="comma-separated generator words, e.g. 'f1f4,f2'")
    t.add_argument("--cocycle", type=int, required=True, metavar="IDX")
    t.add_argument("--out", default=None)
    t.add_argument("--emit-relations", action="store_true")
    t.add_argument("--emit-table", action="store_true")
    t.set_defaults(func=cmd_twist)

    k = sub.add_parser("cocycles", help="print cocycle representatives")
    k.add_argument("--type", choices=("c2x2", "c4x4", "c2x4"), required=True)
    k.set_defaults(func=cmd_cocycles)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (CorpusError, ParseError, Overflow, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (InvariantViolation, PartnerNotFound, NotAGroup,
            twist.NotInvariant, twist.OddNumerator, twist.NoSuchElement,
            twist.EtaMethodDisagreement, cocycles.TypeMismatch,
            cocycles.UnsupportedType, cocycles.NotNormal) as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
