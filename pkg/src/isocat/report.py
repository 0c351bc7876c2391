"""Report emission: fixed-schema JSON and a text layout mirroring the
two-tables-per-group presentation (generator table, then verdict table)."""

from __future__ import annotations

import json
from pathlib import Path

from .pipeline import Report, TYPE_NAMES


def report_to_dict(report: Report) -> dict:
    buckets = []
    for key, groups in report.buckets:
        bucket = {"order_list": list(key), "groups": []}
        for gr in groups:
            bucket["groups"].append({
                "name": gr.name,
                "rigid": gr.rigid,
                "records": [
                    {
                        "subgroup": list(rec.subgroup_words),
                        "type": TYPE_NAMES[rec.type],
                        "invariant": rec.invariant if isinstance(rec.invariant, bool)
                                     else list(rec.invariant),
                        "twist_isomorphic": rec.twist_isomorphic,
                        "partner": rec.partner,
                    }
                    for rec in gr.records
                ],
            })
        buckets.append(bucket)
    return {"buckets": buckets, "pairs": [list(p) for p in report.pairs]}


def report_from_dict(data: dict) -> dict:
    """Round-trip helper: canonicalize a parsed report for comparison."""
    return json.loads(json.dumps(data, sort_keys=True))


def emit_json(report: Report) -> str:
    return json.dumps(report_to_dict(report), indent=1, sort_keys=True) + "\n"


def _mark(v) -> str:
    if v is True:
        return "O"
    if v is False:
        return "X"
    return "-"


def emit_text(report: Report) -> str:
    lines = []
    w = lines.append
    w("isocategorical classification report")
    w("bucket members are numbered by corpus file index; 'partner#' points at")
    w("the bucket member isomorphic to the twisted group (own index when the")
    w("twist stays isomorphic to the source)")
    w("")
    for key, groups in report.buckets:
        ol = "[" + ",".join(str(c) for c in key) + "]"
        w(f"== order list {ol}  ({len(groups)} group{'s' if len(groups) > 1 else ''}) ==")
        for own_index, gr in enumerate(groups, 1):
            w("")
            w(f"-- {own_index}. {gr.name}  ({'rigid' if gr.rigid else 'NOT RIGID'}) --")
            for note in gr.annotations:
                w(f"   note: {note}")
            if gr.generator_words:
                k = max(i for i, _, _ in gr.generator_words)
                cells = {(i, j): word for i, j, word in gr.generator_words}
                if len(cells) == k * k:
                    width = max(max(len(v) for v in cells.values()), 4)
                    head = "       | " + " | ".join(f"f{j}".ljust(width) for j in range(1, k + 1))
                    w("   generator products:")
                    w("   " + head)
                    for i in range(1, k + 1):
                        row = " | ".join(cells[(i, j)].ljust(width) for j in range(1, k + 1))
                        w(f"      f{i} | {row}")
            if gr.records:
                w("   candidate subgroups and twisted groups:")
                w("      subgroup                       | structure    | G-inv        | Gw iso G | partner#")
                for rec in gr.records:
                    sub = "[" + ", ".join(rec.subgroup_words) + "]"
                    inv = (_mark(rec.invariant) if isinstance(rec.invariant, bool)
                           else ",".join(str(i) for i in rec.invariant) or "X")
                    tw = _mark(rec.twist_isomorphic)
                    pn = (str(rec.partner_index) if rec.partner_index is not None
                          else (str(own_index) if rec.twist_isomorphic else "-"))
                    w(f"      {sub:30s} | {TYPE_NAMES[rec.type]:12s} | {inv:12s} | "
                      f"{tw:8s} | {pn}")
            elif not gr.rigid:
                w("   (no records)")
        w("")
    w(f"isocategorical non-isomorphic pairs: {len(report.pairs)}")
    for a, b in report.pairs:
        w(f"   {a}  <->  {b}")
    w("")
    return "\n".join(lines)


def emit_report(report: Report, fmt: str = "text", out=None) -> str:
    if fmt == "json":
        text = emit_json(report)
    elif fmt == "text":
        text = emit_text(report)
    else:
        raise ValueError(f"unknown report format {fmt!r}")
    if out is not None:
        Path(out).write_text(text)
    return text
