"""Figure rendering for classification reports (written next to the reports)."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .pipeline import Report, TYPE_NAMES


def render_report_figures(report: Report, out_dir) -> list[Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []

    paired = {name for pair in report.pairs for name in pair}

    # bucket sizes, pair-carrying buckets highlighted
    keys = [key for key, _ in report.buckets]
    sizes = [len(groups) for _, groups in report.buckets]
    colors = ["#d62728" if any(g.name in paired for g in groups) else "#1f77b4"
              for _, groups in report.buckets]
    fig, ax = plt.subplots(figsize=(12, 4))
    ax.bar(range(len(keys)), sizes, color=colors)
    ax.set_xticks(range(len(keys)))
    ax.set_xticklabels(["[" + ",".join(map(str, k)) + "]" for k in keys],
                       rotation=90, fontsize=6)
    ax.set_ylabel("groups in bucket")
    ax.set_title("order-list buckets (red: bucket contains a non-rigid pair)")
    fig.tight_layout()
    p = out / "bucket_sizes.png"
    fig.savefig(p, dpi=150)
    plt.close(fig)
    written.append(p)

    # verdict summary per subgroup type
    counts: dict[tuple[str, str], int] = {}
    for _, groups in report.buckets:
        for gr in groups:
            for rec in gr.records:
                inv = rec.invariant if isinstance(rec.invariant, bool) else bool(rec.invariant)
                if not inv:
                    verdict = "not invariant"
                elif rec.twist_isomorphic:
                    verdict = "twist iso to source"
                else:
                    verdict = "twist gives partner"
                counts[(TYPE_NAMES[rec.type], verdict)] = counts.get(
                    (TYPE_NAMES[rec.type], verdict), 0) + 1
    types = sorted({t for t, _ in counts})
    verdicts = ["not invariant", "twist iso to source", "twist gives partner"]
    fig, ax = plt.subplots(figsize=(7, 4))
    bottom = [0.0] * len(types)
    palette = {"not invariant": "#999999",
               "twist iso to source": "#1f77b4",
               "twist gives partner": "#d62728"}
    for verdict in verdicts:
        vals = [counts.get((t, verdict), 0) for t in types]
        ax.bar(types, vals, bottom=bottom, label=verdict, color=palette[verdict])
        bottom = [b + v for b, v in zip(bottom, vals)]
    ax.set_ylabel("verdict-table rows")
    ax.set_title("candidate subgroup outcomes by type")
    ax.legend()
    fig.tight_layout()
    p = out / "verdict_summary.png"
    fig.savefig(p, dpi=150)
    plt.close(fig)
    written.append(p)

    return written
