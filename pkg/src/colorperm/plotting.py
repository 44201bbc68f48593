"""Figure rendering for verification reports.

Both figures are derived from the report object alone, so rendering never
re-runs any enumeration.
"""

from __future__ import annotations

from pathlib import Path

_STATUS_CODE = {"match": 0, "mismatch": 1, "skipped": 2}
_AUDIT_MISMATCH = 3


def render_report_figures(report_obj: dict, outdir: Path) -> list[Path]:
    """Write a claim-status matrix and a per-claim summary chart as PNGs."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    from matplotlib.colors import ListedColormap
    import numpy as np

    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)

    rows = report_obj["claims"]
    labels = []
    for row in rows:
        label = row["formula_id"] + (f"[{row['variant']}]" if row["variant"] else "")
        if label not in labels:
            labels.append(label)
    cells = []
    for row in rows:
        cell = (row["signature"], row["n"])
        if cell not in cells:
            cells.append(cell)

    matrix = np.full((len(labels), len(cells)), np.nan)
    for row in rows:
        i = labels.index(row["formula_id"] + (f"[{row['variant']}]" if row["variant"] else ""))
        j = cells.index((row["signature"], row["n"]))
        code = _STATUS_CODE[row["status"]]
        if code == 1 and not row["hard"]:
            code = _AUDIT_MISMATCH
        matrix[i, j] = code

    cmap = ListedColormap(["#2e7d32", "#c62828", "#9e9e9e", "#ef6c00"])
    fig, ax = plt.subplots(
        figsize=(max(6.0, 0.42 * len(cells) + 2.5), max(4.0, 0.3 * len(labels) + 1.5))
    )
    masked = np.ma.masked_invalid(matrix)
    ax.imshow(masked, cmap=cmap, vmin=-0.5, vmax=3.5, aspect="auto")
    ax.set_xticks(range(len(cells)))
    ax.set_xticklabels([f"{sig} n={n}" for sig, n in cells], rotation=90, fontsize=7)
    ax.set_yticks(range(len(labels)))
    ax.set_yticklabels(labels, fontsize=7)
    ax.set_title("claim status (green=match, red=hard mismatch, orange=audit mismatch, grey=skipped)",
                 fontsize=8)
    fig.tight_layout()
    status_path = outdir / "claims_status.png"
    fig.savefig(status_path, dpi=150)
    plt.close(fig)

    counts = {label: {"match": 0, "mismatch": 0, "audit": 0, "skipped": 0} for label in labels}
    for row in rows:
        label = row["formula_id"] + (f"[{row['variant']}]" if row["variant"] else "")
        if row["status"] == "mismatch" and not row["hard"]:
            counts[label]["audit"] += 1
        else:
            counts[label][row["status"]] += 1
    fig, ax = plt.subplots(figsize=(max(6.0, 0.5 * len(labels)), 4.0))
    xs = np.arange(len(labels))
    bottom = np.zeros(len(labels))
    for key, color in (
        ("match", "#2e7d32"),
        ("mismatch", "#c62828"),
        ("audit", "#ef6c00"),
        ("skipped", "#9e9e9e"),
    ):
        values = np.array([counts[label][key] for label in labels], dtype=float)
        ax.bar(xs, values, bottom=bottom, color=color, label=key)
        bottom += values
    ax.set_xticks(xs)
    ax.set_xticklabels(labels, rotation=90, fontsize=7)
    ax.set_ylabel("grid cells")
    ax.legend(fontsize=7)
    ax.set_title("claim outcomes across the grid", fontsize=9)
    fig.tight_layout()
    summary_path = outdir / "claims_summary.png"
    fig.savefig(summary_path, dpi=150)
    plt.close(fig)

    return [status_path, summary_path]
