"""Figure rendering for CLI reports.

Each report command can emit a PNG next to its delimited output. Figures
are rendered headlessly (Agg) and mirror the tabular content: EIG bars or
histograms for rankings, EIG-vs-sample-size lines for curves, and
realized-information plots for empirical data.
"""

from __future__ import annotations

from typing import Any, Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

__all__ = ["plot_rank", "plot_curve", "plot_aig"]

_BAR_LIMIT = 24  # above this a ranking is summarized as a histogram


def plot_rank(reports: Sequence[Any], path: str) -> None:
    """Bar chart (small spaces) or histogram (large sweeps) of ranked EIG."""
    fig, ax = plt.subplots(figsize=(7, 4.5))
    if len(reports) <= _BAR_LIMIT:
        keys = [r.key for r in reports]
        vals = [r.eig for r in reports]
        ypos = range(len(reports))
        ax.barh(ypos, vals, color="#3b6ea5")
        ax.set_yticks(list(ypos), keys)
        ax.invert_yaxis()
        ax.set_xlabel("expected information gain (nats)")
        ax.set_ylabel("experiment")
    else:
        vals = [r.eig for r in reports]
        ax.hist(vals, bins=40, color="#3b6ea5")
        ax.axvline(max(vals), color="#b23a48", linestyle="--", label="optimal")
        ax.set_xlabel("expected information gain (nats)")
        ax.set_ylabel("number of experiments")
        ax.legend()
    ax.set_title("Experiment ranking by expected information gain")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_curve(rows: Sequence[tuple[str, int, float]], path: str) -> None:
    """EIG versus sample size, one line per experiment."""
    fig, ax = plt.subplots(figsize=(7, 4.5))
    by_exp: dict[str, list[tuple[int, float]]] = {}
    for key, n, eig in rows:
        by_exp.setdefault(key, []).append((n, eig))
    for key, pts in sorted(by_exp.items()):
        pts = sorted(pts)
        ax.plot([p[0] for p in pts], [p[1] for p in pts], marker="o", ms=3, label=key)
    ax.set_xlabel("participants")
    ax.set_ylabel("expected information gain (nats)")
    ax.set_title("Expected information gain vs sample size")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_aig(rows: Sequence[dict], path: str, prefix: bool) -> None:
    """Prefix mode: AIG vs cumulative batches; else AIG against EIG."""
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ok = [r for r in rows if r.get("error") is None]
    if prefix:
        by_exp: dict[str, list[tuple[int, float]]] = {}
        for r in ok:
            by_exp.setdefault(r["experiment"], []).append((r["k"], r["aig_nats"]))
        for key, pts in sorted(by_exp.items()):
            pts = sorted(pts)
            ax.plot([p[0] for p in pts], [p[1] for p in pts], marker="o", ms=3, label=key)
        ax.set_xlabel("data batches included")
        ax.set_ylabel("actual information gain (nats)")
        ax.set_title("Actual information gain vs data included")
        ax.legend()
    else:
        ax.scatter(
            [r["eig_nats"] for r in ok], [r["aig_nats"] for r in ok], color="#3b6ea5"
        )
        lim = max([r["eig_nats"] for r in ok] + [r["aig_nats"] for r in ok] + [1e-6])
        ax.plot([0, lim], [0, lim], color="gray", linestyle=":", lw=1)
        ax.set_xlabel("expected information gain (nats)")
        ax.set_ylabel("actual information gain (nats)")
        ax.set_title("Actual vs expected information gain")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
