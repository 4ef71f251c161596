"""Report figures, rendered to files next to the delimited exports."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


def _pairs_and_methods(reports: list[dict]) -> tuple[list[str], list[str]]:
    pairs = sorted({f"{r['source']}→{r['target']}" for r in reports})
    methods = sorted({r["method"] for r in reports})
    return pairs, methods


def _grouped_bars(reports: list[dict], value, ylabel: str, title: str, path: Path) -> None:
    pairs, methods = _pairs_and_methods(reports)
    lookup = {(f"{r['source']}→{r['target']}", r["method"]): value(r) for r in reports}
    x = np.arange(len(pairs))
    width = 0.8 / max(len(methods), 1)
    fig, ax = plt.subplots(figsize=(max(6, 1.6 * len(pairs)), 4))
    for m, method in enumerate(methods):
        heights = [lookup.get((p, method), np.nan) for p in pairs]
        ax.bar(x + m * width, heights, width, label=method)
    ax.set_xticks(x + width * (len(methods) - 1) / 2)
    ax.set_xticklabels(pairs, rotation=30, ha="right")
    ax.set_ylabel(ylabel)
    ax.set_title(title)
    ax.legend()
    fig.tight_layout()
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=120)
    plt.close(fig)


def modularity_figure(reports: list[dict], path: str | Path) -> Path:
    path = Path(path)
    _grouped_bars(
        reports,
        value=lambda r: r["modularity"]["normalized_modularity"],
        ylabel="normalized modularity (lower = better mixing)",
        title="Cross-domain cluster separation by alignment method",
        path=path,
    )
    return path


def salience_figure(reports: list[dict], path: str | Path) -> Path:
    path = Path(path)
    _grouped_bars(
        reports,
        value=lambda r: r["salience"]["mean_normalized"],
        ylabel="mean normalized salient cosine (higher = tighter mapping)",
        title="Salient-term mapping tightness by alignment method",
        path=path,
    )
    return path
