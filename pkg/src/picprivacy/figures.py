"""Matplotlib renderings written next to the delimited report files."""

from __future__ import annotations

from pathlib import Path
from typing import Mapping, Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .evaluation import CvCell

_PNG_METADATA = {"Software": "picprivacy"}


def save_pr_curve_figure(curves: Mapping[str, Sequence[tuple[float, float, float]]],
                         path: str | Path, title: str = "Private-class precision-recall") -> None:
    """Plot one or more private-class PR sweeps (recall on x, precision on y)."""
    fig, ax = plt.subplots(figsize=(5.0, 4.0))
    for label, points in curves.items():
        recalls = [p[2] for p in points]
        precisions = [p[1] for p in points]
        ax.plot(recalls, precisions, marker=".", markersize=3, linewidth=1.2, label=label)
    ax.set_xlabel("Recall")
    ax.set_ylabel("Precision")
    ax.set_xlim(0.0, 1.02)
    ax.set_ylim(0.0, 1.02)
    ax.grid(True, alpha=0.3)
    ax.set_title(title)
    if curves:
        ax.legend(loc="lower left", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150, metadata=_PNG_METADATA)
    plt.close(fig)


def save_cv_table_figure(table: Sequence[CvCell], path: str | Path,
                         title: str = "Cross-validation accuracy") -> None:
    """Bar chart of mean CV accuracy per grid point, with std error bars."""
    cells = [c for c in table if c.error is None]
    fig, ax = plt.subplots(figsize=(max(5.0, 0.6 * len(cells)), 4.0))
    labels = [f"C={c.c:g}\n{c.kernel.kind}" for c in cells]
    means = [c.mean_accuracy for c in cells]
    stds = [c.std_accuracy for c in cells]
    ax.bar(range(len(cells)), means, yerr=stds, capsize=3, color="#4878a8")
    ax.set_xticks(range(len(cells)))
    ax.set_xticklabels(labels, fontsize=7)
    ax.set_ylabel("Mean CV accuracy")
    ax.set_ylim(0.0, 1.05)
    ax.grid(True, axis="y", alpha=0.3)
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150, metadata=_PNG_METADATA)
    plt.close(fig)
