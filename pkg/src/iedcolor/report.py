"""Figures for the benchmark harness (written to files, never shown)."""

from __future__ import annotations

from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def plot_trials(counts: Sequence[int], reference: float, path: str, title: str = "") -> None:
    """Histogram of per-trial iteration counts with the n·R·ln R reference line."""
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.hist(counts, bins=min(30, max(5, len(set(counts)))), color="#4c72b0")
    ax.axvline(reference, color="#c44e52", linestyle="--", label="n R ln R")
    ax.set_xlabel("iterations")
    ax.set_ylabel("trials")
    if title:
        ax.set_title(title)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def plot_scaling(sizes: Sequence[int], means: Sequence[float], maxima: Sequence[int], path: str, title: str = "") -> None:
    """Mean and max iterations against the number of hypergraph vertices."""
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(sizes, means, "o-", label="mean")
    ax.plot(sizes, maxima, "s--", label="max")
    ax.plot(sizes, sizes, ":", color="gray", label="n")
    ax.set_xlabel("vertices n")
    ax.set_ylabel("iterations")
    if title:
        ax.set_title(title)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
