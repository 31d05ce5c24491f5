"""Figures for the count table."""

from __future__ import annotations

from typing import Iterable

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def plot_counts(stats: Iterable, path: str) -> None:
    """Number of classes against vertex count, one line per dimension, on a
    log scale. The file type follows the extension of ``path``."""
    stats = sorted(stats, key=lambda s: s.dim)
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    for s in stats:
        ns = sorted(s.by_vertices)
        ax.plot(ns, [s.by_vertices[n] for n in ns], marker="o", label=f"d={s.dim} ({s.total})")
    ax.set_yscale("log")
    ax.set_xlabel("number of vertices n")
    ax.set_ylabel("isomorphism classes")
    ax.set_title("Smooth Fano polytopes by dimension and vertex count")
    if stats:
        ax.legend()
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, metadata={"Software": None} if path.endswith(".png") else None)
    plt.close(fig)
