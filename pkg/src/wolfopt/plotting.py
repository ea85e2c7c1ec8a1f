"""Figure rendering for reports: convergence curves and ranking charts.

All helpers render straight to files with the Agg backend, so they are
safe in headless runs.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def save_convergence_figure(means: dict, problem: str, dim: int,
                            path: str | Path) -> Path:
    """Mean best-so-far per iteration, one line per algorithm."""
    path = Path(path)
    fig, ax = plt.subplots(figsize=(7, 4.5))
    positive = True
    for algo in sorted(means):
        values = means[algo]
        ax.plot(range(len(values)), values, label=algo, linewidth=1.4)
        positive = positive and bool((values > 0).all())
    if positive:
        ax.set_yscale("log")
    ax.set_xlabel("iteration")
    ax.set_ylabel("mean best-so-far fitness")
    ax.set_title(f"{problem} (dim={dim})")
    ax.legend()
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def save_wtl_figure(wtl: dict, path: str | Path) -> Path:
    """Stacked win/tie/loss bars per algorithm."""
    path = Path(path)
    algorithms = sorted(wtl)
    wins = [wtl[a]["wins"] for a in algorithms]
    ties = [wtl[a]["ties"] for a in algorithms]
    losses = [wtl[a]["losses"] for a in algorithms]
    fig, ax = plt.subplots(figsize=(7, 4))
    x = range(len(algorithms))
    ax.bar(x, wins, label="wins", color="#2a9d8f")
    ax.bar(x, ties, bottom=wins, label="ties", color="#e9c46a")
    bottom = [w + t for w, t in zip(wins, ties)]
    ax.bar(x, losses, bottom=bottom, label="losses", color="#e76f51")
    ax.set_xticks(list(x))
    ax.set_xticklabels(algorithms, rotation=20)
    ax.set_ylabel("cases")
    ax.set_title("win / tie / loss ranking")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def save_oe_figure(percents: dict, path: str | Path) -> Path:
    """Overall-effectiveness percentage per algorithm."""
    path = Path(path)
    algorithms = sorted(percents)
    values = [percents[a] for a in algorithms]
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.bar(range(len(algorithms)), values, color="#264653")
    ax.set_xticks(range(len(algorithms)))
    ax.set_xticklabels(algorithms, rotation=20)
    ax.set_ylabel("overall effectiveness [%]")
    ax.set_ylim(0, 100)
    for i, v in enumerate(values):
        ax.text(i, v + 1, f"{v:.2f}%", ha="center", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
