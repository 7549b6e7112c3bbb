"""Figures rendered to files next to the delimited reports."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt


def save_bounds_figure(rows, path: str) -> str:
    """Optimal game lengths per order against the 3n/5 and 5n/8 caps.

    ``rows`` are report rows with ``n``, ``game_len`` and ``class_no_d4``.
    """
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    in_class = [(r.n, r.game_len) for r in rows if r.class_no_d4]
    general = [(r.n, r.game_len) for r in rows if not r.class_no_d4]
    if in_class:
        ax.scatter(
            [n for n, _ in in_class],
            [g for _, g in in_class],
            s=18,
            alpha=0.55,
            label="no leaf pair at distance 4",
            color="#2b7bba",
        )
    if general:
        ax.scatter(
            [n for n, _ in general],
            [g for _, g in general],
            s=18,
            alpha=0.55,
            marker="x",
            label="leaf pair at distance 4",
            color="#b2452c",
        )
    n_max = max(r.n for r in rows)
    xs = list(range(1, n_max + 1))
    ax.plot(xs, [3 * x / 5 for x in xs], "--", color="#444444", label="3n/5")
    ax.plot(xs, [5 * x / 8 for x in xs], ":", color="#777777", label="5n/8")
    ax.set_xlabel("vertices")
    ax.set_ylabel("optimal game length (engine starts)")
    ax.set_title("game length against the caps")
    ax.legend(loc="upper left", fontsize=8)
    ax.grid(True, alpha=0.25)
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)
    return path


def save_scan_figure(rows, path: str) -> str:
    """Per-order maxima from the extremal scan against the 3n/5 cap."""
    fig, ax = plt.subplots(figsize=(6.5, 4.0))
    orders = [r.order for r in rows]
    ax.step(orders, [r.cap_3n5 for r in rows], where="mid", color="#444444", label="floor(3n/5)")
    ax.plot(orders, [r.max_game_len for r in rows], "o-", color="#2b7bba", label="max over trees")
    for r in rows:
        if r.exceeds:
            ax.annotate("exceeds!", (r.order, r.max_game_len), color="red")
    ax.set_xlabel("vertices")
    ax.set_ylabel("optimal game length")
    ax.set_title("per-order maxima over all trees")
    ax.legend(loc="upper left", fontsize=8)
    ax.grid(True, alpha=0.25)
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)
    return path
