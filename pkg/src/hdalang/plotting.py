"""Matplotlib figures: interval arrangements and HDA skeletons."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import networkx as nx  # noqa: E402

from .hda import HDA  # noqa: E402


def plot_arrangement(arr: dict, path, names: dict | None = None, title: str | None = None):
    """One row per event, one bar per activity interval.

    Closed endpoints are drawn as filled dots and open ones as hollow dots.
    """
    events = list(arr)
    fig, ax = plt.subplots(figsize=(6, 0.6 * len(events) + 1.2))
    for row, e in enumerate(events):
        y = len(events) - 1 - row
        for I in arr[e]:
            lo, hi = float(I.lo), float(I.hi)
            ax.plot([lo, hi], [y, y], color="tab:orange", linewidth=4, solid_capstyle="butt")
            for t, closed in ((lo, I.lo_closed), (hi, I.hi_closed)):
                ax.plot(t, y, "o", markersize=7, markeredgecolor="black",
                        markerfacecolor="black" if closed else "white")
    ax.set_yticks(range(len(events)))
    ax.set_yticklabels([(names or {}).get(e, e) for e in reversed(events)])
    ax.set_xlim(-0.05, 1.05)
    ax.set_ylim(-0.7, len(events) - 0.3)
    ax.set_xlabel("time")
    if title:
        ax.set_title(title)
    ax.grid(axis="x", linestyle=":", linewidth=0.5)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path


def _positions(X: HDA) -> dict:
    shape = getattr(X, "shape", None)
    if shape:
        return {v: tuple(float(c) for c in shape[v][0][:2]) for v in X.cells(0)}
    g = nx.DiGraph()
    g.add_nodes_from(X.cells(0))
    for e in X.cells(1):
        g.add_edge(X.delta(e, 1, 0), X.delta(e, 1, 1))
    return nx.spring_layout(g, seed=0)


def plot_skeleton(X: HDA, path, title: str | None = None):
    """Vertices, labelled edges and shaded squares of ``X``."""
    pos = _positions(X)
    fig, ax = plt.subplots(figsize=(5, 4))
    for sq in X.cells(2):
        corners = [
            X.delta(X.delta(sq, 2, 0), 1, 0),
            X.delta(X.delta(sq, 2, 0), 1, 1),
            X.delta(X.delta(sq, 2, 1), 1, 1),
            X.delta(X.delta(sq, 2, 1), 1, 0),
        ]
        xs = [pos[c][0] for c in corners]
        ys = [pos[c][1] for c in corners]
        ax.fill(xs, ys, color="0.88", zorder=0)
    for e in X.cells(1):
        a, b = pos[X.delta(e, 1, 0)], pos[X.delta(e, 1, 1)]
        ax.annotate("", xy=b, xytext=a, arrowprops=dict(arrowstyle="->", shrinkA=6, shrinkB=6))
        ax.text((a[0] + b[0]) / 2, (a[1] + b[1]) / 2, X.edge_labels[e], fontsize=10,
                ha="center", va="center", backgroundcolor="white")
    for v in X.cells(0):
        x, y = pos[v]
        face = "black" if v in X.initial else "white"
        ax.plot(x, y, "o", markersize=9, markerfacecolor=face, markeredgecolor="black", zorder=3)
        if v in X.accepting:
            ax.plot(x, y, "o", markersize=14, markerfacecolor="none", markeredgecolor="black", zorder=3)
    ax.set_aspect("equal")
    ax.axis("off")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path
