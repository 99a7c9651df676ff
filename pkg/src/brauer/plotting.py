"""Matplotlib drawings of Brauer graphs, covers and towers (Agg backend, files only)."""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import networkx as nx  # noqa: E402
from matplotlib.patches import FancyArrowPatch  # noqa: E402

from .ribbon import BrauerGraph  # noqa: E402


def layout(graph: BrauerGraph, seed: int = 0) -> dict[str, tuple[float, float]]:
    simple = nx.Graph()
    simple.add_nodes_from(graph.vertices)
    simple.add_edges_from(graph.ends(e) for e in graph.edges if not graph.is_loop(e))
    if len(graph.vertices) <= 2:
        return {v: (float(k), 0.0) for k, v in enumerate(graph.vertices)}
    return nx.kamada_kawai_layout(simple) if nx.is_connected(simple) else nx.spring_layout(simple, seed=seed)


def draw_graph(graph: BrauerGraph, ax, title: str = "", labels: bool = True) -> None:
    pos = layout(graph)
    seen: dict[frozenset, int] = {}
    for e in graph.edges:
        a, b = graph.ends(e)
        (xa, ya), (xb, yb) = pos[a], pos[b]
        if a == b:
            k = seen.get(frozenset((a,)), 0)
            seen[frozenset((a,))] = k + 1
            r = 0.08 + 0.04 * k
            ax.add_patch(plt.Circle((xa, ya + r), r, fill=False, lw=1.0, color="0.3"))
            if labels:
                ax.text(xa, ya + 2 * r, e, fontsize=6, ha="center", va="bottom")
            continue
        key = frozenset((a, b))
        k = seen.get(key, 0)
        seen[key] = k + 1
        rad = 0.0 if k == 0 else 0.25 * ((k + 1) // 2) * (1 if k % 2 else -1)
        ax.add_patch(FancyArrowPatch((xa, ya), (xb, yb), connectionstyle=f"arc3,rad={rad}",
                                     arrowstyle="-", lw=1.0, color="0.3"))
        if labels:
            mx, my = (xa + xb) / 2, (ya + yb) / 2
            dx, dy = yb - ya, xa - xb
            ax.text(mx + rad * dx / 2, my + rad * dy / 2, e, fontsize=6, ha="center", va="center",
                    bbox=dict(boxstyle="round,pad=0.1", fc="white", ec="none", alpha=0.7))
    xs = [pos[v][0] for v in graph.vertices]
    ys = [pos[v][1] for v in graph.vertices]
    colors = ["tab:red" if graph.multiplicity(v) > 1 else "tab:blue" for v in graph.vertices]
    ax.scatter(xs, ys, s=30, c=colors, zorder=3)
    if labels:
        for v in graph.vertices:
            m = graph.multiplicity(v)
            ax.text(pos[v][0], pos[v][1] - 0.07, v if m == 1 else f"{v} m={m}", fontsize=6, ha="center", va="top")
    ax.set_title(title, fontsize=8)
    ax.set_aspect("equal")
    ax.margins(0.15)
    ax.axis("off")


def save_graphs(graphs: list[tuple[str, BrauerGraph]], path: str) -> None:
    """One panel per graph; labels are dropped on large graphs."""
    n = len(graphs)
    fig, axes = plt.subplots(1, n, figsize=(3.2 * n, 3.2), squeeze=False)
    for ax, (title, g) in zip(axes[0], graphs):
        draw_graph(g, ax, f"{title}: {len(g.vertices)} vertices, {len(g.edges)} edges", labels=len(g.edges) <= 40)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_tower(tower, path: str) -> None:
    panels = [("base", tower.base)] + [(s.tag, s.output.graph) for s in tower.stages]
    save_graphs(panels, path)


def save_matrix(rows: list[dict], columns: list[str], path: str) -> None:
    """Pass/fail grid of a round-trip report: one row per case, one column per check."""
    fig, ax = plt.subplots(figsize=(1 + 0.9 * len(columns), 1.2 + 0.22 * max(len(rows), 1)))
    grid = [[1.0 if row.get(c) == "pass" else 0.0 if row.get(c) == "fail" else 0.5 for c in columns] for row in rows]
    ax.imshow(grid or [[0.5] * len(columns)], cmap="RdYlGn", vmin=0, vmax=1, aspect="auto")
    ax.set_xticks(range(len(columns)))
    ax.set_xticklabels(columns, rotation=45, ha="right", fontsize=7)
    ax.set_yticks(range(len(rows)))
    ax.set_yticklabels([row["case"] for row in rows], fontsize=6)
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
