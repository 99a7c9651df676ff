"""Small hand-encoded Brauer graphs, weightings and actions used in docs and tests.

Rotations follow the clockwise order of the usual planar drawings.
"""

from __future__ import annotations

from fractions import Fraction

from .groups import AbelianGroup
from .ribbon import BrauerGraph


def three_edge_tree(q: dict | None = None) -> BrauerGraph:
    """Edges 1, 2, 3 meeting at lambda; m(xi) = 2, other multiplicities 1."""
    return BrauerGraph.build(
        {"mu": 1, "lambda": 1, "nu": 1, "xi": 2},
        {"1": ("mu", "lambda"), "2": ("lambda", "nu"), "3": ("xi", "lambda")},
        {"mu": ["1"], "lambda": ["1", "2", "3"], "nu": ["2"], "xi": ["3"]},
        q,
    )


# Greek arrow names of the drawing: alpha: v1 -> v2, beta: v2 -> v3, gamma: v3 -> v1, delta: loop at v3
THREE_EDGE_TREE_LABELS = {"1.1": "alpha", "2.0": "beta", "3.1": "gamma", "3.0": "delta"}


def triangle_m3(q: dict | None = None) -> BrauerGraph:
    """Triangle mu, nu, xi with edges 1 = mu-nu, 2 = xi-nu, 3 = mu-xi and m(mu) = 3."""
    return BrauerGraph.build(
        {"mu": 3, "nu": 1, "xi": 1},
        {"1": ("mu", "nu"), "2": ("xi", "nu"), "3": ("mu", "xi")},
        {"mu": ["1", "3"], "nu": ["1", "2"], "xi": ["3", "2"]},
        q,
    )


TRIANGLE_M3_LABELS = {"1.0": "ab3", "3.0": "a3", "1.1": "a1", "2.1": "ab1", "2.0": "a2", "3.1": "ab2"}


def single_edge() -> BrauerGraph:
    """mu -- nu with m = 1 at both ends; its algebra is K[x]/(x^2)."""
    return BrauerGraph.build({"mu": 1, "nu": 1}, {"1": ("mu", "nu")}, {"mu": ["1"], "nu": ["1"]})


def single_loop(m: int = 1) -> BrauerGraph:
    return BrauerGraph.build({"mu": m}, {"l": ("mu", "mu")}, {"mu": ["l", "l"]})


def star(n: int, center_m: int = 1, prefix: str = "i") -> BrauerGraph:
    """Star with edges i1..in around the center mu, in clockwise order, leaves l1..ln."""
    edges = {f"{prefix}{k}": ("mu", f"l{k}") for k in range(1, n + 1)}
    rotation = {"mu": list(edges)}
    rotation.update({f"l{k}": [f"{prefix}{k}"] for k in range(1, n + 1)})
    m = {"mu": center_m}
    m.update({f"l{k}": 1 for k in range(1, n + 1)})
    return BrauerGraph.build(m, edges, rotation)


def six_star_action():
    """The 6-star with Z_2 rotating it by half a turn: i_k <-> i_{k+3}."""
    from .action import FreeBrauerAction

    graph = star(6)
    swap = {}
    for k in range(1, 7):
        j = (k + 2) % 6 + 1
        swap[(f"i{k}", 0)] = (f"i{j}", 0)
        swap[(f"i{k}", 1)] = (f"i{j}", 1)
    return graph, FreeBrauerAction(AbelianGroup.cyclic(2), [swap])


def z3_triangle(top_m: int = 3) -> BrauerGraph:
    """Triangle with edges a = top-left, b = top-right, c = left-right."""
    return BrauerGraph.build(
        {"top": top_m, "left": 1, "right": 1},
        {"a": ("top", "left"), "b": ("top", "right"), "c": ("left", "right")},
        {"top": ["b", "a"], "left": ["a", "c"], "right": ["c", "b"]},
    )


def z3_triangle_weighting():
    """W(b, a) = g at the top vertex, identity elsewhere, in Z_3."""
    from .weighting import BrauerWeighting

    group = AbelianGroup.cyclic(3)
    graph = z3_triangle()
    W = {d: group.identity for d in graph.darts}
    W[("b", 0)] = group.generator(0)
    return graph, BrauerWeighting(group, W)


def unit_quantizer(graph: BrauerGraph) -> dict:
    return {d: Fraction(1) for d in graph.x_darts()}


def triangle_z2_weight_function():
    """On the multiplicity-one triangle: g on one of the two arrows around every vertex.

    All relations are homogeneous but every cycle has weight g, so the
    covering algebra is not a Brauer graph algebra.
    """
    from .presentation import build_presentation

    group = AbelianGroup.cyclic(2)
    graph = z3_triangle(top_m=1)
    p = build_presentation(graph)
    marked = {min(graph.rotation(v)) for v in graph.vertices}
    weights = {a: group.generator(0) if d in marked else group.identity for a, d in p.arrow_dart.items()}
    return p, group, weights
