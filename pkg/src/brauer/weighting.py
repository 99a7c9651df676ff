"""Successor weightings W: darts -> G and their per-vertex data."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .groups import AbelianGroup, CosetPartition, GroupElement
from .ribbon import BrauerGraph, Dart, dart_name


class BrauerWeighting:
    """A weighting of the successor pairs of a graph, indexed by the first dart of each pair.

    ``W[d]`` is the weight of the pair (d, sigma(d)).
    """

    def __init__(self, group: AbelianGroup, W: Mapping[Dart, GroupElement]):
        self.group = group
        self.W = {d: group.element(g) for d, g in W.items()}

    def __getitem__(self, d: Dart) -> GroupElement:
        return self.W[d]

    def __contains__(self, d: Dart) -> bool:
        return d in self.W

    def __eq__(self, other) -> bool:
        return isinstance(other, BrauerWeighting) and self.group == other.group and self.W == other.W

    def __repr__(self) -> str:
        return f"BrauerWeighting({self.group}, {len(self.W)} darts)"

    @classmethod
    def trivial(cls, graph: BrauerGraph, group: AbelianGroup | None = None) -> BrauerWeighting:
        group = group or AbelianGroup()
        return cls(group, {d: group.identity for d in graph.darts})

    def omega(self, graph: BrauerGraph, v: str) -> GroupElement:
        return self.group.product(self.W[d] for d in graph.rotation(v))

    def ord(self, graph: BrauerGraph, v: str) -> int:
        return self.group.element_order(self.omega(graph, v))


@dataclass(frozen=True)
class VertexData:
    vertex: str
    omega: GroupElement
    order: int
    cosets: CosetPartition
    start: Dart
    partial: dict  # dart -> product of W along the rotation from ``start`` up to that dart


def vertex_data(graph: BrauerGraph, W: BrauerWeighting, v: str) -> VertexData:
    """omega_v, its order, the cosets of <omega_v> and the partial products omega(i_1, i_r).

    The successor sequence starts at the least dart of ``v``.
    """
    G = W.group
    start = min(graph.rotation(v))
    missing = [dart_name(d) for d in graph.rotation(v) if d not in W]
    if missing:
        raise KeyError(f"weighting is missing darts {missing} at vertex {v}")
    partial = {}
    acc = G.identity
    for d in graph.successor_sequence(start):
        partial[d] = acc
        acc = G.compose(acc, W[d])
    return VertexData(v, acc, G.element_order(acc), G.coset_partition(acc), start, partial)


def validate_weighting(graph: BrauerGraph, W: BrauerWeighting) -> list[str]:
    """Totality on the darts and ord(v) | m(v) at every vertex; returns diagnostics."""
    problems = []
    darts = set(graph.darts)
    for d in graph.darts:
        if d not in W:
            problems.append(f"weighting undefined at dart {dart_name(d)}")
    for d in sorted(set(W.W) - darts):
        problems.append(f"weighting defined at unknown dart {dart_name(d)}")
    if problems:
        return problems
    for v in graph.vertices:
        order = W.ord(graph, v)
        if graph.multiplicity(v) % order:
            problems.append(
                f"vertex {v}: ord = {order} does not divide m = {graph.multiplicity(v)} "
                f"(omega = {list(W.omega(graph, v))})"
            )
    return problems
