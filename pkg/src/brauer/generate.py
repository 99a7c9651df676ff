"""Seeded random graphs, Brauer weightings and free actions for property tests and corpora."""

from __future__ import annotations

import random
from fractions import Fraction

from .action import FreeBrauerAction
from .covering import covering_graph
from .groups import AbelianGroup
from .ribbon import BrauerGraph, Dart
from .weighting import BrauerWeighting

SMALL_GROUPS = [AbelianGroup((2,)), AbelianGroup((3,)), AbelianGroup((4,)), AbelianGroup((2, 2))]


def random_graph(rng: random.Random, max_edges: int = 6, max_m: int = 4, loops: bool = True,
                 multi: bool = True, quantized: bool = True, min_edges: int = 1) -> BrauerGraph:
    """A connected graph with random rotations, multiplicities in [1, max_m] and optional quantizer."""
    n_edges = rng.randint(min_edges, max_edges)
    n_vertices = rng.randint(1 if loops else 2, n_edges + 1)
    if not loops and not multi:
        # need enough vertex pairs for the extra edges
        while n_vertices * (n_vertices - 1) // 2 < n_edges:
            n_vertices += 1
    vertices = [f"v{k}" for k in range(n_vertices)]
    ends = []
    for k in range(1, n_vertices):
        ends.append((vertices[rng.randrange(k)], vertices[k]))
    while len(ends) < n_edges:
        a, b = rng.choice(vertices), rng.choice(vertices)
        if a == b and not loops:
            continue
        if not multi and a != b and ({a, b} in [set(x) for x in ends]):
            continue
        ends.append((a, b))
    edges = {f"e{k}": pair for k, pair in enumerate(ends)}
    rotation: dict[str, list[Dart]] = {v: [] for v in vertices}
    for e, (a, b) in edges.items():
        rotation[a].append((e, 0))
        rotation[b].append((e, 1))
    for darts in rotation.values():
        rng.shuffle(darts)
    m = {v: rng.randint(1, max_m) for v in vertices}
    graph = BrauerGraph(m, edges, rotation)
    if quantized:
        q = {d: Fraction(rng.choice([1, -1]) * rng.randint(1, 5), rng.randint(1, 4)) for d in graph.x_darts()}
        graph = graph.with_quantizer(q)
    return graph


def random_weighting(rng: random.Random, graph: BrauerGraph, group: AbelianGroup) -> BrauerWeighting:
    """Uniform weights except at the least dart of each vertex, which fixes omega to a random
    element whose order divides m."""
    elements = group.elements()
    W = {d: rng.choice(elements) for d in graph.darts}
    for v in graph.vertices:
        allowed = [g for g in elements if graph.multiplicity(v) % group.element_order(g) == 0]
        target = rng.choice(allowed)
        d0 = min(graph.rotation(v))
        rest = group.product(W[d] for d in graph.rotation(v) if d != d0)
        W[d0] = group.compose(target, group.inverse(rest))
    return BrauerWeighting(group, W)


def scramble(rng: random.Random, graph: BrauerGraph, action: FreeBrauerAction | None = None):
    """Rename edges and vertices at random and flip some edges; the action is carried along."""
    edges = graph.edges
    new_names = [f"f{k}" for k in range(len(edges))]
    rng.shuffle(new_names)
    edge_map = dict(zip(edges, new_names))
    vnames = [f"w{k}" for k in range(len(graph.vertices))]
    rng.shuffle(vnames)
    vertex_map = dict(zip(graph.vertices, vnames))
    flip = {e for e in edges if rng.random() < 0.5}
    out = graph.relabel(edge_map, vertex_map, flip)

    def f(d: Dart) -> Dart:
        return edge_map[d[0]], (1 - d[1]) if d[0] in flip else d[1]

    if action is None:
        return out
    gens = [{f(d): f(e) for d, e in gen.items()} for gen in action.generators]
    return out, FreeBrauerAction(action.group, gens, out.darts)


def random_action(rng: random.Random, max_edges: int = 4, max_m: int = 4, groups=None,
                  max_tries: int = 200) -> tuple[BrauerGraph, FreeBrauerAction]:
    """A free Brauer action built as the canonical action on a connected random cover, then scrambled."""
    groups = groups or SMALL_GROUPS
    for _ in range(max_tries):
        base = random_graph(rng, max_edges=max_edges, max_m=max_m)
        group = rng.choice(groups)
        W = random_weighting(rng, base, group)
        cover = covering_graph(base, W)
        if not cover.graph.is_connected():
            continue
        graph = BrauerGraph(
            {v: cover.graph.multiplicity(v) for v in cover.graph.vertices},
            {e: cover.graph.ends(e) for e in cover.graph.edges},
            {v: cover.graph.rotation(v) for v in cover.graph.vertices},
            cover.graph.quantizer_map,
        )
        return scramble(rng, graph, FreeBrauerAction(group, cover.action.generators, graph.darts))
    raise RuntimeError("no connected cover found")


def tower_corpus(rng: random.Random, count: int, max_edges: int = 4, max_m: int = 3, budget: int = 2000,
                 max_draws: int = 10000):
    """Draw random graphs until ``count`` of them have a tower within ``budget`` edges.

    Covers grow multiplicatively (a loop at a vertex of multiplicity 3 already
    needs about 10^5 edges), so oversized draws are set aside and returned
    alongside the accepted towers.
    """
    from .tower import TowerTooLarge, build_tower

    accepted, rejected = [], []
    for _ in range(max_draws):
        if len(accepted) == count:
            break
        graph = random_graph(rng, max_edges=max_edges, max_m=max_m)
        try:
            accepted.append((graph, build_tower(graph, max_edges=budget)))
        except TowerTooLarge:
            rejected.append(graph)
    return accepted, rejected
