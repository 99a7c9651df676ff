"""Free Brauer actions of finite abelian groups, orbit graphs and associated weightings."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .appendix import QuiverAction, orbit_quiver
from .groups import AbelianGroup, GroupElement, orbit_coordinates
from .presentation import Presentation, build_presentation
from .ribbon import BrauerGraph, BrauerGraphError, Dart, dart_name
from .weighting import BrauerWeighting


class ActionError(ValueError):
    def __init__(self, diagnostics: Sequence[str]):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(self.diagnostics))


class FreeBrauerAction:
    """G acting on darts on the right, d -> d^g; one dart permutation per cyclic factor."""

    def __init__(self, group: AbelianGroup, generators: Sequence[dict[Dart, Dart]],
                 darts: Sequence[Dart] | None = None):
        self.group = group
        self.generators = [dict(p) for p in generators]
        if darts is None:
            darts = list(self.generators[0]) if self.generators else []
        self.darts = list(darts)
        self._cache: dict[GroupElement, dict[Dart, Dart]] = {}

    def permutation(self, g: GroupElement) -> dict[Dart, Dart]:
        g = self.group.element(g)
        if g not in self._cache:
            perm = {d: d for d in self.darts}
            for k, r in enumerate(g):
                gen = self.generators[k]
                for _ in range(r):
                    perm = {d: gen[e] for d, e in perm.items()}
            self._cache[g] = perm
        return self._cache[g]

    def act(self, d: Dart, g: GroupElement) -> Dart:
        if self.group.rank == 0:
            return d
        return self.permutation(g)[d]

    @classmethod
    def trivial(cls, graph: BrauerGraph) -> FreeBrauerAction:
        return cls(AbelianGroup(), [], graph.darts)

    def quiver_action(self, graph: BrauerGraph, presentation: Presentation) -> QuiverAction:
        """The induced action on Q_Gamma: v_i -> v_{i^g}, a_d -> a_{d^g}."""
        dart_arrow = {}
        for a, d in presentation.arrow_dart.items():
            dart_arrow[d] = a
            if graph.is_truncated(d):
                dart_arrow[graph.alpha(d)] = a
        vgens, agens = [], []
        for gen in self.generators:
            vgens.append({e: gen[(e, 0)][0] for e in graph.edges})
            agens.append({a: dart_arrow[gen[d]] for a, d in presentation.arrow_dart.items()})
        return QuiverAction(self.group, presentation.quiver, vgens, agens)


def validate_action(graph: BrauerGraph, action: FreeBrauerAction) -> list[str]:
    """Check every axiom of a free (quantized) Brauer action; one diagnostic per failure."""
    G = action.group
    darts = set(graph.darts)
    problems = []
    if len(action.generators) != G.rank:
        return [f"action has {len(action.generators)} generators, group {G} has rank {G.rank}"]
    for k, gen in enumerate(action.generators):
        if set(gen) != darts:
            problems.append(f"generator {k} is not defined on exactly the darts of the graph")
        elif set(gen.values()) != darts:
            problems.append(f"generator {k} is not a bijection of the darts")
    if problems:
        return problems
    for k, gen in enumerate(action.generators):
        n = G.cyclic_orders[k]
        perm = {d: d for d in darts}
        for _ in range(n):
            perm = {d: gen[e] for d, e in perm.items()}
        moved = [d for d in sorted(darts) if perm[d] != d]
        if moved:
            problems.append(f"generator {k} does not have order dividing {n}: moves dart {dart_name(moved[0])}")
        for j in range(k + 1, len(action.generators)):
            other = action.generators[j]
            bad = next((d for d in sorted(darts) if gen[other[d]] != other[gen[d]]), None)
            if bad is not None:
                problems.append(f"generators {k} and {j} do not commute at dart {dart_name(bad)}")
    if problems:
        return problems
    for k, gen in enumerate(action.generators):
        g = list(G.generator(k))
        for d in sorted(darts):
            if graph.sigma(gen[d]) != gen[graph.sigma(d)]:
                problems.append(f"orientation violated by g = {g} at dart {dart_name(d)}")
                break
        for d in sorted(darts):
            if graph.alpha(gen[d]) != gen[graph.alpha(d)]:
                problems.append(f"edge pairing violated by g = {g} at dart {dart_name(d)}")
                break
        for d in sorted(darts):
            if graph.multiplicity(graph.vertex(gen[d])) != graph.multiplicity(graph.vertex(d)):
                problems.append(f"multiplicity not preserved by g = {g} at dart {dart_name(d)}")
                break
    if problems:
        return problems
    edge_generators = [{e: gen[(e, 0)][0] for e in graph.edges} for gen in action.generators]
    _, stabilizers = orbit_coordinates(G, edge_generators, sorted(graph.edges))
    if stabilizers:
        e, g = stabilizers[0]
        perm = action.permutation(g)
        if all(perm[d] == d for d in darts):
            problems.append(f"action is not faithful: kernel contains {list(g)}")
        else:
            problems.append(f"action is not free on edges: {list(g)} fixes edge {e}")
    if problems or not graph.is_quantized:
        return problems
    for k, gen in enumerate(action.generators):
        for e in graph.y_edges():
            d0, d1 = (e, 0), (e, 1)
            left = graph.quantizer(d0) / graph.quantizer(d1)
            right = graph.quantizer(gen[d0]) / graph.quantizer(gen[d1])
            if left != right:
                problems.append(
                    f"quantizer ratio not preserved by g = {list(G.generator(k))} on edge {e}: {left} != {right}"
                )
    return problems


@dataclass
class OrbitData:
    """Orbit graph plus the maps relating it to the acted-on graph.

    ``representative`` sends each orbit dart (i_*, k) to the dart (i_*, k) of
    the least edge i_* of its orbit; ``coordinate[d] = (orbit dart, h)`` with
    d = representative^h.  ``decomposition[orbit vertex] = (k, s, g)``: from the
    least dart d_0 at the representative vertex, sigma^k(d_0) = d_0^g with
    k = val of the orbit vertex and s + 1 = order of g.
    """

    graph: BrauerGraph
    source: BrauerGraph
    action: FreeBrauerAction
    dart_projection: dict[Dart, Dart]
    vertex_projection: dict[str, str]
    edge_projection: dict[str, str]
    representative: dict[Dart, Dart]
    coordinate: dict[Dart, tuple[Dart, GroupElement]]
    decomposition: dict[str, tuple[int, int, GroupElement]] = field(default_factory=dict)


def orbit_graph(graph: BrauerGraph, action: FreeBrauerAction, check: bool = True) -> OrbitData:
    if check:
        problems = validate_action(graph, action)
        if problems:
            raise ActionError(problems)
    G = action.group
    darts_in_order = [(e, k) for e in sorted(graph.edges) for k in (0, 1)]
    coordinate, _ = orbit_coordinates(G, action.generators, darts_in_order)
    representative = {r: r for r, h in coordinate.values()}
    dart_projection = {d: coordinate[d][0] for d in graph.darts}
    edge_projection = {d[0]: r[0] for d, (r, h) in coordinate.items()}

    vertex_generators = [{v: graph.vertex(gen[graph.rotation(v)[0]]) for v in graph.vertices}
                         for gen in action.generators]
    vertex_coordinate, _ = orbit_coordinates(G, vertex_generators, sorted(graph.vertices))
    vertex_projection = {v: vertex_coordinate[v][0] for v in graph.vertices}

    orbit_vertices = [v for v in graph.vertices if vertex_projection[v] == v]
    rotation, multiplicity, decomposition = {}, {}, {}
    for v in orbit_vertices:
        d0 = min(graph.rotation(v))
        seq = [dart_projection[d0]]
        d = graph.sigma(d0)
        while dart_projection[d] != seq[0]:
            seq.append(dart_projection[d])
            d = graph.sigma(d)
        k = len(seq)
        g = G.compose(coordinate[d][1], G.inverse(coordinate[d0][1]))
        val = graph.valency(v)
        if val % k or G.element_order(g) != val // k or len(set(seq)) != k:
            raise AssertionError(f"successor decomposition failed at vertex {v}")
        rotation[v] = seq
        multiplicity[v] = val * graph.multiplicity(v) // k
        decomposition[v] = (k, val // k - 1, g)
    edges = {e: (vertex_projection[graph.vertex((e, 0))], vertex_projection[graph.vertex((e, 1))])
             for e in graph.edges if edge_projection[e] == e}
    q = None
    if graph.is_quantized:
        q = {}
        for e in edges:
            if graph.in_y(e):
                base = graph.quantizer((e, 0))
                q[(e, 0)] = Fraction(1)
                q[(e, 1)] = graph.quantizer((e, 1)) / base
    try:
        orbit = BrauerGraph(multiplicity, edges, rotation, q, allow_disconnected=graph.allow_disconnected)
    except BrauerGraphError as exc:
        raise AssertionError(f"orbit graph is not a Brauer graph: {exc}") from exc
    count = sum(orbit.valency(v) for v in orbit.vertices)
    if count * G.order != len(graph.darts):
        raise AssertionError("orbit dart count is not |darts| / |G|")
    return OrbitData(orbit, graph, action, dart_projection, vertex_projection, edge_projection,
                     representative, coordinate, decomposition)


def orbit_presentation(graph: BrauerGraph, action: FreeBrauerAction, check: bool = True) -> Presentation:
    """Orbit quiver of Q_Gamma under the induced action, with the projected relations."""
    if check:
        problems = validate_action(graph, action)
        if problems:
            raise ActionError(problems)
    presentation = build_presentation(graph)
    if action.group.rank == 0:
        return presentation
    return orbit_quiver(presentation, action.quiver_action(graph, presentation)).presentation


def associated_weighting(graph: BrauerGraph, action: FreeBrauerAction,
                         orbit: OrbitData | None = None) -> tuple[OrbitData, BrauerWeighting]:
    """W(dbar) = the g with sigma(r(dbar)) = r(sigma_bar(dbar))^g."""
    if orbit is None:
        orbit = orbit_graph(graph, action)
    G = action.group
    W = {}
    for dbar in orbit.graph.darts:
        r = orbit.representative[dbar]
        target, h = orbit.coordinate[graph.sigma(r)]
        if target != orbit.graph.sigma(dbar):
            raise AssertionError(f"orbit rotation disagrees with the action at {dart_name(dbar)}")
        W[dbar] = h
    return orbit, BrauerWeighting(G, W)
