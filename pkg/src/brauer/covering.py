"""Covering graphs of Brauer weightings and the induced coverings of quivers with relations."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .action import FreeBrauerAction, OrbitData, orbit_graph, orbit_presentation, validate_action
from .appendix import covering_quiver
from .groups import AbelianGroup, GroupElement
from .presentation import (
    Presentation,
    arrow_weights,
    build_presentation,
    path_weight,
    presentation_iso,
    render_relation,
)
from .ribbon import BrauerGraph, Dart, brauer_iso, dart_name
from .weighting import BrauerWeighting, VertexData, validate_weighting, vertex_data


class WeightingError(ValueError):
    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(self.diagnostics))


class TheoremViolation(AssertionError):
    """A construction failed a property the theory guarantees; this indicates a bug."""


def lifted_edge(e: str, group: AbelianGroup, g: GroupElement) -> str:
    return f"{e}@{group.format(g)}"


@dataclass
class CoveringOutput:
    base: BrauerGraph
    weighting: BrauerWeighting
    graph: BrauerGraph
    action: FreeBrauerAction
    lift: dict[tuple[Dart, GroupElement], Dart]
    projection: dict[Dart, tuple[Dart, GroupElement]]
    vertex_projection: dict[str, str]
    vertex_class: dict[str, tuple[str, int]]  # lifted vertex -> (base vertex, coset index)
    vertex_info: dict[str, VertexData] = field(default_factory=dict)
    checks: dict[str, bool] = field(default_factory=dict)

    @property
    def group(self) -> AbelianGroup:
        return self.weighting.group


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise TheoremViolation(message)


def covering_graph(graph: BrauerGraph, W: BrauerWeighting, check: bool = True) -> CoveringOutput:
    """The voltage lift Delta_W with its canonical action (d, g)^h = (d, gh).

    sigma_W(d, g) = (sigma(d), g W(d)) and alpha_W(d, g) = (alpha(d), g).
    Lifted vertices are the sigma_W-cycles; the one containing lifted dart
    ``x`` at least is named ``"<mu>[<x>]"``.
    """
    problems = validate_weighting(graph, W)
    if problems:
        raise WeightingError(problems)
    G = W.group
    elements = G.elements()
    lift = {(d, g): (lifted_edge(d[0], G, g), d[1]) for d in graph.darts for g in elements}
    projection = {x: dg for dg, x in lift.items()}

    info = {v: vertex_data(graph, W, v) for v in graph.vertices}
    multiplicity, rotation = {}, {}
    vertex_of: dict[Dart, str] = {}
    vertex_projection, vertex_class = {}, {}
    for v in graph.vertices:
        data = info[v]
        seen = set()
        cycles = []
        for d in graph.rotation(v):
            for g in elements:
                if (d, g) in seen:
                    continue
                cyc = []
                cur = (d, g)
                while cur not in seen:
                    seen.add(cur)
                    cyc.append(lift[cur])
                    cur = (graph.sigma(cur[0]), G.compose(cur[1], W[cur[0]]))
                cycles.append(cyc)
        for cyc in cycles:
            start = min(cyc)
            k = cyc.index(start)
            cyc = cyc[k:] + cyc[:k]
            name = f"{v}[{dart_name(start)}]"
            d, g = projection[start]
            coset = data.cosets.index_of[G.compose(g, G.inverse(data.partial[d]))]
            vertex_class[name] = (v, coset)
            vertex_projection[name] = v
            multiplicity[name] = graph.multiplicity(v) // data.order
            rotation[name] = cyc
            for x in cyc:
                vertex_of[x] = name
    order = sorted(rotation, key=lambda name: (graph.vertices.index(vertex_projection[name]), vertex_class[name][1]))
    multiplicity = {name: multiplicity[name] for name in order}
    rotation = {name: rotation[name] for name in order}
    edges = {}
    for e in graph.edges:
        for g in elements:
            edges[lifted_edge(e, G, g)] = (vertex_of[lift[((e, 0), g)]], vertex_of[lift[((e, 1), g)]])
    q = None
    if graph.is_quantized:
        q = {lift[(d, g)]: graph.quantizer(d) for d in graph.x_darts() for g in elements}
    cover = BrauerGraph(multiplicity, edges, rotation, q, allow_disconnected=True)

    generators = []
    for gen in G.generators():
        generators.append({lift[(d, g)]: lift[(d, G.compose(g, gen))] for d in graph.darts for g in elements})
    action = FreeBrauerAction(G, generators, cover.darts)
    out = CoveringOutput(graph, W, cover, action, lift, projection, vertex_projection, vertex_class, info)
    if check:
        check_covering(out)
    return out


def check_covering(out: CoveringOutput) -> dict[str, bool]:
    """Assert the counting formulas, the coset description of lifted vertices and the canonical action."""
    base, cover, G = out.base, out.graph, out.group
    _require(len(cover.edges) == G.order * len(base.edges), "edge count is not |G| |edges|")
    for v in base.vertices:
        data = out.vertex_info[v]
        over = [x for x, y in out.vertex_projection.items() if y == v]
        _require(len(over) == G.order // data.order, f"vertices over {v} != |G| / ord")
        for x in over:
            _require(cover.valency(x) == data.order * base.valency(v), f"val({x}) != ord val({v})")
            _require(cover.multiplicity(x) * data.order == base.multiplicity(v), f"m({x}) != m({v}) / ord")
    # two lifted darts share a vertex exactly when their coset labels agree
    for x in cover.darts:
        d, g = out.projection[x]
        v = base.vertex(d)
        data = out.vertex_info[v]
        label = (v, data.cosets.index_of[G.compose(g, G.inverse(data.partial[d]))])
        _require(out.vertex_class[cover.vertex(x)] == label, f"lifted dart {dart_name(x)} breaks the coset rule")
    for e in base.loops():
        for g in G.elements():
            name = lifted_edge(e, G, g)
            ends = cover.ends(name)
            _require(ends == (cover.vertex((name, 0)), cover.vertex((name, 1))), f"loop lift {name} has wrong ends")
    if cover.is_quantized:
        for x in cover.x_darts():
            _require(cover.quantizer(x) == base.quantizer(out.projection[x][0]), "q_W(d, g) != q(d)")
    problems = validate_action(cover, out.action)
    _require(not problems, f"canonical action is not a free Brauer action: {problems}")
    out.checks.update({"counts": True, "coset_classes": True, "canonical_action": True})
    return out.checks


@dataclass
class RoundTrip:
    cover: CoveringOutput
    orbit: OrbitData
    graph_iso: dict
    presentation_iso: dict | None


def roundtrip_orbit(graph: BrauerGraph, W: BrauerWeighting, check_presentation: bool = True,
                    max_arrows: int = 600) -> RoundTrip:
    """Cover, then take the orbit graph under the canonical action; it must be isomorphic to ``graph``."""
    cover = covering_graph(graph, W)
    orbit = orbit_graph(cover.graph, cover.action, check=False)
    check_orbit(orbit)
    phi = brauer_iso(orbit.graph, graph, quantized=graph.is_quantized)
    if phi is None:
        raise TheoremViolation("orbit graph of the covering graph is not isomorphic to the input")
    witness = None
    if check_presentation:
        orbit_pres = orbit_presentation(cover.graph, cover.action, check=False)
        witness = presentation_iso(orbit_pres, build_presentation(graph), max_arrows)
        if witness is None:
            raise TheoremViolation("orbit presentation of the covering algebra is not isomorphic to the input's")
    return RoundTrip(cover, orbit, phi, witness)


def check_orbit(orbit: OrbitData) -> None:
    src, og = orbit.source, orbit.graph
    for v in src.vertices:
        vbar = orbit.vertex_projection[v]
        _require(og.multiplicity(vbar) * og.valency(vbar) == src.multiplicity(v) * src.valency(v),
                 f"m val not preserved at {v}")
        _require(src.valency(v) % og.valency(vbar) == 0, f"val({vbar}) does not divide val({v})")
    for d in src.darts:
        _require(src.is_truncated(d) == og.is_truncated(orbit.dart_projection[d]),
                 f"truncation not preserved at {dart_name(d)}")


def covering_presentation(graph: BrauerGraph, W: BrauerWeighting) -> Presentation:
    """Covering quiver of Q_Delta for W* with every relation lifted at every sheet."""
    problems = validate_weighting(graph, W)
    if problems:
        raise WeightingError(problems)
    presentation = build_presentation(graph)
    weights = arrow_weights(presentation, W)
    return covering_quiver(presentation, W.group, weights).presentation


@dataclass
class Classification:
    kind: str  # "Brauer", "NotBrauer" or "NotHomogeneous"
    weighting: BrauerWeighting | None = None
    witness: str = ""


def classify_weight_function(presentation: Presentation, group: AbelianGroup,
                             weights: Mapping[str, GroupElement]) -> Classification:
    """Decide whether the covering algebra of a weight function is again a Brauer graph algebra.

    The relations must be homogeneous, and the weight of C^m must be trivial
    at every arrow-carrying dart, not only on edges truncated at neither end:
    a nontrivial weight around a vertex whose other edge-ends are truncated
    still produces a covering algebra that is not a Brauer graph algebra.
    """
    graph = presentation.graph
    if graph is None:
        raise ValueError("classification needs a presentation built from a Brauer graph")
    missing = sorted(set(presentation.quiver.arrows) - set(weights))
    if missing:
        raise ValueError(f"weight function is not defined on arrows {missing}")
    weights = {a: group.element(weights[a]) for a in presentation.quiver.arrows}
    for r in presentation.relations:
        degrees = {path_weight(group, weights, p) for p in r.paths}
        if len(degrees) > 1:
            return Classification("NotHomogeneous", witness=f"relation {render_relation(r)} is not homogeneous")
    W = {}
    for a, d in presentation.arrow_dart.items():
        if graph.is_truncated(d):
            # the loop x of a doubly truncated edge: C = x and m = 1
            if weights[a] != group.identity:
                return Classification("NotBrauer", witness=f"edge {d[0]}: x has nontrivial weight {list(weights[a])}")
            W[d] = W[graph.alpha(d)] = group.identity
            continue
        v = graph.vertex(d)
        c = [dart_name(x) for x in graph.successor_sequence(d)]
        w = group.power(path_weight(group, weights, c), graph.multiplicity(v))
        if w != group.identity:
            return Classification(
                "NotBrauer", witness=f"vertex {v}: C^m at dart {dart_name(d)} has weight {list(w)}"
            )
        W[d] = weights[a]
    for d in graph.darts:
        W.setdefault(d, group.identity)
    return Classification("Brauer", BrauerWeighting(group, W))
