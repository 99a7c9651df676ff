"""Normalizing a Brauer graph by three successive coverings.

Multiplicities are removed first, then loops, then multiple edges.  Each stage
is a covering for an explicit weighting, and stages with nothing to do are
skipped.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .covering import CoveringOutput, RoundTrip, TheoremViolation, covering_graph, roundtrip_orbit
from .groups import AbelianGroup
from .ribbon import BrauerGraph
from .weighting import BrauerWeighting, validate_weighting


class TowerTooLarge(RuntimeError):
    pass


def multiplicity_removal_weighting(graph: BrauerGraph) -> tuple[AbelianGroup, BrauerWeighting] | None:
    """Z_n with n = lcm of the multiplicities; the least dart at v gets g^(n / m(v)).

    Returns None when every multiplicity is already 1.
    """
    n = math.lcm(*(graph.multiplicity(v) for v in graph.vertices))
    if n == 1:
        return None
    G = AbelianGroup.cyclic(n)
    W = {d: G.identity for d in graph.darts}
    for v in graph.vertices:
        W[min(graph.rotation(v))] = G.element([n // graph.multiplicity(v)])
    return G, BrauerWeighting(G, W)


def loop_removal_weighting(graph: BrauerGraph, p: int = 2) -> tuple[AbelianGroup, BrauerWeighting] | None:
    """Z_p^n for n loops: the k-th loop gets z_k on its first occurrence and z_k^-1 on its second.

    Occurrences are ordered along the rotation starting at the least dart of
    the vertex.  Returns None for a loop-free graph.
    """
    if p < 2:
        raise ValueError("p must be at least 2")
    loops = graph.loops()
    if not loops:
        return None
    G = AbelianGroup((p,) * len(loops))
    W = {d: G.identity for d in graph.darts}
    for k, e in enumerate(loops):
        v = graph.ends(e)[0]
        first, second = [d for d in graph.successor_sequence(min(graph.rotation(v))) if d[0] == e]
        W[first] = G.generator(k)
        W[second] = G.inverse(G.generator(k))
    return G, BrauerWeighting(G, W)


def multi_edge_removal_weighting(graph: BrauerGraph) -> tuple[AbelianGroup, BrauerWeighting] | None:
    """Prod Z_{alpha_k} over vertex pairs joined by alpha_k >= 2 edges.

    Every dart of the k-th pair's edges at its distinguished vertex (the
    smaller id) gets z_k.  Returns None for a graph without multiple edges.
    """
    if graph.loops():
        raise ValueError("multiple-edge removal needs a loop-free graph")
    pairs = sorted(graph.multi_edge_pairs().items(), key=lambda item: sorted(item[0]))
    if not pairs:
        return None
    G = AbelianGroup(tuple(len(es) for _, es in pairs))
    W = {d: G.identity for d in graph.darts}
    for k, (pair, es) in enumerate(pairs):
        v = min(pair)
        for e in es:
            side = graph.ends(e).index(v)
            W[(e, side)] = G.generator(k)
    for v in graph.vertices:
        if _omega(graph, G, W, v) != G.identity:
            raise TheoremViolation(f"multiple-edge weighting has nontrivial omega at {v}")
    return G, BrauerWeighting(G, W)


def _omega(graph, G, W, v):
    return G.product(W[d] for d in graph.rotation(v))


@dataclass
class TowerStage:
    tag: str  # "multiplicity", "loops" or "multiedges"
    input: BrauerGraph
    group: AbelianGroup
    weighting: BrauerWeighting
    output: CoveringOutput
    roundtrip: RoundTrip | None
    checks: dict[str, bool] = field(default_factory=dict)


@dataclass
class Tower:
    base: BrauerGraph
    stages: list[TowerStage]

    @property
    def top(self) -> BrauerGraph:
        return self.stages[-1].output.graph if self.stages else self.base

    def group_orders(self) -> list[int]:
        return [s.group.order for s in self.stages]


STAGES = ("multiplicity", "loops", "multiedges")


def _all_one(graph: BrauerGraph) -> bool:
    return all(graph.multiplicity(v) == 1 for v in graph.vertices)


def build_tower(graph: BrauerGraph, p: int = 2, max_edges: int | None = None,
                check_roundtrip: bool = True, check_presentation: bool = True) -> Tower:
    """Run the three normalizing coverings, asserting each stage's guarantee.

    ``max_edges`` aborts with TowerTooLarge before building a stage whose
    cover would exceed that many edges.
    """
    stages = []
    current = graph
    for tag in STAGES:
        if tag == "multiplicity":
            made = multiplicity_removal_weighting(current)
        elif tag == "loops":
            made = loop_removal_weighting(current, p)
        else:
            made = multi_edge_removal_weighting(current)
        if made is None:
            continue
        G, W = made
        predicted = G.order * len(current.edges)
        if max_edges is not None and predicted > max_edges:
            raise TowerTooLarge(f"stage {tag} would build {predicted} edges (budget {max_edges})")
        problems = validate_weighting(current, W)
        if problems:
            raise TheoremViolation(f"stage {tag} weighting is not a Brauer weighting: {problems}")
        if check_roundtrip:
            rt = roundtrip_orbit(current, W, check_presentation=check_presentation)
            out = rt.cover
        else:
            rt, out = None, covering_graph(current, W)
        cover = out.graph
        checks = {"weighting_valid": True, "roundtrip": rt is not None}
        if tag == "multiplicity":
            checks["m_one"] = _all_one(cover)
        elif tag == "loops":
            checks["no_loops"] = not cover.loops()
            checks["m_preserved"] = all(
                cover.multiplicity(x) == current.multiplicity(out.vertex_projection[x]) for x in cover.vertices
            )
        else:
            checks["simple"] = cover.is_simple()
            checks["m_preserved"] = all(
                cover.multiplicity(x) == current.multiplicity(out.vertex_projection[x]) for x in cover.vertices
            )
        failed = [k for k, ok in checks.items() if k != "roundtrip" and not ok]
        if failed:
            raise TheoremViolation(f"stage {tag} failed {failed}")
        stages.append(TowerStage(tag, current, G, W, out, rt, checks))
        current = cover
    tower = Tower(graph, stages)
    top = tower.top
    if not (_all_one(top) and top.is_simple()):
        raise TheoremViolation("top of the tower is not simple with m = 1")
    if len(top.edges) != len(graph.edges) * math.prod(tower.group_orders()):
        raise TheoremViolation("edge count of the tower top is not |edges| times the product of |G|")
    return tower
