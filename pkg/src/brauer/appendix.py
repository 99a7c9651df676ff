"""Group actions and gradings on quivers with relations, independent of Brauer graphs.

A free action of G on a quiver gives an orbit quiver carrying an induced weight
function; a weight function gives a covering quiver carrying a free action.
The two constructions undo each other up to isomorphism.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .groups import AbelianGroup, GroupElement, orbit_coordinates
from .presentation import Presentation, Quiver, Relation, presentation_iso


class QuiverActionError(ValueError):
    pass


class InhomogeneousRelation(ValueError):
    pass


@dataclass
class QuiverAction:
    """G acting on a quiver; one (vertex map, arrow map) pair per cyclic factor of G."""

    group: AbelianGroup
    quiver: Quiver
    vertex_generators: list[dict[str, str]]
    arrow_generators: list[dict[str, str]]
    _cache: dict = field(default_factory=dict, repr=False)

    def maps(self, g: GroupElement) -> tuple[dict[str, str], dict[str, str]]:
        g = self.group.element(g)
        if g not in self._cache:
            vmap = {v: v for v in self.quiver.vertices}
            amap = {a: a for a in self.quiver.arrows}
            for k, r in enumerate(g):
                for _ in range(r):
                    vmap = {v: self.vertex_generators[k][w] for v, w in vmap.items()}
                    amap = {a: self.arrow_generators[k][b] for a, b in amap.items()}
            self._cache[g] = (vmap, amap)
        return self._cache[g]

    def validate(self) -> list[str]:
        problems = []
        q = self.quiver
        if len(self.vertex_generators) != self.group.rank or len(self.arrow_generators) != self.group.rank:
            return [f"expected {self.group.rank} generators"]
        for k, (vg, ag) in enumerate(zip(self.vertex_generators, self.arrow_generators)):
            if sorted(vg) != sorted(q.vertices) or sorted(vg.values()) != sorted(q.vertices):
                problems.append(f"generator {k} is not a permutation of the vertices")
            if sorted(ag) != sorted(q.arrows) or sorted(ag.values()) != sorted(q.arrows):
                problems.append(f"generator {k} is not a permutation of the arrows")
        if problems:
            return problems
        for k, (vg, ag) in enumerate(zip(self.vertex_generators, self.arrow_generators)):
            for a, (s, t) in q.arrows.items():
                if q.arrows[ag[a]] != (vg[s], vg[t]):
                    problems.append(f"generator {k} does not respect the ends of arrow {a}")
        _, stabilizers = orbit_coordinates(self.group, self.vertex_generators, q.vertices)
        if stabilizers:
            v, g = stabilizers[0]
            problems.append(f"element {list(g)} fixes vertex {v}; the action is not free")
        return problems


@dataclass
class OrbitQuiver:
    presentation: Presentation
    vertex_projection: dict[str, str]
    arrow_projection: dict[str, str]
    weights: dict[str, GroupElement]  # induced weight function on the orbit arrows
    vertex_coordinate: dict[str, tuple[str, GroupElement]]  # v -> (orbit, h) with v = rep^h


def orbit_quiver(presentation: Presentation, action: QuiverAction) -> OrbitQuiver:
    """Orbit quiver, projected relations and the induced weight function.

    Orbits are named by their least vertex; an arrow orbit is named by its
    member starting at the representative vertex.  The weight of an orbit
    arrow is the h with target(rep arrow) = rep(target orbit)^h.
    """
    problems = action.validate()
    if problems:
        raise QuiverActionError("; ".join(problems))
    q = presentation.quiver
    coordinate, _ = orbit_coordinates(action.group, action.vertex_generators, sorted(q.vertices))
    vertex_projection = {v: coordinate[v][0] for v in q.vertices}
    orbit_vertices = [v for v in q.vertices if coordinate[v][0] == v]

    arrow_coordinate, _ = orbit_coordinates(action.group, action.arrow_generators, q.arrows)
    members = defaultdict(list)
    for a in q.arrows:
        members[arrow_coordinate[a][0]].append(a)
    arrow_projection: dict[str, str] = {}
    orbit_arrows: dict[str, tuple[str, str]] = {}
    weights: dict[str, GroupElement] = {}
    for orbit_members in members.values():
        rep = next(a for a in orbit_members if coordinate[q.source(a)][0] == q.source(a))
        for b in orbit_members:
            arrow_projection[b] = rep
        orbit_arrows[rep] = (q.source(rep), coordinate[q.target(rep)][0])
        weights[rep] = coordinate[q.target(rep)][1]
    ordered = {a: orbit_arrows[a] for a in q.arrows if a in orbit_arrows}
    seen = set()
    relations = []
    for r in presentation.relations:
        image = Relation(tuple((c, tuple(arrow_projection[a] for a in p)) for c, p in r.terms), r.kind)
        key = image.normal_form()
        if key not in seen:
            seen.add(key)
            relations.append(image)
    orbit = Presentation(Quiver(orbit_vertices, ordered), relations)
    return OrbitQuiver(orbit, vertex_projection, arrow_projection, weights, coordinate)


def lift_name(x: str, group: AbelianGroup, g: GroupElement) -> str:
    return f"{x}@{group.format(g)}"


def lift_path(quiver: Quiver, group: AbelianGroup, weights: Mapping[str, GroupElement],
              path: Sequence[str], start: GroupElement) -> tuple[tuple[str, ...], GroupElement]:
    """The unique lift of ``path`` starting at sheet ``start``, and the sheet it ends on."""
    out = []
    g = start
    for a in path:
        out.append(lift_name(a, group, g))
        g = group.compose(g, weights[a])
    return tuple(out), g


@dataclass
class CoveringQuiver:
    presentation: Presentation
    action: QuiverAction
    vertex_projection: dict[str, str]
    arrow_projection: dict[str, str]


def covering_quiver(presentation: Presentation, group: AbelianGroup,
                    weights: Mapping[str, GroupElement]) -> CoveringQuiver:
    """Covering quiver Q_W with the lifted relations and the canonical action (a, g)^h = (a, gh).

    Every relation must be homogeneous: its terms must all have the same degree.
    """
    q = presentation.quiver
    missing = sorted(set(q.arrows) - set(weights))
    if missing:
        raise ValueError(f"weight function is not defined on arrows {missing}")
    weights = {a: group.element(weights[a]) for a in q.arrows}
    for r in presentation.relations:
        degrees = {group.product(weights[a] for a in p) for p in r.paths}
        if len(degrees) > 1:
            raise InhomogeneousRelation(f"relation {r.terms} is not homogeneous")
    elements = group.elements()
    vertices = [lift_name(v, group, g) for v in q.vertices for g in elements]
    arrows = {}
    vproj, aproj = {}, {}
    for v in q.vertices:
        for g in elements:
            vproj[lift_name(v, group, g)] = v
    for a, (s, t) in q.arrows.items():
        for g in elements:
            name = lift_name(a, group, g)
            arrows[name] = (lift_name(s, group, g), lift_name(t, group, group.compose(g, weights[a])))
            aproj[name] = a
    relations = []
    for r in presentation.relations:
        for g in elements:
            terms = tuple((c, lift_path(q, group, weights, p, g)[0]) for c, p in r.terms)
            relations.append(Relation(terms, r.kind))
    cover = Presentation(Quiver(vertices, arrows), relations)

    vgens, agens = [], []
    for gen in group.generators():
        vgens.append({lift_name(v, group, g): lift_name(v, group, group.compose(g, gen))
                      for v in q.vertices for g in elements})
        agens.append({lift_name(a, group, g): lift_name(a, group, group.compose(g, gen))
                      for a in q.arrows for g in elements})
    action = QuiverAction(group, cover.quiver, vgens, agens)
    return CoveringQuiver(cover, action, vproj, aproj)


def check_action_roundtrip(presentation: Presentation, action: QuiverAction, max_arrows: int = 600) -> dict | None:
    """Orbit quiver with its induced weights, then covering: isomorphic to the start?"""
    orbit = orbit_quiver(presentation, action)
    cover = covering_quiver(orbit.presentation, action.group, orbit.weights)
    return presentation_iso(cover.presentation, presentation, max_arrows)


def check_grading_roundtrip(presentation: Presentation, group: AbelianGroup,
                            weights: Mapping[str, GroupElement], max_arrows: int = 600) -> dict | None:
    """Covering with its canonical action, then orbit quiver: isomorphic to the start?"""
    cover = covering_quiver(presentation, group, weights)
    orbit = orbit_quiver(cover.presentation, cover.action)
    return presentation_iso(orbit.presentation, presentation, max_arrows)
