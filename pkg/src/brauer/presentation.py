"""Quivers with relations and the presentation of a Brauer graph algebra.

Paths are tuples of arrow names composed left to right.  Arrows of the quiver
of a Brauer graph are named after the dart they come from, so the arrow
``"3.1"`` is the arrow from ``v_3`` to the edge following dart ``3.1`` in the
rotation.
"""

from __future__ import annotations

from collections import Counter, defaultdict, deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .groups import AbelianGroup, GroupElement
from .ribbon import BrauerGraph, Dart, dart_name

Path = tuple[str, ...]


class PresentationTooLarge(ValueError):
    pass


@dataclass
class Quiver:
    vertices: list[str]
    arrows: dict[str, tuple[str, str]]

    def source(self, a: str) -> str:
        return self.arrows[a][0]

    def target(self, a: str) -> str:
        return self.arrows[a][1]

    def out_arrows(self, v: str) -> list[str]:
        return [a for a, (s, _) in self.arrows.items() if s == v]

    def in_arrows(self, v: str) -> list[str]:
        return [a for a, (_, t) in self.arrows.items() if t == v]

    def is_path(self, path: Sequence[str]) -> bool:
        return all(self.target(a) == self.source(b) for a, b in zip(path, path[1:]))

    def path_ends(self, path: Sequence[str]) -> tuple[str, str]:
        return self.source(path[0]), self.target(path[-1])


@dataclass(frozen=True)
class Relation:
    """A linear combination of paths; ``kind`` is "one", "two", "three" or "generic"."""

    terms: tuple[tuple[Fraction, Path], ...]
    kind: str = "generic"

    @property
    def paths(self) -> list[Path]:
        return [p for _, p in self.terms]

    @property
    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def normal_form(self) -> tuple:
        """Sorted terms scaled so the first coefficient is 1; equal for scalar multiples."""
        terms = sorted((p, c) for c, p in self.terms)
        lead = terms[0][1]
        return tuple((p, c / lead) for p, c in terms)


@dataclass
class Presentation:
    quiver: Quiver
    relations: list[Relation]
    arrow_dart: dict[str, Dart] = field(default_factory=dict)
    graph: BrauerGraph | None = None

    def is_uniform(self) -> bool:
        for r in self.relations:
            ends = {self.quiver.path_ends(p) for p in r.paths}
            if len(ends) != 1 or not all(self.quiver.is_path(p) for p in r.paths):
                return False
        return True


def cycle(graph: BrauerGraph, d: Dart) -> Path:
    """The arrows of the rotation cycle starting at a non-truncated dart."""
    if graph.is_truncated(d):
        raise ValueError(f"dart {dart_name(d)} is truncated; it has no cycle")
    return tuple(dart_name(x) for x in graph.successor_sequence(d))


def build_presentation(graph: BrauerGraph) -> Presentation:
    """Quiver and relations of the Brauer graph algebra (q == 1 if unquantized)."""
    arrows = {}
    arrow_dart = {}
    relations = []
    # an edge truncated at both ends is a whole component with algebra K[x]/(x^2)
    for e in graph.edges:
        if graph.is_truncated((e, 0)) and graph.is_truncated((e, 1)):
            x = "x" if len(graph.edges) == 1 else f"x[{e}]"
            arrows[x] = (e, e)
            arrow_dart[x] = (e, 0)
            relations.append(Relation(((Fraction(1), (x, x)),), "three"))
    for d in graph.darts:
        if not graph.is_truncated(d):
            name = dart_name(d)
            arrows[name] = (d[0], graph.sigma(d)[0])
            arrow_dart[name] = d
    quiver = Quiver(graph.edges, arrows)

    for e in graph.y_edges():
        d0, d1 = (e, 0), (e, 1)
        p0 = cycle(graph, d0) * graph.multiplicity(graph.vertex(d0))
        p1 = cycle(graph, d1) * graph.multiplicity(graph.vertex(d1))
        relations.append(Relation(((graph.quantizer(d0), p0), (-graph.quantizer(d1), p1)), "one"))
    for d in graph.darts:
        partner = graph.alpha(d)
        if graph.is_truncated(d) and not graph.is_truncated(partner):
            c = cycle(graph, partner)
            path = c * graph.multiplicity(graph.vertex(partner)) + c[:1]
            relations.append(Relation(((Fraction(1), path),), "two"))
    for d in graph.darts:
        if graph.is_truncated(d):
            continue
        nxt = graph.sigma(d)
        for k in (0, 1):
            e = (nxt[0], k)
            if e != nxt and not graph.is_truncated(e):
                relations.append(Relation(((Fraction(1), (dart_name(d), dart_name(e))),), "three"))
    return Presentation(quiver, relations, arrow_dart, graph)


# ---- gradings ----------------------------------------------------------


def arrow_weights(presentation: Presentation, weighting: Mapping[Dart, GroupElement]) -> dict[str, GroupElement]:
    """The arrow weight function a_d -> W(d) induced by a dart weighting."""
    missing = [dart_name(d) for d in presentation.arrow_dart.values() if d not in weighting]
    if missing:
        raise ValueError(f"weighting does not cover the darts {missing}")
    return {a: weighting[d] for a, d in presentation.arrow_dart.items()}


def path_weight(group: AbelianGroup, weights: Mapping[str, GroupElement], path: Sequence[str]) -> GroupElement:
    return group.product(weights[a] for a in path)


def relation_degrees(presentation: Presentation, group: AbelianGroup,
                     weights: Mapping[str, GroupElement]) -> list[tuple[Relation, bool, GroupElement | None]]:
    """For each relation: (relation, is homogeneous, degree or None)."""
    missing = sorted(set(presentation.quiver.arrows) - set(weights))
    if missing:
        raise ValueError(f"weight function is not defined on arrows {missing}")
    out = []
    for r in presentation.relations:
        degrees = {path_weight(group, weights, p) for p in r.paths}
        if len(degrees) == 1:
            out.append((r, True, degrees.pop()))
        else:
            out.append((r, False, None))
    return out


# ---- isomorphism oracle ------------------------------------------------


def _mapped_forms(relations: Sequence[Relation], arrow_map: Mapping[str, str] | None = None) -> set:
    forms = set()
    for r in relations:
        if arrow_map is not None:
            r = Relation(tuple((c, tuple(arrow_map[a] for a in p)) for c, p in r.terms), r.kind)
        forms.add(r.normal_form())
    return forms


class _Profile:
    def __init__(self, p: Presentation):
        q = p.quiver
        self.quiver = q
        self.arrows = list(q.arrows)
        self.out = defaultdict(list)
        self.inn = defaultdict(list)
        for a, (s, t) in q.arrows.items():
            self.out[s].append(a)
            self.inn[t].append(a)
        self.vsig = {
            v: (len(self.out[v]), len(self.inn[v]), sum(1 for a in self.out[v] if q.target(a) == v))
            for v in q.vertices
        }
        occ = defaultdict(list)
        self.mono = set()
        for r in p.relations:
            shape = (len(r.terms), tuple(sorted(len(x) for x in r.paths)))
            for path in r.paths:
                for a, n in Counter(path).items():
                    occ[a].append(shape + (len(path), n))
            if r.is_monomial:
                self.mono.add(r.paths[0])
        self.asig = {
            a: (self.vsig[s], self.vsig[t], s == t, tuple(sorted(occ[a])))
            for a, (s, t) in q.arrows.items()
        }


def presentation_iso(p1: Presentation, p2: Presentation, max_arrows: int = 600) -> dict | None:
    """Search for a quiver isomorphism carrying the relations of ``p1`` onto those of ``p2``.

    Relations are compared as sets, each up to a nonzero scalar.  Returns
    ``{"vertices": {...}, "arrows": {...}}`` or None.  The search is a
    backtracking over arrows, exponential in the worst case, so quivers with
    more than ``max_arrows`` arrows are refused.
    """
    q1, q2 = p1.quiver, p2.quiver
    if len(q1.arrows) > max_arrows or len(q2.arrows) > max_arrows:
        raise PresentationTooLarge(
            f"presentation_iso refuses quivers above {max_arrows} arrows "
            f"({len(q1.arrows)} and {len(q2.arrows)} given)"
        )
    if (len(q1.vertices), len(q1.arrows), len(p1.relations)) != (len(q2.vertices), len(q2.arrows), len(p2.relations)):
        return None
    A, B = _Profile(p1), _Profile(p2)
    if Counter(A.vsig.values()) != Counter(B.vsig.values()):
        return None
    if Counter(A.asig.values()) != Counter(B.asig.values()):
        return None
    target_forms = _mapped_forms(p2.relations)
    if len(target_forms) != len(_mapped_forms(p1.relations)):
        return None

    by_sig = defaultdict(list)
    for b in B.arrows:
        by_sig[B.asig[b]].append(b)

    # arrows in breadth-first order so each new arrow touches a mapped vertex when possible
    sig_count = Counter(A.asig.values())
    order: list[str] = []
    placed: set[str] = set()
    remaining = sorted(A.arrows, key=lambda a: (sig_count[A.asig[a]], a))
    for seed in remaining:
        if seed in placed:
            continue
        queue = deque([seed])
        placed.add(seed)
        while queue:
            a = queue.popleft()
            order.append(a)
            s, t = q1.arrows[a]
            for v in (s, t):
                for nb in A.out[v] + A.inn[v]:
                    if nb not in placed:
                        placed.add(nb)
                        queue.append(nb)
    position = {a: i for i, a in enumerate(order)}
    mono_due = defaultdict(list)
    for path in A.mono:
        mono_due[max(position[a] for a in path)].append(path)

    amap: dict[str, str] = {}
    vmap: dict[str, str] = {}
    vinv: dict[str, str] = {}
    used: set[str] = set()

    def consistent(a: str, b: str) -> bool:
        for v1, v2 in ((q1.source(a), q2.source(b)), (q1.target(a), q2.target(b))):
            if v1 in vmap:
                if vmap[v1] != v2:
                    return False
            elif v2 in vinv or A.vsig[v1] != B.vsig[v2]:
                return False
        for c in A.inn[q1.source(a)]:
            if c in amap and ((c, a) in A.mono) != ((amap[c], b) in B.mono):
                return False
        for c in A.out[q1.target(a)]:
            if c in amap and ((a, c) in A.mono) != ((b, amap[c]) in B.mono):
                return False
        if q1.source(a) == q1.target(a) and ((a, a) in A.mono) != ((b, b) in B.mono):
            return False
        return True

    def assign(a: str, b: str) -> list[str]:
        amap[a] = b
        used.add(b)
        fresh = []
        for v1, v2 in ((q1.source(a), q2.source(b)), (q1.target(a), q2.target(b))):
            if v1 not in vmap:
                vmap[v1] = v2
                vinv[v2] = v1
                fresh.append(v1)
        return fresh

    def unassign(a: str, fresh: list[str]) -> None:
        used.discard(amap.pop(a))
        for v1 in fresh:
            del vinv[vmap.pop(v1)]

    def finish() -> dict | None:
        lonely1 = [v for v in q1.vertices if v not in vmap]
        lonely2 = [v for v in q2.vertices if v not in vinv]
        full_v = dict(vmap)
        for v1 in lonely1:
            match = next((v2 for v2 in lonely2 if B.vsig[v2] == A.vsig[v1]), None)
            if match is None:
                return None
            lonely2.remove(match)
            full_v[v1] = match
        if _mapped_forms(p1.relations, amap) != target_forms:
            return None
        return {"vertices": full_v, "arrows": dict(amap)}

    def candidates(i: int):
        a = order[i]
        s, t = q1.arrows[a]
        if s in vmap:
            pool = B.out[vmap[s]]
        elif t in vmap:
            pool = B.inn[vmap[t]]
        else:
            pool = by_sig[A.asig[a]]
        return iter(pool)

    if not order:
        return finish()
    # explicit stack instead of recursion: quivers can have thousands of arrows
    stack = [candidates(0)]
    fresh_stack: list[list[str]] = []
    while stack:
        i = len(stack) - 1
        a = order[i]
        if a in amap:
            unassign(a, fresh_stack.pop())
        for b in stack[-1]:
            if b in used or B.asig[b] != A.asig[a] or not consistent(a, b):
                continue
            fresh = assign(a, b)
            if not all(tuple(amap[x] for x in path) in B.mono for path in mono_due[i]):
                unassign(a, fresh)
                continue
            if i + 1 == len(order):
                result = finish()
                if result is not None:
                    return result
                unassign(a, fresh)
                continue
            fresh_stack.append(fresh)
            stack.append(candidates(i + 1))
            break
        else:
            stack.pop()
    return None


# ---- rendering ----------------------------------------------------------


def _format_coeff(c: Fraction) -> str:
    return str(c)


def render_path(path: Path, labels: Mapping[str, str] | None = None) -> str:
    labels = labels or {}
    names = [labels.get(a, a) for a in path]
    n = len(names)
    for period in range(1, n):
        if n % period == 0 and names == names[:period] * (n // period):
            inner = " ".join(names[:period])
            return f"({inner})^{n // period}" if period > 1 else f"{inner}^{n}"
    return " ".join(names)


def render_relation(r: Relation, labels: Mapping[str, str] | None = None) -> str:
    parts = []
    for i, (c, p) in enumerate(r.terms):
        body = render_path(p, labels)
        if c == 1:
            text = body
        elif c == -1:
            text = f"-{body}"
        else:
            text = f"{_format_coeff(c)}*{body}" if c > 0 else f"-{_format_coeff(-c)}*{body}"
        if i and text.startswith("-"):
            parts.append(f"- {text[1:]}")
        elif i:
            parts.append(f"+ {text}")
        else:
            parts.append(text)
    return " ".join(parts)


def render_text(p: Presentation, labels: Mapping[str, str] | None = None) -> str:
    labels = labels or {}
    lines = [f"quiver: {len(p.quiver.vertices)} vertices, {len(p.quiver.arrows)} arrows"]
    for a, (s, t) in p.quiver.arrows.items():
        lines.append(f"  {labels.get(a, a)}: v_{s} -> v_{t}")
    lines.append(f"relations ({len(p.relations)}):")
    for r in p.relations:
        lines.append(f"  [{r.kind}] {render_relation(r, labels)}")
    return "\n".join(lines)
