"""Brauer graphs as combinatorial maps.

A dart is a pair ``(edge, side)``; the dart ``(e, k)`` sits at the vertex
``ends(e)[k]``.  The rotation ``sigma`` sends a dart to the next dart in the
cyclic order at its vertex and the pairing ``alpha`` swaps the two darts of an
edge.  Loops are just edges whose two darts share a vertex, so every statement
about an edge-occurrence at a vertex is a statement about a dart.
"""

from __future__ import annotations

from collections import Counter, deque
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

Dart = tuple[str, int]


class BrauerGraphError(ValueError):
    """Raised for invalid Brauer graph data; ``diagnostics`` lists every problem found."""

    def __init__(self, diagnostics: Sequence[str]):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(self.diagnostics))


def dart_name(d: Dart) -> str:
    return f"{d[0]}.{d[1]}"


def parse_dart(name: str) -> Dart:
    edge, _, side = name.rpartition(".")
    if not edge or side not in ("0", "1"):
        raise ValueError(f"malformed dart name {name!r}; expected '<edge>.<0|1>'")
    return edge, int(side)


def validate_graph(
    multiplicity: Mapping[str, int],
    edges: Mapping[str, Sequence[str]],
    rotation: Mapping[str, Sequence[Dart]],
    q: Mapping[Dart, Fraction] | None = None,
    allow_disconnected: bool = False,
) -> list[str]:
    """Return every violated invariant of the raw graph data (empty list means valid)."""
    problems = []
    for v, m in multiplicity.items():
        if not isinstance(m, int) or m < 1:
            problems.append(f"vertex {v}: multiplicity must be an integer >= 1, got {m!r}")
    if not edges:
        problems.append("graph has no edges")
    for e, ends in edges.items():
        if len(ends) != 2:
            problems.append(f"edge {e}: needs exactly two ends, got {list(ends)}")
            continue
        for v in ends:
            if v not in multiplicity:
                problems.append(f"edge {e}: unknown endpoint vertex {v}")
    for v in rotation:
        if v not in multiplicity:
            problems.append(f"rotation given for unknown vertex {v}")
    seen: Counter = Counter()
    for v, darts in rotation.items():
        for d in darts:
            seen[d] += 1
            e, k = d
            if e not in edges:
                problems.append(f"unpaired dart {dart_name(d)} at vertex {v}: edge {e} is not declared")
            elif len(edges[e]) == 2 and edges[e][k] != v:
                problems.append(f"dart {dart_name(d)} listed at {v} but edge {e} has that end at {edges[e][k]}")
    for d, n in seen.items():
        if n > 1:
            problems.append(f"dart {dart_name(d)} appears {n} times in the rotation")
    for e in edges:
        for k in (0, 1):
            if (e, k) not in seen:
                problems.append(f"dart {e}.{k} is missing from the rotation")
    for v in multiplicity:
        if not rotation.get(v):
            problems.append(f"vertex {v} has no incident edges")
    if problems:
        return problems

    if not allow_disconnected:
        adjacency = {v: set() for v in multiplicity}
        for a, b in edges.values():
            adjacency[a].add(b)
            adjacency[b].add(a)
        start = next(iter(multiplicity))
        reached = {start}
        queue = deque([start])
        while queue:
            for w in adjacency[queue.popleft()]:
                if w not in reached:
                    reached.add(w)
                    queue.append(w)
        if len(reached) != len(multiplicity):
            missing = sorted(set(multiplicity) - reached)
            problems.append(f"graph is disconnected; unreachable vertices {missing}")

    if q is not None:
        valency = {v: len(ds) for v, ds in rotation.items()}
        truncated = {
            (e, k) for e, ends in edges.items() for k in (0, 1)
            if valency[ends[k]] == 1 and multiplicity[ends[k]] == 1
        }
        x_set = {(e, k) for e in edges for k in (0, 1) if (e, 0) not in truncated and (e, 1) not in truncated}
        for d, value in q.items():
            if d not in x_set:
                problems.append(f"quantizer defined on dart {dart_name(d)} of an edge truncated at an endpoint")
            elif value == 0:
                problems.append(f"quantizer value at dart {dart_name(d)} is zero")
        for d in sorted(x_set - set(q)):
            problems.append(f"quantizer missing at dart {dart_name(d)}")
    return problems


class BrauerGraph:
    """A (quantized) Brauer graph ``(Gamma, o, m, q)`` stored as a combinatorial map.

    Parameters
    ----------
    multiplicity : vertex id -> m(vertex) >= 1; its order is the vertex order.
    edges : edge id -> (end0, end1).
    rotation : vertex id -> darts at that vertex in cyclic (clockwise) order.
    q : optional quantizer, dart -> nonzero Fraction, defined exactly on the
        darts of edges that are not truncated at either end.
    allow_disconnected : covering graphs can fall apart into several copies;
        user input is expected to be connected.
    """

    def __init__(
        self,
        multiplicity: Mapping[str, int],
        edges: Mapping[str, Sequence[str]],
        rotation: Mapping[str, Sequence[Dart]],
        q: Mapping[Dart, Fraction | int | str] | None = None,
        allow_disconnected: bool = False,
    ):
        rotation = {v: tuple((str(e), int(k)) for e, k in ds) for v, ds in rotation.items()}
        if q is not None:
            q = {(str(e), int(k)): Fraction(value) for (e, k), value in q.items()}
        problems = validate_graph(multiplicity, edges, rotation, q, allow_disconnected)
        if problems:
            raise BrauerGraphError(problems)
        self._m = dict(multiplicity)
        self._edges = {e: (ends[0], ends[1]) for e, ends in edges.items()}
        self._rotation = {v: rotation[v] for v in self._m}
        self._q = dict(q) if q is not None else None
        self.allow_disconnected = allow_disconnected

        self._sigma: dict[Dart, Dart] = {}
        self._sigma_inv: dict[Dart, Dart] = {}
        self._position: dict[Dart, int] = {}
        for darts in self._rotation.values():
            for pos, d in enumerate(darts):
                nxt = darts[(pos + 1) % len(darts)]
                self._sigma[d] = nxt
                self._sigma_inv[nxt] = d
                self._position[d] = pos
        self._darts = [(e, k) for e in self._edges for k in (0, 1)]
        self._truncated = frozenset(
            d for d in self._darts if self.valency(self.vertex(d)) == 1 and self._m[self.vertex(d)] == 1
        )
        self._y = [e for e in self._edges if (e, 0) not in self._truncated and (e, 1) not in self._truncated]
        self._y_set = frozenset(self._y)

    @classmethod
    def build(
        cls,
        multiplicity: Mapping[str, int],
        edges: Mapping[str, Sequence[str]],
        rotation: Mapping[str, Sequence[str]],
        q: Mapping[str, Fraction | int | str] | None = None,
        allow_disconnected: bool = False,
    ) -> BrauerGraph:
        """Build from rotations written as edge ids.

        An edge listed at one of its endpoints becomes the dart on that side;
        a loop's first listing is side 0 and its second side 1.  Keys of ``q``
        are dart names ``"<edge>.<side>"``.
        """
        darts_rotation = {}
        for v, edge_ids in rotation.items():
            darts = []
            for e in edge_ids:
                e = str(e)
                ends = edges[e]
                if ends[0] == ends[1]:
                    side = 1 if (e, 0) in darts else 0
                else:
                    side = list(ends).index(v)
                darts.append((e, side))
            darts_rotation[v] = darts
        qd = None if q is None else {parse_dart(name): value for name, value in q.items()}
        return cls(multiplicity, {str(e): tuple(ends) for e, ends in edges.items()},
                   darts_rotation, qd, allow_disconnected)

    # ---- basic structure -------------------------------------------------

    @property
    def vertices(self) -> list[str]:
        return list(self._m)

    @property
    def edges(self) -> list[str]:
        return list(self._edges)

    @property
    def darts(self) -> list[Dart]:
        return list(self._darts)

    @property
    def quantizer_map(self) -> dict[Dart, Fraction] | None:
        return None if self._q is None else dict(self._q)

    @property
    def is_quantized(self) -> bool:
        return self._q is not None

    def multiplicity(self, v: str) -> int:
        return self._m[v]

    def ends(self, e: str) -> tuple[str, str]:
        return self._edges[e]

    def rotation(self, v: str) -> tuple[Dart, ...]:
        return self._rotation[v]

    def vertex(self, d: Dart) -> str:
        return self._edges[d[0]][d[1]]

    def sigma(self, d: Dart) -> Dart:
        return self._sigma[d]

    def sigma_inverse(self, d: Dart) -> Dart:
        return self._sigma_inv[d]

    @staticmethod
    def alpha(d: Dart) -> Dart:
        return d[0], 1 - d[1]

    def valency(self, v: str) -> int:
        return len(self._rotation[v])

    def is_loop(self, e: str) -> bool:
        a, b = self._edges[e]
        return a == b

    def has_dart(self, d: Dart) -> bool:
        return d in self._sigma

    def __repr__(self) -> str:
        return f"BrauerGraph({len(self._m)} vertices, {len(self._edges)} edges)"

    # ---- Brauer graph notions -------------------------------------------

    def successor_sequence(self, d: Dart) -> list[Dart]:
        """The darts at ``vertex(d)`` in cyclic order starting at ``d``."""
        if d not in self._position:
            raise KeyError(f"unknown dart {d!r}")
        darts = self._rotation[self.vertex(d)]
        pos = self._position[d]
        return list(darts[pos:] + darts[:pos])

    def is_truncated(self, d: Dart) -> bool:
        return d in self._truncated

    def is_special(self) -> bool:
        """The single edge with both ends truncated, whose algebra is K[x]/(x^2)."""
        return len(self._edges) == 1 and all(self.is_truncated(d) for d in self._darts)

    def y_edges(self) -> list[str]:
        return list(self._y)

    def in_y(self, e: str) -> bool:
        return e in self._y_set

    def x_darts(self) -> list[Dart]:
        return [(e, k) for e in self.y_edges() for k in (0, 1)]

    def index_sets(self) -> tuple[list[Dart], list[str], list[Dart]]:
        """The triple (X, Y, Z): quantizer darts, doubly non-truncated edges, all darts."""
        return self.x_darts(), self.y_edges(), self.darts

    def quantizer(self, d: Dart) -> Fraction:
        """q at ``d``; an unquantized graph behaves as q == 1."""
        if self._q is None:
            return Fraction(1)
        return self._q[d]

    def loops(self) -> list[str]:
        return [e for e in self._edges if self.is_loop(e)]

    def multi_edge_pairs(self) -> dict[frozenset, list[str]]:
        """Vertex pairs joined by two or more non-loop edges."""
        pairs: dict[frozenset, list[str]] = {}
        for e, (a, b) in self._edges.items():
            if a != b:
                pairs.setdefault(frozenset((a, b)), []).append(e)
        return {p: es for p, es in pairs.items() if len(es) > 1}

    def is_simple(self) -> bool:
        return not self.loops() and not self.multi_edge_pairs()

    def components(self) -> list[list[Dart]]:
        """Dart sets of the connected components, each in discovery order."""
        seen: set[Dart] = set()
        result = []
        for start in self._darts:
            if start in seen:
                continue
            comp = []
            stack = [start]
            seen.add(start)
            while stack:
                d = stack.pop()
                comp.append(d)
                for nd in (self._sigma[d], self.alpha(d)):
                    if nd not in seen:
                        seen.add(nd)
                        stack.append(nd)
            result.append(comp)
        return result

    def is_connected(self) -> bool:
        return len(self.components()) == 1

    def relabel(self, edge_map: Mapping[str, str], vertex_map: Mapping[str, str],
                flip: Iterable[str] = ()) -> BrauerGraph:
        """An isomorphic copy with renamed edges/vertices; edges in ``flip`` swap their sides."""
        flip = set(flip)

        def f(d: Dart) -> Dart:
            return edge_map[d[0]], (1 - d[1]) if d[0] in flip else d[1]

        edges = {}
        for e, (a, b) in self._edges.items():
            ends = (b, a) if e in flip else (a, b)
            edges[edge_map[e]] = (vertex_map[ends[0]], vertex_map[ends[1]])
        rotation = {vertex_map[v]: [f(d) for d in ds] for v, ds in self._rotation.items()}
        m = {vertex_map[v]: k for v, k in self._m.items()}
        q = None if self._q is None else {f(d): x for d, x in self._q.items()}
        return BrauerGraph(m, edges, rotation, q, self.allow_disconnected)

    def with_quantizer(self, q: Mapping[Dart, Fraction] | None) -> BrauerGraph:
        return BrauerGraph(self._m, self._edges, self._rotation, q, self.allow_disconnected)

    def iter_successor_pairs(self) -> Iterator[tuple[str, Dart, Dart]]:
        """Yield (vertex, d, sigma(d)): one entry per successor pair."""
        for v, darts in self._rotation.items():
            for d in darts:
                yield v, d, self._sigma[d]


# ---- isomorphism ---------------------------------------------------------


def _local_invariant(g: BrauerGraph, d: Dart, quantized: bool):
    v, w = g.vertex(d), g.vertex(g.alpha(d))
    inv = (g.valency(v), g.multiplicity(v), g.valency(w), g.multiplicity(w), v == w)
    if quantized:
        if g.in_y(d[0]):
            inv += (g.quantizer(d) / g.quantizer(g.alpha(d)),)
        else:
            inv += (None,)
    return inv


def _propagate(g1: BrauerGraph, g2: BrauerGraph, d1: Dart, d2: Dart) -> dict[Dart, Dart] | None:
    """Extend d1 -> d2 through sigma and alpha; None if the map is inconsistent."""
    phi = {d1: d2}
    used = {d2}
    stack = [d1]
    while stack:
        d = stack.pop()
        e = phi[d]
        for nd, ne in ((g1.sigma(d), g2.sigma(e)), (g1.alpha(d), g2.alpha(e))):
            image = phi.get(nd)
            if image is not None:
                if image != ne:
                    return None
            else:
                if ne in used:
                    return None
                phi[nd] = ne
                used.add(ne)
                stack.append(nd)
    return phi


def _respects_data(g1: BrauerGraph, g2: BrauerGraph, phi: Mapping[Dart, Dart], quantized: bool) -> bool:
    for d, e in phi.items():
        if g1.multiplicity(g1.vertex(d)) != g2.multiplicity(g2.vertex(e)):
            return False
    if quantized:
        for d, e in phi.items():
            if d[1] != 0 or not g1.in_y(d[0]):
                continue
            if not g2.in_y(e[0]):
                return False
            r1 = g1.quantizer(d) / g1.quantizer(g1.alpha(d))
            r2 = g2.quantizer(e) / g2.quantizer(g2.alpha(e))
            if r1 != r2:
                return False
    return True


def brauer_iso(g1: BrauerGraph, g2: BrauerGraph, quantized: bool = False) -> dict[Dart, Dart] | None:
    """Find a dart bijection commuting with sigma and alpha and preserving m.

    With ``quantized`` the ratio q(d)/q(alpha d) must also be preserved on every
    edge not truncated at either end.  Returns None when no isomorphism exists.
    Components are matched greedily, which is sound because isomorphism is an
    equivalence relation.
    """
    if len(g1.darts) != len(g2.darts) or len(g1.vertices) != len(g2.vertices):
        return None
    comps1 = g1.components()
    comps2 = g2.components()
    if sorted(map(len, comps1)) != sorted(map(len, comps2)):
        return None

    inv2_by_comp = []
    for comp in comps2:
        by_inv: dict = {}
        for d in comp:
            by_inv.setdefault(_local_invariant(g2, d, quantized), []).append(d)
        inv2_by_comp.append(by_inv)

    phi: dict[Dart, Dart] = {}
    free = set(range(len(comps2)))
    for comp in comps1:
        counts = Counter(_local_invariant(g1, d, quantized) for d in comp)
        start = min(comp, key=lambda d: (counts[_local_invariant(g1, d, quantized)], d))
        inv = _local_invariant(g1, start, quantized)
        found = None
        for j in sorted(free):
            if len(comps2[j]) != len(comp):
                continue
            for cand in inv2_by_comp[j].get(inv, ()):
                trial = _propagate(g1, g2, start, cand)
                if trial is not None and _respects_data(g1, g2, trial, quantized):
                    found = j, trial
                    break
            if found:
                break
        if found is None:
            return None
        free.discard(found[0])
        phi.update(found[1])
    return phi


def induced_maps(g1: BrauerGraph, phi: Mapping[Dart, Dart], g2: BrauerGraph) -> tuple[dict, dict]:
    """Edge and vertex maps underlying a dart isomorphism."""
    edge_map = {d[0]: e[0] for d, e in phi.items()}
    vertex_map = {g1.vertex(d): g2.vertex(e) for d, e in phi.items()}
    return edge_map, vertex_map


def canonical_form(g: BrauerGraph, quantized: bool = False) -> tuple:
    """Least propagation code over all start darts of each component.

    Two graphs have equal canonical forms exactly when they are isomorphic
    (quantized-isomorphic if ``quantized``).
    """
    codes = []
    for comp in g.components():
        best = None
        for start in comp:
            order = {start: 0}
            queue = deque([start])
            seq = []
            while queue:
                d = queue.popleft()
                seq.append(d)
                for nd in (g.sigma(d), g.alpha(d)):
                    if nd not in order:
                        order[nd] = len(order)
                        queue.append(nd)
            code = []
            for d in seq:
                item = (order[g.sigma(d)], order[g.alpha(d)], g.multiplicity(g.vertex(d)))
                if quantized:
                    ratio = g.quantizer(d) / g.quantizer(g.alpha(d)) if g.in_y(d[0]) else ""
                    item += (str(ratio),)
                code.append(item)
            code = tuple(code)
            if best is None or code < best:
                best = code
        codes.append(best)
    return tuple(sorted(codes))
