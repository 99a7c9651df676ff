"""JSON and DOT encodings.  Every JSON document carries ``"format": 1``."""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .action import FreeBrauerAction, OrbitData
from .covering import Classification, CoveringOutput
from .groups import AbelianGroup, GroupElement
from .presentation import Presentation, Quiver, Relation
from .ribbon import BrauerGraph, dart_name, parse_dart
from .weighting import BrauerWeighting

FORMAT = 1


class SchemaError(ValueError):
    pass


def _need(data: dict, key: str, where: str) -> Any:
    if not isinstance(data, dict) or key not in data:
        raise SchemaError(f"{where}: missing field {key!r}")
    return data[key]


def _check_format(data: Any, where: str) -> None:
    if isinstance(data, dict) and data.get("format", FORMAT) != FORMAT:
        raise SchemaError(f"{where}: unsupported format {data['format']!r}")


def dumps(obj: dict) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


# ---- graphs --------------------------------------------------------------


def graph_to_json(g: BrauerGraph) -> dict:
    out = {
        "format": FORMAT,
        "vertices": [{"id": v, "m": g.multiplicity(v)} for v in g.vertices],
        "edges": [{"id": e, "ends": list(g.ends(e))} for e in g.edges],
        "rotation": {v: [dart_name(d) for d in g.rotation(v)] for v in g.vertices},
    }
    if g.is_quantized:
        out["q"] = {dart_name(d): str(x) for d, x in g.quantizer_map.items()}
    if g.allow_disconnected:
        out["allow_disconnected"] = True
    return out


def graph_from_json(data: dict) -> BrauerGraph:
    _check_format(data, "graph")
    try:
        m = {str(v["id"]): int(v["m"]) for v in _need(data, "vertices", "graph")}
        edges = {str(e["id"]): tuple(e["ends"]) for e in _need(data, "edges", "graph")}
        rotation = {str(v): [parse_dart(name) for name in darts]
                    for v, darts in _need(data, "rotation", "graph").items()}
        q = None
        if "q" in data and data["q"] is not None:
            q = {parse_dart(name): Fraction(value) for name, value in data["q"].items()}
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        if isinstance(exc, SchemaError):
            raise
        raise SchemaError(f"graph: malformed field ({exc})") from exc
    return BrauerGraph(m, edges, rotation, q, allow_disconnected=bool(data.get("allow_disconnected", False)))


def to_dot(g: BrauerGraph, name: str = "brauer") -> str:
    """Undirected multigraph; node labels carry multiplicities, comments carry rotations."""
    lines = [f"graph {json.dumps(name)} {{"]
    for v in g.vertices:
        order = " ".join(dart_name(d) for d in g.rotation(v))
        lines.append(f"  // rotation at {v}: {order}")
        lines.append(f"  {json.dumps(v)} [label={json.dumps(f'{v} (m={g.multiplicity(v)})')}];")
    for e in g.edges:
        a, b = g.ends(e)
        lines.append(f"  {json.dumps(a)} -- {json.dumps(b)} [label={json.dumps(e)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---- groups, actions, weightings ------------------------------------------


def group_from_json(data: dict) -> AbelianGroup:
    try:
        return AbelianGroup.from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"group: malformed ({exc})") from exc


def action_to_json(action: FreeBrauerAction) -> dict:
    return {
        "format": FORMAT,
        "group": action.group.to_json(),
        "generators": [
            {"dart_map": {dart_name(d): dart_name(e) for d, e in sorted(gen.items())}} for gen in action.generators
        ],
    }


def action_from_json(data: dict, graph: BrauerGraph | None = None) -> FreeBrauerAction:
    _check_format(data, "action")
    group = group_from_json(_need(data, "group", "action"))
    try:
        gens = [{parse_dart(a): parse_dart(b) for a, b in gen["dart_map"].items()}
                for gen in _need(data, "generators", "action")]
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"action: malformed generator ({exc})") from exc
    return FreeBrauerAction(group, gens, graph.darts if graph is not None else None)


def weighting_to_json(W: BrauerWeighting) -> dict:
    return {
        "format": FORMAT,
        "group": W.group.to_json(),
        "W": {dart_name(d): list(g) for d, g in sorted(W.W.items())},
    }


def weighting_from_json(data: dict) -> BrauerWeighting:
    _check_format(data, "weighting")
    group = group_from_json(_need(data, "group", "weighting"))
    try:
        return BrauerWeighting(group, {parse_dart(d): g for d, g in _need(data, "W", "weighting").items()})
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"weighting: malformed ({exc})") from exc


def arrow_weights_to_json(group: AbelianGroup, weights: dict[str, GroupElement]) -> dict:
    return {"format": FORMAT, "group": group.to_json(), "arrow_weights": {a: list(g) for a, g in weights.items()}}


def arrow_weights_from_json(data: dict) -> tuple[AbelianGroup, dict[str, GroupElement]]:
    _check_format(data, "weight function")
    group = group_from_json(_need(data, "group", "weight function"))
    try:
        weights = {a: group.element(g) for a, g in _need(data, "arrow_weights", "weight function").items()}
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"weight function: malformed ({exc})") from exc
    return group, weights


# ---- presentations ----------------------------------------------------------


def presentation_to_json(p: Presentation) -> dict:
    return {
        "format": FORMAT,
        "vertices": list(p.quiver.vertices),
        "arrows": [{"id": a, "source": s, "target": t} for a, (s, t) in p.quiver.arrows.items()],
        "relations": [
            {"kind": r.kind, "terms": [{"coeff": str(c), "path": list(path)} for c, path in r.terms]}
            for r in p.relations
        ],
    }


def presentation_from_json(data: dict) -> Presentation:
    _check_format(data, "presentation")
    try:
        vertices = [str(v) for v in _need(data, "vertices", "presentation")]
        arrows = {a["id"]: (a["source"], a["target"]) for a in _need(data, "arrows", "presentation")}
        relations = [
            Relation(tuple((Fraction(t["coeff"]), tuple(t["path"])) for t in r["terms"]), r.get("kind", "generic"))
            for r in _need(data, "relations", "presentation")
        ]
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"presentation: malformed ({exc})") from exc
    return Presentation(Quiver(vertices, arrows), relations)


# ---- results ---------------------------------------------------------------


def orbit_to_json(orbit: OrbitData) -> dict:
    G = orbit.action.group
    return {
        "format": FORMAT,
        "graph": graph_to_json(orbit.graph),
        "dart_projection": {dart_name(d): dart_name(e) for d, e in orbit.dart_projection.items()},
        "vertex_projection": dict(orbit.vertex_projection),
        "decomposition": {
            v: {"k": k, "s": s, "g": list(g)} for v, (k, s, g) in orbit.decomposition.items()
        },
        "group": G.to_json(),
    }


def covering_to_json(out: CoveringOutput) -> dict:
    return {
        "format": FORMAT,
        "graph": graph_to_json(out.graph),
        "action": action_to_json(out.action),
        "projection": {dart_name(x): {"dart": dart_name(d), "element": list(g)} for x, (d, g) in out.projection.items()},
        "vertex_classes": {x: {"vertex": v, "coset": s} for x, (v, s) in out.vertex_class.items()},
        "vertex_data": {
            v: {"omega": list(data.omega), "ord": data.order} for v, data in out.vertex_info.items()
        },
        "checks": dict(out.checks),
    }


def classification_to_json(c: Classification) -> dict:
    out = {"format": FORMAT, "kind": c.kind, "witness": c.witness}
    if c.weighting is not None:
        out["weighting"] = weighting_to_json(c.weighting)
    return out


def tower_to_json(tower) -> dict:
    return {
        "format": FORMAT,
        "base": graph_to_json(tower.base),
        "stages": [
            {
                "stage": s.tag,
                "group": s.group.to_json(),
                "weighting": weighting_to_json(s.weighting),
                "edges": len(s.output.graph.edges),
                "vertices": len(s.output.graph.vertices),
                "checks": dict(s.checks),
                "output": graph_to_json(s.output.graph),
            }
            for s in tower.stages
        ],
        "top": {"edges": len(tower.top.edges), "vertices": len(tower.top.vertices), "simple": tower.top.is_simple()},
    }
