"""Command line interface.

Exit status: 0 success or witness found, 1 validation failure or negative
result, 2 usage, IO or parse error.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from pathlib import Path

from . import serialize as ser
from .action import ActionError, associated_weighting, orbit_graph, orbit_presentation, validate_action
from .appendix import InhomogeneousRelation, check_grading_roundtrip, covering_quiver
from .covering import (
    TheoremViolation,
    WeightingError,
    classify_weight_function,
    covering_graph,
    covering_presentation,
    roundtrip_orbit,
)
from .generate import SMALL_GROUPS, random_graph, random_weighting
from .presentation import (
    PresentationTooLarge,
    arrow_weights,
    build_presentation,
    presentation_iso,
    relation_degrees,
    render_text,
)
from .ribbon import BrauerGraphError, brauer_iso, dart_name
from .tower import TowerTooLarge, build_tower
from .weighting import validate_weighting


class UsageError(Exception):
    pass


def load_json(path: str) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc


def load_graph(path: str):
    data = load_json(path)
    if isinstance(data, dict) and "graph" in data and "vertices" not in data:
        data = data["graph"]
    return ser.graph_from_json(data)


def load_weighting(path: str):
    data = load_json(path)
    if isinstance(data, dict) and "weighting" in data and "W" not in data:
        data = data["weighting"]
    return ser.weighting_from_json(data)


def emit(text: str, out_path: str | None = None) -> None:
    if out_path:
        Path(out_path).write_text(text)
    else:
        sys.stdout.write(text)


# ---- subcommands ------------------------------------------------------------


def cmd_validate(args) -> int:
    graph = load_graph(args.graph)
    problems = []
    if args.action:
        problems += validate_action(graph, ser.action_from_json(load_json(args.action), graph))
    if args.weighting:
        problems += validate_weighting(graph, load_weighting(args.weighting))
    if problems:
        for p in problems:
            print(f"error: {p}")
        return 1
    print(f"ok: {len(graph.vertices)} vertices, {len(graph.edges)} edges")
    return 0


def cmd_present(args) -> int:
    p = build_presentation(load_graph(args.graph))
    emit(ser.dumps(ser.presentation_to_json(p)) if args.format == "json" else render_text(p) + "\n", args.output)
    return 0


def _graph_output(args, graph, payload: dict) -> None:
    if args.dot:
        emit(ser.to_dot(graph), args.output)
    else:
        emit(ser.dumps(payload), args.output)


def cmd_orbit(args) -> int:
    graph = load_graph(args.graph)
    action = ser.action_from_json(load_json(args.action), graph)
    orbit = orbit_graph(graph, action)
    payload = ser.orbit_to_json(orbit)
    if args.check_presentation:
        witness = presentation_iso(orbit_presentation(graph, action, check=False), build_presentation(orbit.graph))
        payload["presentation_iso"] = witness is not None
        if witness is None:
            _graph_output(args, orbit.graph, payload)
            return 1
    _graph_output(args, orbit.graph, payload)
    if args.figure:
        from .plotting import save_graphs

        save_graphs([("graph", graph), ("orbit", orbit.graph)], args.figure)
    return 0


def cmd_cover(args) -> int:
    graph = load_graph(args.graph)
    out = covering_graph(graph, load_weighting(args.weighting))
    _graph_output(args, out.graph, ser.covering_to_json(out))
    if args.figure:
        from .plotting import save_graphs

        save_graphs([("base", graph), ("cover", out.graph)], args.figure)
    return 0


def cmd_assoc_weight(args) -> int:
    graph = load_graph(args.graph)
    action = ser.action_from_json(load_json(args.action), graph)
    orbit, W = associated_weighting(graph, action)
    payload = {"format": 1, "orbit": ser.graph_to_json(orbit.graph), "weighting": ser.weighting_to_json(W),
               "omega": {v: {"omega": list(W.omega(orbit.graph, v)), "ord": W.ord(orbit.graph, v)}
                         for v in orbit.graph.vertices}}
    emit(ser.dumps(payload), args.output)
    return 0


def cmd_classify(args) -> int:
    graph = load_graph(args.graph)
    group, weights = ser.arrow_weights_from_json(load_json(args.weights))
    result = classify_weight_function(build_presentation(graph), group, weights)
    emit(ser.dumps(ser.classification_to_json(result)), args.output)
    return 0 if result.kind == "Brauer" else 1


def cmd_tower(args) -> int:
    graph = load_graph(args.graph)
    tower = build_tower(graph, p=args.p, max_edges=args.max_edges, check_presentation=not args.fast)
    emit(ser.dumps(ser.tower_to_json(tower)), args.output)
    if args.figure:
        from .plotting import save_tower

        save_tower(tower, args.figure)
    return 0


def cmd_iso(args) -> int:
    g1, g2 = load_graph(args.first), load_graph(args.second)
    if args.presentation:
        w = presentation_iso(build_presentation(g1), build_presentation(g2), args.max_arrows)
        payload = {"format": 1, "iso": w is not None, "witness": w}
    else:
        phi = brauer_iso(g1, g2, quantized=args.quantized)
        payload = {"format": 1, "iso": phi is not None,
                   "witness": None if phi is None else {dart_name(a): dart_name(b) for a, b in phi.items()}}
    emit(ser.dumps(payload), args.output)
    return 0 if payload["iso"] else 1


CHECKS = ["weighting", "cover", "orbit_iso", "orbit_presentation", "covering_presentation",
          "assoc_roundtrip", "classify"]


def run_checks(graph, W) -> dict[str, str]:
    """The round-trip theorems on one (graph, weighting) pair, as pass/fail/skip strings."""
    row = {c: "skip" for c in CHECKS}
    if validate_weighting(graph, W):
        row["weighting"] = "fail"
        return row
    row["weighting"] = "pass"
    try:
        rt = roundtrip_orbit(graph, W, check_presentation=False)
        row["cover"] = row["orbit_iso"] = "pass"
    except TheoremViolation:
        row["cover"] = "fail"
        return row
    witness = presentation_iso(orbit_presentation(rt.cover.graph, rt.cover.action, check=False),
                               build_presentation(graph))
    row["orbit_presentation"] = "pass" if witness is not None else "fail"
    witness = presentation_iso(covering_presentation(graph, W), build_presentation(rt.cover.graph))
    row["covering_presentation"] = "pass" if witness is not None else "fail"
    orbit, assoc = associated_weighting(rt.cover.graph, rt.cover.action)
    again = covering_graph(orbit.graph, assoc)
    ok = brauer_iso(again.graph, rt.cover.graph, quantized=graph.is_quantized) is not None
    row["assoc_roundtrip"] = "pass" if ok else "fail"
    p = build_presentation(graph)
    result = classify_weight_function(p, W.group, arrow_weights(p, W))
    recovered = result.weighting is not None and all(
        result.weighting[d] == W[d] for d in graph.darts if not graph.is_truncated(d)
    )
    row["classify"] = "pass" if result.kind == "Brauer" and recovered else "fail"
    return row


def cmd_roundtrip(args) -> int:
    cases = []
    if args.corpus:
        files = sorted(Path(args.corpus).glob("*.json"))
        if not files:
            raise UsageError(f"no .json cases in {args.corpus}")
        for f in files:
            data = load_json(str(f))
            try:
                cases.append((f.stem, ser.graph_from_json(data["graph"]), ser.weighting_from_json(data["weighting"])))
            except KeyError as exc:
                raise UsageError(f"{f}: case file needs 'graph' and 'weighting'") from exc
    else:
        if not (args.graph and args.weighting):
            raise UsageError("roundtrip needs GRAPH WEIGHTING or --corpus DIR")
        cases.append((Path(args.graph).stem, load_graph(args.graph), load_weighting(args.weighting)))
    rows = []
    for name, graph, W in cases:
        row = {"case": name}
        row.update(run_checks(graph, W))
        rows.append(row)
    lines = ["\t".join(["case"] + CHECKS)]
    lines += ["\t".join([row["case"]] + [row[c] for c in CHECKS]) for row in rows]
    text = "\n".join(lines) + "\n"
    if args.report:
        os.makedirs(args.report, exist_ok=True)
        Path(args.report, "roundtrip.tsv").write_text(text)
        from .plotting import save_matrix

        save_matrix(rows, CHECKS, str(Path(args.report, "roundtrip.png")))
    sys.stdout.write(text)
    return 0 if all(row[c] != "fail" for row in rows for c in CHECKS) else 1


def cmd_appendix_cover(args) -> int:
    graph = load_graph(args.graph)
    group, weights = ser.arrow_weights_from_json(load_json(args.weights))
    p = build_presentation(graph)
    try:
        cover = covering_quiver(p, group, weights)
    except InhomogeneousRelation as exc:
        print(f"error: {exc}")
        return 1
    payload = {"format": 1, "presentation": ser.presentation_to_json(cover.presentation),
               "degrees": [{"homogeneous": h, "degree": None if d is None else list(d)}
                           for _, h, d in relation_degrees(p, group, weights)]}
    witness = check_grading_roundtrip(p, group, weights)
    payload["orbit_roundtrip"] = witness is not None
    emit(ser.dumps(payload), args.output)
    return 0 if witness is not None else 1


def cmd_gen_corpus(args) -> int:
    rng = random.Random(args.seed)
    os.makedirs(args.outdir, exist_ok=True)
    for k in range(args.count):
        graph = random_graph(rng, max_edges=args.max_edges, max_m=args.max_m)
        group = rng.choice(SMALL_GROUPS)
        W = random_weighting(rng, graph, group)
        payload = {"format": 1, "graph": ser.graph_to_json(graph), "weighting": ser.weighting_to_json(W)}
        Path(args.outdir, f"case{k:04d}.json").write_text(ser.dumps(payload))
    print(f"wrote {args.count} cases to {args.outdir}")
    return 0


# ---- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="brauer", description="Brauer graphs, coverings and their algebras")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        p.add_argument("-o", "--output", help="write the report here instead of stdout")
        return p

    p = add("validate", cmd_validate, "check a graph, optionally with an action or weighting")
    p.add_argument("graph")
    p.add_argument("--action")
    p.add_argument("--weighting")

    p = add("present", cmd_present, "quiver and relations of the Brauer graph algebra")
    p.add_argument("graph")
    p.add_argument("--format", choices=["text", "json"], default="text")

    p = add("orbit", cmd_orbit, "orbit graph of a free Brauer action")
    p.add_argument("graph")
    p.add_argument("action")
    p.add_argument("--dot", action="store_true")
    p.add_argument("--figure")
    p.add_argument("--check-presentation", action="store_true", help="also compare the orbit presentation")

    p = add("cover", cmd_cover, "covering graph of a Brauer weighting")
    p.add_argument("graph")
    p.add_argument("weighting")
    p.add_argument("--dot", action="store_true")
    p.add_argument("--figure")

    p = add("assoc-weight", cmd_assoc_weight, "orbit graph with the associated Brauer weighting")
    p.add_argument("graph")
    p.add_argument("action")

    p = add("classify", cmd_classify, "classify an arrow weight function")
    p.add_argument("graph")
    p.add_argument("weights")

    p = add("tower", cmd_tower, "normalize by multiplicity, loop and multiple-edge coverings")
    p.add_argument("graph")
    p.add_argument("--p", type=int, default=2, help="cyclic order used for loop removal")
    p.add_argument("--max-edges", type=int, default=None)
    p.add_argument("--figure")
    p.add_argument("--fast", action="store_true", help="skip presentation checks in the stage round trips")

    p = add("iso", cmd_iso, "Brauer graph isomorphism witness")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--quantized", action="store_true")
    p.add_argument("--presentation", action="store_true", help="compare the presentations instead")
    p.add_argument("--max-arrows", type=int, default=600)

    p = add("roundtrip", cmd_roundtrip, "run every round-trip check; prints a pass/fail matrix")
    p.add_argument("graph", nargs="?")
    p.add_argument("weighting", nargs="?")
    p.add_argument("--corpus", help="directory of case files with 'graph' and 'weighting'")
    p.add_argument("--report", help="directory for roundtrip.tsv and roundtrip.png")

    p = add("appendix-cover", cmd_appendix_cover, "covering quiver of an arrow weight function")
    p.add_argument("graph")
    p.add_argument("weights")

    p = add("gen-corpus", cmd_gen_corpus, "write random (graph, weighting) cases")
    p.add_argument("outdir")
    p.add_argument("--count", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-edges", type=int, default=6)
    p.add_argument("--max-m", type=int, default=4)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and 2
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ser.SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (BrauerGraphError, ActionError, WeightingError) as exc:
        for line in getattr(exc, "diagnostics", [str(exc)]):
            print(f"error: {line}")
        return 1
    except (TowerTooLarge, PresentationTooLarge) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except TheoremViolation as exc:
        print(f"theorem check failed: {exc}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
