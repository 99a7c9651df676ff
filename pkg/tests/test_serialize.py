import json
from fractions import Fraction

import pytest

from brauer import gallery
from brauer import serialize as ser
from brauer.generate import SMALL_GROUPS, random_action, random_graph, random_weighting
from brauer.presentation import build_presentation, presentation_iso
from brauer.ribbon import brauer_iso


def test_graph_roundtrip_random(rng):
    for _ in range(30):
        g = random_graph(rng)
        data = ser.graph_to_json(g)
        again = ser.graph_from_json(json.loads(ser.dumps(data)))
        assert ser.graph_to_json(again) == data
        assert brauer_iso(g, again, quantized=True) is not None


def test_quantizer_fractions_survive():
    g = gallery.three_edge_tree(q={"3.0": Fraction(2), "3.1": Fraction(-1, 3)})
    again = ser.graph_from_json(json.loads(ser.dumps(ser.graph_to_json(g))))
    assert again.quantizer(("3", 1)) == Fraction(-1, 3)


def test_weighting_and_action_roundtrip(rng):
    for _ in range(10):
        g = random_graph(rng)
        W = random_weighting(rng, g, rng.choice(SMALL_GROUPS))
        assert ser.weighting_from_json(ser.weighting_to_json(W)) == W
    graph, action = random_action(rng)[:2]
    again = ser.action_from_json(ser.action_to_json(action), graph)
    for gen in action.group.generators():
        assert again.permutation(gen) == action.permutation(gen)


def test_presentation_roundtrip():
    p = build_presentation(gallery.triangle_m3())
    again = ser.presentation_from_json(json.loads(ser.dumps(ser.presentation_to_json(p))))
    assert presentation_iso(p, again) is not None


def test_schema_errors():
    with pytest.raises(ser.SchemaError):
        ser.graph_from_json({"format": 1, "vertices": []})
    with pytest.raises(ser.SchemaError):
        ser.graph_from_json({**ser.graph_to_json(gallery.single_edge()), "format": 99})


def test_dumps_is_deterministic():
    g = gallery.triangle_m3()
    assert ser.dumps(ser.graph_to_json(g)) == ser.dumps(ser.graph_to_json(gallery.triangle_m3()))


def test_dot_multigraph():
    g = gallery.single_loop(m=2)
    dot = ser.to_dot(g)
    assert dot.startswith("graph") and dot.count("--") == len(g.edges)
    dot = ser.to_dot(gallery.triangle_m3())
    assert dot.count("--") == 3
