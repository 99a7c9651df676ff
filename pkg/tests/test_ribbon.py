from fractions import Fraction

import pytest

from brauer import gallery
from brauer.generate import random_graph, scramble
from brauer.ribbon import BrauerGraph, BrauerGraphError, brauer_iso, canonical_form, validate_graph


def test_single_edge_is_valid_and_has_empty_x():
    g = gallery.single_edge()
    X, Y, Z = g.index_sets()
    assert X == [] and Y == [] and len(Z) == 2
    assert g.is_special()


def test_unpaired_dart_reported():
    problems = validate_graph({"a": 1, "b": 1}, {"1": ("a", "b")}, {"a": [("1", 0), ("2", 0)], "b": [("1", 1)]})
    assert any("unpaired dart" in p for p in problems)


def test_zero_quantizer_rejected():
    with pytest.raises(BrauerGraphError, match="zero"):
        gallery.triangle_m3({"1.0": 0, "1.1": 1, "2.0": 1, "2.1": 1, "3.0": 1, "3.1": 1})


def test_quantizer_on_truncated_edge_rejected():
    with pytest.raises(BrauerGraphError, match="truncated"):
        gallery.three_edge_tree({"1.0": 1, "3.0": 1, "3.1": 1})


def test_missing_dart_and_wrong_vertex():
    problems = validate_graph({"a": 1, "b": 1}, {"1": ("a", "b")}, {"a": [("1", 1)], "b": []})
    assert problems


def test_disconnected_rejected_unless_allowed():
    m = {"a": 1, "b": 1, "c": 1, "d": 1}
    edges = {"1": ("a", "b"), "2": ("c", "d")}
    rot = {"a": [("1", 0)], "b": [("1", 1)], "c": [("2", 0)], "d": [("2", 1)]}
    with pytest.raises(BrauerGraphError):
        BrauerGraph(m, edges, rot)
    assert len(BrauerGraph(m, edges, rot, allow_disconnected=True).components()) == 2


def test_successor_sequences():
    t = gallery.triangle_m3()
    assert [d[0] for d in t.successor_sequence(("1", 0))] == ["1", "3"]
    loop = gallery.single_loop()
    assert loop.successor_sequence(("l", 0)) == [("l", 0), ("l", 1)]
    assert loop.successor_sequence(("l", 1)) == [("l", 1), ("l", 0)]
    tree = gallery.three_edge_tree()
    assert tree.successor_sequence(("1", 0)) == [("1", 0)]


def test_truncation_examples():
    tree = gallery.three_edge_tree()
    assert tree.is_truncated(("1", 0))
    assert not tree.is_truncated(("3", 0))
    assert not any(gallery.single_loop().is_truncated(d) for d in gallery.single_loop().darts)


def test_index_sets_examples():
    X, Y, _ = gallery.three_edge_tree().index_sets()
    assert sorted(X) == [("3", 0), ("3", 1)] and Y == ["3"]
    assert len(gallery.triangle_m3().index_sets()[0]) == 6


def test_valency_sum(rng):
    for _ in range(50):
        g = random_graph(rng)
        assert sum(g.valency(v) for v in g.vertices) == 2 * len(g.edges) == len(g.darts)
        for d in g.darts:
            seq = g.successor_sequence(d)
            assert len(seq) == g.valency(g.vertex(d))
            x = d
            for _ in seq:
                x = g.sigma(x)
            assert x == d


def test_iso_self_and_relabel(rng):
    for _ in range(60):
        g = random_graph(rng)
        phi = brauer_iso(g, g, quantized=True)
        assert phi is not None
        h = scramble(rng, g)
        phi = brauer_iso(g, h, quantized=True)
        assert phi is not None
        inv = brauer_iso(h, g, quantized=True)
        assert inv is not None
        assert canonical_form(g, True) == canonical_form(h, True)


def test_iso_detects_differences():
    assert brauer_iso(gallery.star(3), gallery.star(4)) is None
    assert brauer_iso(gallery.star(3, 2), gallery.star(3, 1)) is None
    # same graph, changed quantizer ratio on one edge
    q1 = {f"{e}.{k}": Fraction(1) for e in "123" for k in (0, 1)}
    q2 = dict(q1)
    q2["2.0"] = Fraction(5)
    a, b = gallery.triangle_m3(q1), gallery.triangle_m3(q2)
    assert brauer_iso(a, b) is not None
    assert brauer_iso(a, b, quantized=True) is None


def test_iso_respects_rotation():
    # 4-star with rotation (1,2,3,4) versus (1,3,2,4): same underlying graph, different orientation only up to relabeling
    a = gallery.star(4)
    b = BrauerGraph.build({"mu": 1, **{f"l{k}": 1 for k in range(1, 5)}},
                          {f"i{k}": ("mu", f"l{k}") for k in range(1, 5)},
                          {"mu": ["i1", "i3", "i2", "i4"], **{f"l{k}": [f"i{k}"] for k in range(1, 5)}})
    assert brauer_iso(a, b) is not None
    # two loops interleaved versus nested at one vertex are different ribbon graphs
    inter = BrauerGraph({"v": 1}, {"x": ("v", "v"), "y": ("v", "v")},
                        {"v": [("x", 0), ("y", 0), ("x", 1), ("y", 1)]})
    nested = BrauerGraph({"v": 1}, {"x": ("v", "v"), "y": ("v", "v")},
                         {"v": [("x", 0), ("x", 1), ("y", 0), ("y", 1)]})
    assert brauer_iso(inter, nested) is None
