from fractions import Fraction

import pytest

from brauer import gallery
from brauer.generate import SMALL_GROUPS, random_graph, random_weighting, scramble
from brauer.presentation import (
    Presentation,
    PresentationTooLarge,
    Quiver,
    Relation,
    arrow_weights,
    build_presentation,
    cycle,
    presentation_iso,
    relation_degrees,
    render_text,
)

F = Fraction


def rel(*terms, kind="generic"):
    return Relation(tuple((F(c), tuple(p.split())) for c, p in terms), kind)


def expected_three_edge_tree(q_xi, q_lambda):
    quiver = Quiver(["v1", "v2", "v3"], {
        "alpha": ("v1", "v2"), "beta": ("v2", "v3"), "gamma": ("v3", "v1"), "delta": ("v3", "v3"),
    })
    return Presentation(quiver, [
        rel((q_xi, "delta delta"), (-q_lambda, "gamma alpha beta")),
        rel((1, "alpha beta gamma alpha")),
        rel((1, "beta gamma alpha beta")),
        rel((1, "beta delta")),
        rel((1, "delta gamma")),
    ])


def expected_triangle(q):
    quiver = Quiver(["v1", "v2", "v3"], {
        "a1": ("v1", "v2"), "ab1": ("v2", "v1"), "a2": ("v2", "v3"), "ab2": ("v3", "v2"),
        "a3": ("v3", "v1"), "ab3": ("v1", "v3"),
    })
    return Presentation(quiver, [
        rel((q["1mu"], "ab3 a3 ab3 a3 ab3 a3"), (-q["1nu"], "a1 ab1")),
        rel((q["2xi"], "a2 ab2"), (-q["2nu"], "ab1 a1")),
        rel((q["3xi"], "ab2 a2"), (-q["3mu"], "a3 ab3 a3 ab3 a3 ab3")),
        rel((1, "a1 a2")), rel((1, "a2 a3")), rel((1, "a3 a1")),
        rel((1, "ab1 ab3")), rel((1, "ab3 ab2")), rel((1, "ab2 ab1")),
    ])


def test_three_edge_tree_matches_hand_encoding():
    g = gallery.three_edge_tree({"3.0": "2", "3.1": "-1/3"})
    p = build_presentation(g)
    assert len(p.quiver.vertices) == 3 and len(p.quiver.arrows) == 4 and len(p.relations) == 5
    # q_{3,xi} sits at dart 3.0, q_{3,lambda} at 3.1
    w = presentation_iso(p, expected_three_edge_tree(F(2), F(-1, 3)))
    assert w is not None
    assert w["arrows"] == {"1.1": "alpha", "2.0": "beta", "3.1": "gamma", "3.0": "delta"}
    assert presentation_iso(p, expected_three_edge_tree(F(1), F(1))) is None


def test_triangle_matches_hand_encoding():
    names = {"1mu": "1.0", "1nu": "1.1", "2xi": "2.0", "2nu": "2.1", "3mu": "3.0", "3xi": "3.1"}
    values = {"1.0": "2", "1.1": "3", "2.0": "5", "2.1": "7", "3.0": "11", "3.1": "13"}
    p = build_presentation(gallery.triangle_m3(values))
    kinds = [r.kind for r in p.relations]
    assert kinds.count("one") == 3 and kinds.count("three") == 6 and len(p.quiver.arrows) == 6
    exps = [sorted(len(path) // 2 for path in r.paths) for r in p.relations if r.kind == "one"]
    assert exps == [[1, 3], [1, 1], [1, 3]]
    q = {k: F(values[v]) for k, v in names.items()}
    w = presentation_iso(p, expected_triangle(q))
    assert w is not None
    assert {a: w["arrows"][a] for a in gallery.TRIANGLE_M3_LABELS} == gallery.TRIANGLE_M3_LABELS
    q_bad = dict(q, **{"2xi": F(1)})
    assert presentation_iso(p, expected_triangle(q_bad)) is None


def test_single_edge_special_case():
    p = build_presentation(gallery.single_edge())
    assert p.quiver.vertices == ["1"] and p.quiver.arrows == {"x": ("1", "1")}
    assert [r.terms for r in p.relations] == [((F(1), ("x", "x")),)]


def test_single_loop_quiver_has_two_loops():
    p = build_presentation(gallery.single_loop())
    assert p.quiver.arrows == {"l.0": ("l", "l"), "l.1": ("l", "l")}


def test_cycle_examples():
    t = gallery.triangle_m3()
    assert cycle(t, ("1", 0)) == ("1.0", "3.0")  # ab3 a3
    assert cycle(t, ("1", 1)) == ("1.1", "2.1")  # a1 ab1
    assert cycle(gallery.three_edge_tree(), ("3", 0)) == ("3.0",)
    with pytest.raises(ValueError):
        cycle(gallery.three_edge_tree(), ("1", 0))


def test_render_text_uses_labels():
    text = render_text(build_presentation(gallery.three_edge_tree()), gallery.THREE_EDGE_TREE_LABELS)
    assert "delta^2 - gamma alpha beta" in text
    assert "beta delta" in text and "delta gamma" in text


def test_structural_invariants(rng):
    for _ in range(80):
        g = random_graph(rng)
        p = build_presentation(g)
        assert p.is_uniform()
        if not g.is_special():
            assert len(p.quiver.arrows) == sum(1 for d in g.darts if not g.is_truncated(d))
        for r in p.relations:
            assert len(r.terms) == (2 if r.kind == "one" else 1)
        arrows = [a for a in p.quiver.arrows if not a.startswith("x")]
        composable = sum(1 for a in arrows for b in arrows if p.quiver.target(a) == p.quiver.source(b))
        n_three = sum(1 for r in p.relations if r.kind == "three" and not r.paths[0][0].startswith("x"))
        assert n_three == composable - len(arrows)
        plain = build_presentation(g.with_quantizer(None))
        assert [r.paths for r in plain.relations] == [r.paths for r in p.relations]


def test_relabel_invariance(rng):
    for _ in range(40):
        g = random_graph(rng)
        h = scramble(rng, g)
        assert presentation_iso(build_presentation(g), build_presentation(h)) is not None


def test_iso_negative_cases():
    a = build_presentation(gallery.triangle_m3())
    b = build_presentation(gallery.z3_triangle(top_m=2))
    assert presentation_iso(a, b) is None
    assert presentation_iso(build_presentation(gallery.star(3)), build_presentation(gallery.star(4))) is None
    w = presentation_iso(a, a)
    assert w["arrows"] == {x: x for x in a.quiver.arrows}


def test_iso_size_bound():
    p = build_presentation(gallery.star(6))
    with pytest.raises(PresentationTooLarge):
        presentation_iso(p, p, max_arrows=3)


def test_brauer_weighting_makes_relations_homogeneous(rng):
    for _ in range(60):
        g = random_graph(rng)
        G = rng.choice(SMALL_GROUPS)
        W = random_weighting(rng, g, G)
        p = build_presentation(g)
        for r, homogeneous, degree in relation_degrees(p, G, arrow_weights(p, W)):
            assert homogeneous
            if r.kind == "one":
                assert degree == G.identity


def test_identity_weighting_gives_identity_degrees():
    p = build_presentation(gallery.triangle_m3())
    G = SMALL_GROUPS[0]
    weights = {a: G.identity for a in p.quiver.arrows}
    assert all(d == G.identity for _, _, d in relation_degrees(p, G, weights))
    with pytest.raises(ValueError):
        relation_degrees(p, G, {})
