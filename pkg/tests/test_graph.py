"""Graph realization, period lift, and serialization."""

import json

import pytest

from markovforge import (export, export_dot, export_json, import_json,
                         lift_period, period, realize, user_spectrum)
from markovforge.graph import ROOT, ExplicitGraph, is_strongly_connected


def test_realize_flower_counts(spec2):
    # a(1)=1 self loop, a(4)=4 loops of length 4: 1 + 4*3 extra vertices,
    # 1 + 4*4 arrows
    g = realize(spec2, 4)
    assert g.root == ROOT
    assert len(g.vertices) == 13
    assert len(g.arrows) == 17
    assert is_strongly_connected(g)


def test_realize_rejects_multiple_short_loops():
    with pytest.raises(ValueError):
        realize(user_spectrum([2]))


def test_period_is_gcd_of_loop_lengths():
    assert period(realize(user_spectrum([1, 0, 0, 1]))) == 1
    assert period(realize(user_spectrum([0, 1, 0, 1]))) == 2
    assert period(realize(user_spectrum([0, 0, 1, 0, 0, 1]))) == 3


def test_lift_multiplies_period(spec2):
    g = realize(spec2, 4)
    lifted = lift_period(g, 3)
    assert len(lifted.vertices) == 3 * len(g.vertices)
    assert len(lifted.arrows) == 2 * len(g.vertices) + len(g.arrows)
    assert lifted.period_lift == 3
    assert period(lifted) == 3
    assert is_strongly_connected(lifted)


def test_lift_identity(spec2):
    g = realize(spec2, 4)
    assert lift_period(g, 1) is g


def test_lift_refuses_double_lift(spec2):
    lifted = lift_period(realize(spec2, 4), 2)
    with pytest.raises(ValueError):
        lift_period(lifted, 3)


def test_duplicate_arrow_rejected():
    with pytest.raises(ValueError):
        ExplicitGraph(root="u", vertices=("u",), arrows=(("u", "u"), ("u", "u")))


def test_dot_export_mentions_every_arrow(spec2):
    g = realize(spec2, 4)
    text = export_dot(g).decode()
    assert text.startswith("digraph")
    for src, dst in g.arrows:
        assert f'"{src}" -> "{dst}"' in text


def test_json_round_trip(spec2):
    g = lift_period(realize(spec2, 9), 2)
    data = export_json(g)
    back = import_json(data)
    assert back.vertices == g.vertices
    assert back.arrows == g.arrows
    assert back.root == g.root
    assert back.period_lift == g.period_lift
    assert export_json(back) == data


def test_export_dispatch(spec2):
    g = realize(spec2, 4)
    assert export(g, "dot") == export_dot(g)
    assert export(g, "json") == export_json(g)
    with pytest.raises(ValueError):
        export(g, "gml")


def test_import_rejects_malformed():
    with pytest.raises(Exception):
        import_json(b"not json")
    with pytest.raises(Exception):
        import_json(json.dumps({"vertices": ["a"]}).encode())


def test_strong_connectivity_detects_sink():
    g = ExplicitGraph(root="u", vertices=("u", "v"),
                      arrows=(("u", "u"), ("u", "v")))
    assert not is_strongly_connected(g)
