import json

import pytest

from oracles import battery_tables, naive_colorings
from ribbonquandle.errors import ParseError, ScriptError, StructuralError
from ribbonquandle.free import gen
from ribbonquandle.links import parse_pd, quandle_presentation
from ribbonquandle.presentation import coloring_profile, simplify
from ribbonquandle.surfaces import (Birth, Death, MovieScript, ReidemeisterRelabel, Saddle,
                                    ch_presentation, final_live_labels, hyperbolic_movie,
                                    load_script, movie_presentation, parse_marked_graph,
                                    resolve_markers, script_from_json, script_to_json)

SIZES = (3, 4, 5, 7, 6)


def profile(pres, battery):
    return coloring_profile(pres, battery)


def test_sphere_movie(corpus, battery):
    p = movie_presentation(load_script(corpus / "movies/sphere.movie.json"))
    assert p.generators == ("x",) and not p.relations
    assert profile(p, battery) == SIZES


def test_torus_movie(corpus, battery):
    p = movie_presentation(load_script(corpus / "movies/torus.movie.json"))
    assert set(p.generators) == {"x", "y"} and len(p.relations) == 2
    assert simplify(p).generators == ("x",)
    assert profile(p, battery) == SIZES


def test_product_movie_is_the_knot(corpus, battery):
    script = load_script(corpus / "movies/trefoil_product.movie.json")
    p = movie_presentation(script)
    assert profile(p, battery) == (9, 4, 5, 7, 12)
    assert final_live_labels(script) == list(p.generators)


def test_reidemeister_relabels_preserve_colorings(corpus, battery):
    p = movie_presentation(load_script(corpus / "movies/trefoil_rmoves.movie.json"))
    assert profile(p, battery) == (9, 4, 5, 7, 12)
    assert tuple(len(naive_colorings(p, op)) for op in battery_tables()[:2]) == (9, 4)


def test_boundary_events(corpus):
    script = load_script(corpus / "movies/trefoil_with_boundary.movie.json")
    p = movie_presentation(script)
    assert "f2" in p.generators
    assert not {"f2", "f4", "f6"} & set(final_live_labels(script))


def test_script_errors(corpus):
    with pytest.raises(ScriptError) as info:
        movie_presentation(load_script(corpus / "movies/bad_dead_label.movie.json"))
    assert info.value.event_index == 2 and info.value.label == "x"
    # death of a component that has crossings
    with pytest.raises(ScriptError):
        movie_presentation(MovieScript(parse_pd("X[1,5,2,4]; X[3,1,4,6]; X[5,3,6,2]"), (Death("2"),)))
    # label reuse
    with pytest.raises(ScriptError):
        movie_presentation(MovieScript(None, (Birth("x"), Birth("x"))))
    # closed movie with something left alive
    with pytest.raises(ScriptError):
        movie_presentation(MovieScript(None, (Birth("x"),), closed=True))
    # relabel definition may only use live labels
    with pytest.raises(ScriptError):
        movie_presentation(MovieScript(None, (Birth("x"), ReidemeisterRelabel((), (("y", gen("z")),)))))


def test_script_json_roundtrip(corpus):
    for name in ["sphere", "torus", "trefoil_rmoves", "trefoil_with_boundary"]:
        data = json.loads((corpus / f"movies/{name}.movie.json").read_text())
        script = script_from_json(data)
        again = script_from_json(script_to_json(script))
        assert movie_presentation(again).relations == movie_presentation(script).relations
    with pytest.raises(ParseError):
        script_from_json({"events": [{"type": "explode"}]})


def test_resolve_markers():
    plain = parse_marked_graph("X[1,5,2,4]; X[3,1,4,6]; X[5,3,6,2]")
    assert len(resolve_markers(plain).diagram.arcs) == 3
    # one circle through one marker: the two smoothings give one or two circles
    m0 = parse_marked_graph("M[p,p,q,q,0]")
    assert len(m0.lower.diagram.components) == 2 and len(m0.upper.diagram.components) == 1
    m1 = parse_marked_graph("M[p,p,q,q,1]")
    assert len(m1.lower.diagram.components) == 1 and len(m1.upper.diagram.components) == 2


def test_fused_loop_lower_resolution(corpus):
    mgd = parse_marked_graph((corpus / "ch/trefoil_fused_loop.ch").read_text())
    lower = mgd.lower.diagram
    assert len(lower.components) == 2 and len(lower.crossingless_components()) == 1
    # trefoil ∪ unknot: 9 * 3 colorings in R3
    assert len(naive_colorings(quandle_presentation(lower), battery_tables()[0])) == 27


@pytest.mark.parametrize("name,expected", [("sphere", SIZES), ("sphere_pinch", SIZES),
                                           ("torus", SIZES), ("trefoil_fused_loop", (9, 4, 5, 7, 12))])
def test_ch_fixtures_and_movie_route(corpus, battery, name, expected):
    mgd = parse_marked_graph((corpus / f"ch/{name}.ch").read_text())
    ch = ch_presentation(mgd)
    mv = movie_presentation(hyperbolic_movie(mgd))
    assert profile(ch, battery) == expected == profile(mv, battery)
    assert tuple(len(naive_colorings(ch, op)) for op in battery_tables()) == expected


def test_marked_graph_errors():
    with pytest.raises(StructuralError):
        parse_marked_graph("M[a,b,c,d,0]")
    with pytest.raises(ParseError):
        parse_marked_graph("M[a,a,b,b,2]")
    with pytest.raises(ParseError):
        parse_marked_graph("M[a,a,b,b]")
