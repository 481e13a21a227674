import json

import pytest

from oracles import CORPUS, battery_tables, naive_colorings
from ribbonquandle.concordance import (check_injectivity_consequence, check_surjectivity_consequence,
                                       concordance_from_json, concordance_movie,
                                       concordance_presentation, load_concordance,
                                       obstruct_ribbon_concordance, quandle_size_upper_bound)
from ribbonquandle.errors import QuandleError, StructuralError, WitnessMapError
from ribbonquandle.links import parse_pd, quandle_presentation
from ribbonquandle.presentation import coloring_profile, simplify
from ribbonquandle.quandle import dihedral_quandle
from ribbonquandle.surfaces import movie_presentation

VALID = sorted(p.name for p in (CORPUS / "concordance").glob("*.json"))
NEGATIVE = sorted(p.name for p in (CORPUS / "negative").glob("*.json"))


def load(name):
    return load_concordance(CORPUS / "concordance" / name)


@pytest.mark.parametrize("name", VALID)
def test_valid_fixtures_satisfy_both_consequences(name, battery):
    rc = load(name)
    for r in check_surjectivity_consequence(rc, battery):
        assert r.ok and r.col_c <= r.col_k1
    for r in check_injectivity_consequence(rc, battery):
        assert r.ok and r.image_size <= r.col_k0
        assert sum(r.fibers.values()) == r.image_size
        assert sum(k * v for k, v in r.fibers.items()) == r.col_c


@pytest.mark.parametrize("name", NEGATIVE)
def test_negative_fixtures_are_caught(name, battery):
    try:
        rc = load_concordance(CORPUS / "negative" / name)
        results = check_surjectivity_consequence(rc, battery)
    except (StructuralError, WitnessMapError):
        return
    assert any(not r.ok for r in results)


def test_trivial_concordances(battery):
    for name, knot in [("trivial_trefoil.json", "trefoil.pd"), ("trivial_figure8.json", "figure8.pd")]:
        rc = load(name)
        k = quandle_presentation(parse_pd((CORPUS / "knots" / knot).read_text()))
        assert coloring_profile(concordance_presentation(rc), battery) == coloring_profile(k, battery)
        for r in check_surjectivity_consequence(rc, battery):
            assert r.col_c == r.col_k1
        for r in check_injectivity_consequence(rc, battery):
            assert r.col_c == r.col_k0 == r.image_size and set(r.fibers) == {1}


def test_square_knot_fixture_against_brute_force():
    rc = load("square_unknot.json")
    r3 = battery_tables()[0]
    pres = concordance_presentation(rc)
    col_c = len(naive_colorings(simplify(pres), r3))
    k1 = simplify(quandle_presentation(rc.k1))
    col_k1 = len(naive_colorings(k1, r3))
    assert (col_c, col_k1) == (9, 27)
    [surj] = check_surjectivity_consequence(rc, [dihedral_quandle(3)])
    assert (surj.col_c, surj.col_k1) == (col_c, col_k1)
    [inj] = check_injectivity_consequence(rc, [dihedral_quandle(3)])
    assert inj.col_k0 == 3 and inj.image_size == 3 and inj.fibers == {3: 3}


def test_fixture_bases_are_trivial_links():
    """Each base still simplifies to a free quandle, so it is an unlink."""
    for name in ["square_unknot.json", "ribbon9_unknot.json", "square_square_unknot.json"]:
        rc = load(name)
        s = simplify(quandle_presentation(rc.base))
        assert not s.relations and len(s.generators) == len(rc.base.components) == len(rc.bands) + 1


def test_k2_fixture(battery):
    rc = load("square_square_unknot.json")
    assert len(rc.bands) == 2 and len(rc.births) == 2


def test_movie_route_agrees(battery):
    rc = load("trivial_trefoil.json")
    assert coloring_profile(movie_presentation(concordance_movie(rc)), battery) == \
        coloring_profile(concordance_presentation(rc), battery)


def test_corrupted_map_raises():
    data = json.loads((CORPUS / "concordance/square_unknot.json").read_text())
    data["k1_map"]["4"] = "ghost"
    with pytest.raises(QuandleError):
        concordance_from_json(data)
    del data["k1_map"]["4"]
    with pytest.raises(StructuralError):
        concordance_from_json(data)


def test_obstruction_screen(battery):
    knots = CORPUS / "knots"
    tre = parse_pd((knots / "trefoil.pd").read_text())
    unknot = parse_pd((knots / "unknot.pd").read_text())
    square = parse_pd((knots / "square.pd").read_text())
    assert obstruct_ribbon_concordance(tre, tre, battery).status == "no obstruction found"
    v = obstruct_ribbon_concordance(unknot, tre, [dihedral_quandle(3)])
    assert v.obstructed and v.certificate["image_size"] == 3
    assert obstruct_ribbon_concordance(square, unknot, battery).status == "no obstruction found"
    assert obstruct_ribbon_concordance(unknot, tre, [dihedral_quandle(3)], budget=2).status == "inconclusive"
    assert quandle_size_upper_bound(quandle_presentation(unknot)) == 1
    assert quandle_size_upper_bound(quandle_presentation(tre)) is None
