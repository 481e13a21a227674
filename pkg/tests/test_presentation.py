import json
import random

import pytest

from oracles import eval_element, naive_colorings
from ribbonquandle.errors import CyclicSubstitutionError, DomainError, ParseError
from ribbonquandle.free import evaluate, gen, parse_element
from ribbonquandle.links import parse_pd, quandle_presentation
from ribbonquandle.presentation import (QuandlePresentation, coloring_profile, count_colorings,
                                        drop_tautologies, load_presentation, satisfies, simplify,
                                        substitute, substitute_element)
from ribbonquandle.quandle import dihedral_quandle

E = parse_element


def P(gens, rels=()):
    return QuandlePresentation(tuple(gens), tuple((E(a), E(b)) for a, b in rels))


TREFOIL = P("abc", [("c", "a ^ b"), ("a", "b ^ c"), ("b", "c ^ a")])


def test_validation():
    with pytest.raises(DomainError):
        P("ab", [("a", "c")])
    with pytest.raises(DomainError):
        P("aa")


def test_free_generator_counts(battery):
    for t in battery:
        assert count_colorings(P("x"), t).count == t.size
    assert count_colorings(P(""), dihedral_quandle(3)).count == 1


def test_trefoil_and_figure_eight(corpus):
    r3, r5 = dihedral_quandle(3), dihedral_quandle(5)
    assert count_colorings(TREFOIL, r3).count == 9
    f8 = quandle_presentation(parse_pd((corpus / "knots/figure8.pd").read_text()))
    assert count_colorings(f8, r5).count == 25 == len(naive_colorings(f8, r5.op))


@pytest.mark.parametrize("workers", [1, 2])
def test_colorings_match_naive_enumeration(battery, workers):
    rng = random.Random(11)
    gens = "pqrs"
    for _ in range(15):
        rels = []
        for _ in range(rng.randint(0, 3)):
            def el():
                w = " ".join(rng.choice(gens) + rng.choice(["", "'"]) for _ in range(rng.randint(0, 2)))
                b = rng.choice(gens)
                return f"{b} ^ {w}" if w else b
            rels.append((el(), el()))
        pres = P(gens, rels)
        for t in battery[:3]:
            rep = count_colorings(pres, t, keep=True, workers=workers)
            oracle = naive_colorings(pres, t.op)
            assert rep.colorings == oracle and rep.count == len(oracle)
            assert count_colorings(pres, t, propagate=False).count == len(oracle)


def test_keep_limit_and_truncation():
    rep = count_colorings(P("xy"), dihedral_quandle(3), keep=True, limit=4)
    assert rep.count == 9 and len(rep.colorings) == 4 and rep.truncated
    with pytest.raises(DomainError):
        count_colorings(P("x"), dihedral_quandle(3)).assignments()


def test_satisfies():
    r3 = dihedral_quandle(3)
    assert satisfies(TREFOIL, {"a": 0, "b": 1, "c": 2}, r3) is None
    assert satisfies(TREFOIL, {"a": 0, "b": 1, "c": 1}, r3) is not None


def test_simplify_examples(battery):
    assert simplify(P("xy", [("x", "y")])).generators == ("x",)
    s = simplify(P("xyz", [("z", "x ^ y")]))
    assert set(s.generators) == {"x", "y"} and not s.relations
    s = simplify(TREFOIL)
    assert len(s.generators) == 2
    assert coloring_profile(s, battery) == coloring_profile(TREFOIL, battery)


def test_substitute_examples():
    s = substitute(P("xy", [("y", "x")]), "y", gen("x"))
    assert s.generators == ("x",) and s.relations == ((gen("x"), gen("x")),)
    assert not drop_tautologies(s).relations
    assert substitute_element(E("a ^ y"), "y", E("x ^ z")) == E("a ^ z' x z")
    assert substitute_element(E("a ^ y'"), "y", E("x ^ z")) == E("a ^ z' x' z")
    assert substitute_element(E("y ^ a"), "y", E("x ^ z")) == E("x ^ z a")
    with pytest.raises(CyclicSubstitutionError):
        substitute(P("xy"), "y", E("x ^ y"))


def test_substitution_commutes_with_evaluation():
    q = dihedral_quandle(5)
    rng = random.Random(5)
    value = E("x ^ z w'")
    for text in ["a ^ y", "a ^ y'", "y ^ a y'", "a ^ y z y'", "y"]:
        x = E(text)
        sub = substitute_element(x, "y", value)
        for _ in range(50):
            assign = {g: rng.randrange(5) for g in "axzw"}
            assign["y"] = evaluate(value, assign, q)
            assert evaluate(sub, assign, q) == eval_element(q.op, x.base, x.word, assign)


def test_json_roundtrip(tmp_path, corpus):
    p = tmp_path / "p.json"
    p.write_text(json.dumps(TREFOIL.to_json()))
    back = load_presentation(p)
    assert back.generators == TREFOIL.generators and back.relations == TREFOIL.relations
    assert count_colorings(load_presentation(corpus / "presentations/trefoil.json"),
                           dihedral_quandle(3)).count == 9
    p.write_text("{not json")
    with pytest.raises(ParseError):
        load_presentation(p)
