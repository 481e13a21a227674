"""Regenerate the fixture corpus under ``corpus/``.

Ribbon fixtures are found by fissioning a knot diagram along a short band
across one face and keeping the band only when the result simplifies to a
free quandle on as many generators as components, i.e. the result is a
trivial link.  Run from the repository root: ``python tools/make_corpus.py``.
"""
from __future__ import annotations

import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from bandtools import band_candidates, connected_sum, fission  # noqa: E402
from ribbonquandle.links import (BraidWord, LinkDiagram, PDCode, braid_closure_pd, parse_pd_code,  # noqa: E402
                                 quandle_presentation, relabel_pd)
from ribbonquandle.presentation import simplify  # noqa: E402

ROOT = Path(__file__).resolve().parent.parent / "corpus"


def write(rel: str, content):
    path = ROOT / rel
    path.parent.mkdir(parents=True, exist_ok=True)
    if isinstance(content, str):
        path.write_text(content.rstrip("\n") + "\n")
    else:
        path.write_text(json.dumps(content, indent=2, sort_keys=True) + "\n")


def trivial_link(code: PDCode, m: int) -> bool:
    d = LinkDiagram.from_pd_code(code)
    if len(d.components) != m:
        return False
    s = simplify(quandle_presentation(d))
    return len(s.generators) == m and not s.relations


def ribbon_band(code: PDCode):
    for e, f in band_candidates(code):
        if trivial_link(fission(code, e, f), 2):
            return e, f
    raise RuntimeError("no short ribbon band found")


def concordance_json(k1: PDCode, bands):
    """Fission ``k1`` along ``bands``; the result is the base still of the concordance."""
    base = k1
    for e, f in bands:
        base = fission(base, e, f)
    assert trivial_link(base, len(bands) + 1)
    base_d = LinkDiagram.from_pd_code(base)
    k1_d = LinkDiagram.from_pd_code(k1)
    k0_comp = base_d.components[0]
    return {
        "base": str(base),
        "bands": [[base_d.arc_of(e), base_d.arc_of(f)] for e, f in bands],
        "k1": str(k1),
        "k1_map": {arc: base_d.arc_of(arc) for arc in k1_d.arcs},
        "k0": "O[u]",
        "k0_map": {"u": k0_comp[0]},
    }


TREFOIL = "X[1,5,2,4]; X[3,1,4,6]; X[5,3,6,2]"
FIGURE8 = "X[4,2,5,1]; X[8,6,1,5]; X[6,3,7,4]; X[2,7,3,8]"
T52 = "X[1,6,2,7]; X[3,8,4,9]; X[5,10,6,1]; X[7,2,8,3]; X[9,4,10,5]"


def main():
    # knots and links
    write("knots/unknot.pd", "O[1]")
    write("knots/trefoil.pd", TREFOIL)
    write("knots/figure8.pd", FIGURE8)
    write("knots/t52.pd", T52)
    write("knots/hopf.pd", "X[1,3,2,4]; X[3,1,4,2]")
    write("knots/unlink2.pd", "O[a]; O[b]")
    # trefoil with a positive R1 kink inserted on edge 6
    write("knots/trefoil_r1.pd", "X[1,5,2,4]; X[3,1,4,k2]; X[5,3,6,2]; X[6,k2,k1,k1]")
    # two-component unlink after an R2 move
    write("knots/unlink2_r2.pd", "X[b1,a2,b2,a1]; X[b2,a2,b1,a1]")
    # R3 pair: closures of s1 s2 s1 s2 and s2 s1 s2 s2
    write("knots/r3_left.pd", str(braid_closure_pd(BraidWord.from_ints(3, [1, 2, 1, 2]))))
    write("knots/r3_right.pd", str(braid_closure_pd(BraidWord.from_ints(3, [2, 1, 2, 2]))))
    write("knots/broken.pd", "X[1,5,2,4]; X[3,1,4,6; X[5,3,6,2]")
    write("knots/inconsistent.pd", "X[1,5,2,4]; X[3,1,4,6]; X[5,3,6,9]")

    write("braids/trefoil.braid", "2: 1 1 1")
    write("braids/t52.braid", "2: 1 1 1 1 1")
    write("braids/t53.braid", "3: 1 2 1 2 1 2 1 2 1 2")
    write("braids/figure8.braid", "3: 1 -2 1 -2")
    write("braids/unlink3.braid", "3:")

    # quandle and group tables
    write("quandles/dihedral3.json", {"size": 3, "op": [[0, 2, 1], [2, 1, 0], [1, 0, 2]]})
    write("quandles/not_a_quandle.json", {"size": 2, "op": [[0, 1], [0, 1]]})
    write("quandles/out_of_range.json", {"size": 2, "op": [[0, 5], [1, 1]]})
    write("groups/z3.json", {"mul": [[0, 1, 2], [1, 2, 0], [2, 0, 1]]})
    write("groups/not_a_group.json", {"mul": [[0, 0], [0, 1]]})

    # presentations
    write("presentations/trefoil.json", {
        "generators": ["a", "b", "c"],
        "relations": [["c", "a ^ b"], ["a", "b ^ c"], ["b", "c ^ a"]]})
    write("presentations/free2.json", {"generators": ["x", "y"], "relations": []})

    # movies
    write("movies/sphere.movie.json", {
        "initial": "", "closed": True,
        "events": [{"type": "birth", "label": "x"}, {"type": "death", "label": "x"}]})
    write("movies/torus.movie.json", {
        "initial": "", "closed": True,
        "events": [{"type": "birth", "label": "x"}, {"type": "birth", "label": "y"},
                   {"type": "saddle", "a": "x", "b": "y"}, {"type": "saddle", "a": "x", "b": "y"},
                   {"type": "death", "label": "x"}]})
    write("movies/trefoil_product.movie.json", {"initial": TREFOIL, "events": []})
    write("movies/trefoil_rmoves.movie.json", {
        "initial": TREFOIL,
        "events": [
            {"type": "reidemeister", "retired": [], "introduced": [["k", "6 ^ 6"]]},
            {"type": "reidemeister", "retired": ["k"], "introduced": []},
            {"type": "reidemeister", "retired": [],
             "introduced": [["m", "2 ^ 4"], ["n", "2 ^ 4 4'"]]},
            {"type": "reidemeister", "retired": ["m", "n"], "introduced": []}]})
    write("movies/trefoil_with_boundary.movie.json", {
        "initial": TREFOIL,
        "events": [{"type": "birth", "label": "x"},
                   {"type": "saddle", "a": "x", "b": "2"},
                   {"type": "boundary_appear", "pd": "X[f1,f5,f2,f4]; X[f3,f1,f4,f6]; X[f5,f3,f6,f2]"},
                   {"type": "boundary_cap", "labels": ["f2"]}]})
    write("movies/bad_dead_label.movie.json", {
        "initial": "", "closed": True,
        "events": [{"type": "birth", "label": "x"}, {"type": "death", "label": "x"},
                   {"type": "saddle", "a": "x", "b": "x"}]})

    # marked graph diagrams
    write("ch/sphere.ch", "O[a]")
    write("ch/sphere_pinch.ch", "M[p,p,q,q,0]")
    write("ch/torus.ch", "M[e1,e4,e3,e2,0]; M[e1,e2,e3,e4,1]")
    write("ch/trefoil_fused_loop.ch", "X[1,5,2,4]; X[3,1,4,6]; X[5,3,t,2]; M[t,6,u,u,0]")

    # ribbon concordances
    tre = "X[1,5,2,4]; X[3,1,4,6]; X[5,3,6,2]"
    write("concordance/trivial_trefoil.json", {
        "base": tre, "bands": [], "k1": tre, "k1_map": {a: a for a in ("2", "4", "6")}})
    f8 = LinkDiagram.from_pd_code(parse_pd_code(FIGURE8))
    write("concordance/trivial_figure8.json", {
        "base": FIGURE8, "bands": [], "k1": FIGURE8, "k1_map": {a: a for a in f8.arcs}})

    square = braid_closure_pd(BraidWord.from_ints(3, [1, 1, 1, 2, -1, -1, -1, -2]))
    band = ribbon_band(square)
    write("knots/square.pd", str(square))
    sq = concordance_json(square, [band])
    write("concordance/square_unknot.json", sq)

    stevedore = braid_closure_pd(BraidWord.from_ints(3, [1, 1, 1, 2, -1, -1, -1, 2]))
    sband = ribbon_band(stevedore)
    write("knots/ribbon9.pd", str(stevedore))
    write("concordance/ribbon9_unknot.json", concordance_json(stevedore, [sband]))

    # k = 2: connected sum of two copies of the square knot
    a = relabel_pd(square, "a")
    b = relabel_pd(square, "b")
    used = {band[0], band[1]}
    joint = next(e for e in square.edges() if e not in used)
    double = connected_sum(a, b, "a" + joint, "b" + joint)
    bands2 = [("a" + band[0], "a" + band[1]), ("b" + band[0], "b" + band[1])]
    write("knots/square_square.pd", str(double))
    write("concordance/square_square_unknot.json", concordance_json(double, bands2))

    # negative corpus: corrupted band and corrupted witness map
    # a band joining two arcs of K0 leaves the birth component unattached
    bad = json.loads(json.dumps(sq))
    k0_arcs = LinkDiagram.from_pd_code(parse_pd_code(sq["base"])).components[0]
    bad["bands"] = [[k0_arcs[0], k0_arcs[1]]]
    write("negative/square_bad_band.json", bad)

    bad2 = json.loads(json.dumps(sq))
    keys = sorted(bad2["k1_map"])
    bad2["k1_map"][keys[0]], bad2["k1_map"][keys[1]] = bad2["k1_map"][keys[1]], bad2["k1_map"][keys[0]]
    write("negative/square_bad_map.json", bad2)

    bad3 = json.loads(json.dumps(sq))
    bad3["bands"] = []
    write("negative/square_missing_band.json", bad3)

    bad4 = {"base": tre + "; O[v]", "bands": [], "k1": tre, "k1_map": {a: a for a in ("2", "4", "6")}}
    write("negative/unbanded_birth.json", bad4)

    # K1 too small: the trefoil cannot be a quotient of the unknot
    write("negative/trefoil_into_unknot.json", {
        "base": tre + "; O[v]", "bands": [["v", "2"]], "k1": "O[1]", "k1_map": {"1": "2"}})


if __name__ == "__main__":
    main()
