"""Acceptance checks, one per criterion.

Each check prints ``PASS`` or ``FAIL`` with its measurement.  Run under
pytest, or directly with ``python3 tests/test_acceptance.py``.
"""
from __future__ import annotations

import contextlib
import io
import itertools
import json
import os
import random
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from cli_cases import CASES  # noqa: E402
from oracles import CORPUS, eval_element, naive_colorings  # noqa: E402
from ribbonquandle.cli import main as cli_main  # noqa: E402
from ribbonquandle.concordance import (check_injectivity_consequence,  # noqa: E402
                                       check_surjectivity_consequence, load_concordance)
from ribbonquandle.errors import StructuralError, WitnessMapError  # noqa: E402
from ribbonquandle.free import evaluate, normalize  # noqa: E402
from ribbonquandle.groups import builtin_group  # noqa: E402
from ribbonquandle.links import (BraidWord, braid_closure_presentation, parse_pd,  # noqa: E402
                                 quandle_presentation, torus_knot_braid)
from ribbonquandle.presentation import coloring_profile, count_colorings, simplify  # noqa: E402
from ribbonquandle.quandle import conjugation_quandle, dihedral_quandle, verify_axioms  # noqa: E402
from ribbonquandle.surfaces import (ch_presentation, hyperbolic_movie, load_script,  # noqa: E402
                                    movie_presentation, parse_marked_graph)
from ribbonquandle.targets import default_battery  # noqa: E402

RESULTS: list[str] = []


def report(number: int, ok: bool, detail: str):
    line = f"{'PASS' if ok else 'FAIL'}  criterion {number}: {detail}"
    RESULTS.append(line)
    print(line)
    assert ok, line


def _knot(name):
    return quandle_presentation(parse_pd((CORPUS / "knots" / name).read_text()))


def test_criterion_1_axioms():
    start = time.perf_counter()
    tables = [dihedral_quandle(n).op for n in range(1, 51)]
    tables += [conjugation_quandle(builtin_group(g)).op for g in ("S3", "Z4", "D4")]
    valid = all(verify_axioms(t).valid for t in tables)
    elapsed = time.perf_counter() - start
    report(1, valid and elapsed < 1.0,
           f"{len(tables)} tables valid={valid} in {elapsed:.3f}s (limit 1s)")


def test_criterion_2_free_quandle_laws():
    rng = random.Random(2024)
    gens = ["a", "b", "c", "d"]

    def rand_word(k):
        return [(rng.choice(gens), rng.choice((1, -1))) for _ in range(rng.randint(0, k))]

    def rand_el():
        return normalize(rng.choice(gens), rand_word(6))

    start = time.perf_counter()
    failures = {"idempotence": 0, "right-invertibility": 0, "self-distributivity": 0,
                "representative independence": 0}
    for _ in range(1000):
        x = rand_el()
        failures["idempotence"] += (x >> x) != x
    for _ in range(1000):
        x, y = rand_el(), rand_el()
        failures["right-invertibility"] += (x >> y) << y != x or (x << y) >> y != x
    for _ in range(1000):
        x, y, z = rand_el(), rand_el(), rand_el()
        failures["self-distributivity"] += (x >> y) >> z != (x >> z) >> (y >> z)
    for _ in range(1000):
        base, w, k = rng.choice(gens), rand_word(6), rng.randint(-4, 4)
        power = [(base, 1 if k > 0 else -1)] * abs(k)
        x, y, z = normalize(base, power + w), normalize(base, w), rand_el()
        failures["representative independence"] += x != y or (z >> x) != (z >> y)
    elapsed = time.perf_counter() - start
    bad = sum(failures.values())
    report(2, bad == 0 and elapsed < 5.0,
           f"4 x 1000 random checks, {bad} failures {failures if bad else ''}in {elapsed:.3f}s (limit 5s)")


def test_criterion_3_closed_form():
    g = builtin_group("S3")
    q = conjugation_quandle(g)
    words = [()]
    for n in range(1, 4):
        words += list(itertools.product(itertools.product("ab", (1, -1)), repeat=n))
    checked = mismatches = 0
    for fa, fb in itertools.product(range(6), repeat=2):
        f = {"a": fa, "b": fb}
        for base in "ab":
            for w in words:
                # ĝ(w̄ base w) as a product in the group
                wprod = g.identity
                for s, e in w:
                    wprod = g.mul[wprod][f[s] if e == 1 else g.inv[f[s]]]
                closed = g.mul[g.mul[g.inv[wprod]][f[base]]][wprod]
                checked += 1
                mismatches += evaluate(normalize(base, w), f, q) != closed
    report(3, mismatches == 0,
           f"{checked} (element, assignment) pairs, {mismatches} mismatches against ĝ(w̄aw)")


def test_criterion_4_coloring_oracles():
    start = time.perf_counter()
    notes, ok = [], True
    for name, target, want in [("trefoil.pd", dihedral_quandle(3), 9),
                               ("figure8.pd", dihedral_quandle(5), 25)]:
        pres = _knot(name)
        got = count_colorings(pres, target).count
        oracle = len(naive_colorings(pres, target.op))
        ok &= got == oracle == want
        notes.append(f"{name}:{got}/{oracle}")
    unknot = _knot("unknot.pd")
    for t in default_battery():
        got = count_colorings(unknot, t).count
        ok &= got == len(naive_colorings(unknot, t.op)) == t.size
    notes.append("unknot=|T| on battery" if ok else "unknot mismatch")
    elapsed = time.perf_counter() - start
    report(4, ok and elapsed < 10.0, f"{', '.join(notes)} in {elapsed:.3f}s (limit 10s)")


def test_criterion_5_route_equivalence():
    battery = default_battery()
    pairs = [(braid_closure_presentation(BraidWord.from_ints(2, [1, 1, 1])), _knot("trefoil.pd")),
             (braid_closure_presentation(torus_knot_braid(5, 2)), _knot("t52.pd"))]
    profiles = [(coloring_profile(a, battery), coloring_profile(b, battery)) for a, b in pairs]
    ok = all(a == b for a, b in profiles)
    report(5, ok, f"braid vs PD profiles {profiles}")


def test_criterion_6_torus_simplification():
    sizes = {}
    for p, q in [(3, 2), (5, 2), (7, 2), (5, 3), (7, 3)]:
        sizes[(p, q)] = len(simplify(braid_closure_presentation(torus_knot_braid(p, q))).generators)
    ok = all(n <= q for (p, q), n in sizes.items())
    report(6, ok, "generators after simplify " + ", ".join(f"T{k}={v}" for k, v in sizes.items()))


def test_criterion_7_surfaces():
    battery = default_battery()
    sizes = tuple(t.size for t in battery)
    ok = True
    notes = []
    for name in ["sphere", "torus"]:
        prof = coloring_profile(movie_presentation(load_script(CORPUS / f"movies/{name}.movie.json")), battery)
        ok &= prof == sizes
        notes.append(f"movie {name}={prof}")
    for path in sorted((CORPUS / "ch").glob("*.ch")):
        mgd = parse_marked_graph(path.read_text())
        ch = coloring_profile(ch_presentation(mgd), battery)
        mv = coloring_profile(movie_presentation(hyperbolic_movie(mgd)), battery)
        ok &= ch == mv
        if path.stem in ("sphere", "sphere_pinch", "torus"):
            ok &= ch == sizes
        notes.append(f"ch {path.stem}: ch{'==' if ch == mv else '!='}movie")
    report(7, ok, "; ".join(notes))


def test_criterion_8_concordance():
    battery = default_battery()
    violations = 0
    valid = sorted((CORPUS / "concordance").glob("*.json"))
    for path in valid:
        rc = load_concordance(path)
        for r in check_surjectivity_consequence(rc, battery):
            violations += len(r.violations) + (r.col_c > r.col_k1)
        for r in check_injectivity_consequence(rc, battery):
            violations += len(r.violations)
    negative = sorted((CORPUS / "negative").glob("*.json"))
    caught = 0
    for path in negative:
        try:
            rc = load_concordance(path)
            if any(not r.ok for r in check_surjectivity_consequence(rc, battery)) or \
                    any(not r.ok for r in check_injectivity_consequence(rc, battery)):
                caught += 1
        except (StructuralError, WitnessMapError):
            caught += 1
    has_k2 = any(len(load_concordance(p).bands) == 2 for p in valid)
    ok = violations == 0 and caught == len(negative) and has_k2
    report(8, ok, f"{len(valid)} valid fixtures with {violations} violations (k=2 present: {has_k2}); "
                  f"{caught}/{len(negative)} negative fixtures caught")


def _cli(argv):
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        status = cli_main(argv)
    return status, out.getvalue(), err.getvalue()


def test_criterion_9_cli_determinism():
    golden = Path(__file__).parent / "golden"
    exit_codes = json.loads((golden / "exit_codes.json").read_text())
    here = os.getcwd()
    os.chdir(CORPUS)
    mismatches = []
    try:
        for name, argv in sorted(CASES.items()):
            want = ((golden / f"{name}.out").read_text(), exit_codes[name])
            for workers in (1, 2, 8):
                status, out, _ = _cli(list(argv) + ["--workers", str(workers)])
                if (out, status) != want:
                    mismatches.append(f"{name}@{workers}")
    finally:
        os.chdir(here)
    report(9, not mismatches,
           f"{len(CASES)} golden cases x workers (1, 2, 8), mismatches: {mismatches or 'none'}")


if __name__ == "__main__":
    failed = 0
    for fn in [v for k, v in sorted(globals().items()) if k.startswith("test_criterion_")]:
        try:
            fn()
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)
