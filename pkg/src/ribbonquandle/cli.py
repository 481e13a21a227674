"""Command-line front end: ``ribbonq <subcommand> ...``.

Every subcommand prints a report on stdout, as TSV (default) or canonical
JSON.  Diagnostics go to stderr.  Exit status: 0 success, 1 domain error,
2 failed check, 3 parse error.  Reports never contain timings, so output is
byte-identical for any worker count.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .concordance import (check_injectivity_consequence, check_surjectivity_consequence,
                          load_concordance, obstruct_ribbon_concordance)
from .errors import CheckViolation, MalformedTableError, ParseError, QuandleError
from .links import (braid_closure_diagram, braid_closure_presentation, parse_braid, parse_pd,
                    quandle_presentation, torus_knot_braid)
from .presentation import QuandlePresentation, count_colorings, load_presentation, simplify
from .quandle import verify_axioms
from .surfaces import (ch_presentation, final_live_labels, hyperbolic_movie, load_script,
                       movie_presentation, parse_marked_graph)
from .targets import default_battery, parse_target

WORKERS_ENV = "RIBBONQ_WORKERS"
KEEP_CAP = 10**5


class _Report:
    """A JSON document plus its TSV rendering."""

    def __init__(self, doc: dict, rows: list[list]):
        self.doc = doc
        self.rows = rows

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return json.dumps(self.doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
        return "".join("\t".join(str(c) for c in row) + "\n" for row in self.rows)


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise FileNotFoundError(f"cannot read {path}: {exc.strerror}") from None


def _targets(args) -> list:
    if not args.target:
        return default_battery()
    out = []
    for spec in args.target:
        out.extend(parse_target(spec))
    return out


def _input_presentation(args) -> tuple[str, QuandlePresentation]:
    given = [(k, getattr(args, k)) for k in ("pd", "pres", "braid") if getattr(args, k, None)]
    if len(given) != 1:
        raise QuandleError("give exactly one of --pd, --pres, --braid")
    kind, path = given[0]
    if kind == "pd":
        return path, quandle_presentation(parse_pd(_read(path)))
    if kind == "braid":
        return path, braid_closure_presentation(parse_braid(_read(path)))
    return path, load_presentation(path)


def _count_rows(pres: QuandlePresentation, targets, args) -> tuple[list[dict], list[list]]:
    results, rows = [], [["target", "size", "count"]]
    for t in targets:
        rep = count_colorings(pres, t, keep=args.keep_colorings, workers=args.workers,
                              limit=KEEP_CAP if args.keep_colorings else None)
        entry = {"target": t.name, "size": t.size, "count": rep.count}
        rows.append([t.name, t.size, rep.count])
        if args.keep_colorings:
            entry["colorings"] = [list(c) for c in rep.colorings]
            entry["truncated"] = rep.truncated
            for c in rep.colorings:
                rows.append(["coloring", t.name, " ".join(map(str, c))])
            if rep.truncated:
                rows.append(["truncated", t.name, len(rep.colorings)])
        results.append(entry)
    return results, rows


def _pres_rows(pres: QuandlePresentation) -> list[list]:
    rows = [["generators", *pres.generators]]
    rows += [["relation", str(a), str(b)] for a, b in pres.relations]
    return rows


# --------------------------------------------------------------------------
# subcommands

def cmd_colorings(args):
    source, pres = _input_presentation(args)
    results, rows = _count_rows(pres, _targets(args), args)
    doc = {"input": source, "generators": list(pres.generators), "results": results}
    return _Report(doc, rows), 0


def cmd_simplify(args):
    source, pres = _input_presentation(args)
    simple = simplify(pres)
    doc = {"input": source, "before": {"generators": len(pres.generators),
                                        "relations": len(pres.relations)},
           "presentation": simple.to_json()}
    return _Report(doc, _pres_rows(simple)), 0


def cmd_braid(args):
    braid = parse_braid(_read(args.braid))
    via_braid = braid_closure_presentation(braid)
    via_pd = quandle_presentation(braid_closure_diagram(braid))
    targets = _targets(args)
    results, rows = [], [["target", "size", "braid_count", "pd_count"]]
    status = 0
    for t in targets:
        a = count_colorings(via_braid, t, workers=args.workers).count
        b = count_colorings(via_pd, t, workers=args.workers).count
        results.append({"target": t.name, "size": t.size, "braid_count": a, "pd_count": b})
        rows.append([t.name, t.size, a, b])
        if a != b:
            status = 2
            print(f"error: {t.name}: braid route gives {a}, diagram route {b}", file=sys.stderr)
    doc = {"input": args.braid, "strands": braid.strands,
           "letters": [list(l) for l in braid.letters], "results": results}
    return _Report(doc, rows), status


def cmd_torus(args):
    braid = torus_knot_braid(args.p, args.q)
    pres = braid_closure_presentation(braid)
    simple = simplify(pres)
    results, rows = _count_rows(pres, _targets(args), args)
    rows.insert(0, ["simplified_generators", len(simple.generators)])
    doc = {"p": args.p, "q": args.q, "simplified_generators": len(simple.generators),
           "results": results}
    return _Report(doc, rows), 0


def cmd_movie(args):
    script = load_script(args.input)
    pres = movie_presentation(script)
    live = final_live_labels(script)
    results, rows = _count_rows(pres, _targets(args), args)
    rows.insert(0, ["live", *live])
    rows.insert(0, ["generators", len(pres.generators), "relations", len(pres.relations)])
    doc = {"input": args.input, "generators": list(pres.generators),
           "relations": len(pres.relations), "live": live, "results": results}
    return _Report(doc, rows), 0


def cmd_ch(args):
    mgd = parse_marked_graph(_read(args.input))
    ch = ch_presentation(mgd)
    movie = movie_presentation(hyperbolic_movie(mgd))
    results, rows = [], [["target", "size", "ch_count", "movie_count"]]
    status = 0
    for t in _targets(args):
        a = count_colorings(ch, t, workers=args.workers).count
        b = count_colorings(movie, t, workers=args.workers).count
        results.append({"target": t.name, "size": t.size, "ch_count": a, "movie_count": b})
        rows.append([t.name, t.size, a, b])
        if a != b:
            status = 2
            print(f"error: {t.name}: marked-graph route gives {a}, movie route {b}", file=sys.stderr)
    return _Report({"input": args.input, "results": results}, rows), status


def cmd_concordance_check(args):
    rc = load_concordance(args.input)
    targets = _targets(args)
    surj = check_surjectivity_consequence(rc, targets, workers=args.workers)
    inj = check_injectivity_consequence(rc, targets, workers=args.workers)
    rows = [["target", "col_C", "col_K1", "col_K0", "restriction_image", "violations"]]
    results = []
    violations = []
    for s, i in zip(surj, inj):
        v = s.violations + i.violations
        violations += v
        rows.append([s.target, s.col_c, s.col_k1, i.col_k0, i.image_size, len(v)])
        results.append({"target": s.target, "col_C": s.col_c, "col_K1": s.col_k1,
                        "col_K0": i.col_k0, "restriction_image": i.image_size,
                        "fiber_sizes": {str(k): n for k, n in i.fibers.items()},
                        "violations": v})
    for v in violations:
        print(f"violation: {v}", file=sys.stderr)
    doc = {"input": args.input, "bands": len(rc.bands), "results": results,
           "violations": len(violations)}
    return _Report(doc, rows), 2 if violations else 0


def cmd_obstruct(args):
    k1 = parse_pd(_read(args.k1))
    k0 = parse_pd(_read(args.k0))
    verdict = obstruct_ribbon_concordance(k1, k0, _targets(args), budget=args.budget,
                                          workers=args.workers)
    doc = {"k1": args.k1, "k0": args.k0, "status": verdict.status, "target": verdict.target,
           "certificate": verdict.certificate, "notes": verdict.notes}
    rows = [["status", verdict.status]]
    if verdict.target is not None:
        rows.append(["target", verdict.target])
    for key, val in sorted((verdict.certificate or {}).items()):
        if isinstance(val, dict):
            val = " ".join(f"{k}={v}" for k, v in val.items())
        rows.append([key, val])
    rows += [["note", n] for n in verdict.notes]
    return _Report(doc, rows), 0


def cmd_verify_quandle(args):
    tables = []
    for path in args.tables:
        try:
            data = json.loads(_read(path))
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}: invalid JSON: {exc.msg}", exc.lineno, exc.colno) from None
        if not isinstance(data, dict) or "op" not in data:
            raise MalformedTableError(f"{path}: quandle table needs an 'op' field")
        tables.append((path, data["op"]))
    for spec in args.target:
        tables.extend((t.name, [list(r) for r in t.op]) for t in parse_target(spec))
    if not tables:
        raise QuandleError("nothing to verify; give table files or --target")
    results, rows = [], [["table", "size", "valid", "violations"]]
    status = 0
    for name, op in tables:
        rep = verify_axioms(op)
        shown = [{"axiom": v.axiom, "witness": list(v.witness)} for v in rep.violations]
        results.append({"table": name, "size": len(op), "valid": rep.valid,
                        "violations": shown, "truncated": rep.truncated})
        rows.append([name, len(op), "yes" if rep.valid else "no",
                     "; ".join(str(v) for v in rep.violations)])
        if not rep.valid:
            status = 2
            print(f"violation: {name}: {rep.violations[0]}", file=sys.stderr)
    return _Report({"results": results}, rows), status


# --------------------------------------------------------------------------
# argument parsing

def _default_workers() -> int:
    raw = os.environ.get(WORKERS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--target", action="append", default=[],
                        help="dihedral:N, conj:Zn|Sn|Dn|group.json, battery, or a table file; repeatable")
    common.add_argument("--format", choices=("tsv", "json"), default="tsv")
    common.add_argument("--workers", type=int, default=_default_workers(),
                        help=f"parallel workers (default from ${WORKERS_ENV}, else 1)")
    common.add_argument("--keep-colorings", action="store_true",
                        help=f"list colorings, at most {KEEP_CAP} per target")
    common.add_argument("--budget", type=int, default=10**6,
                        help="coloring budget for bounded searches")

    parser = argparse.ArgumentParser(prog="ribbonq", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(func=func)
        return p

    for name, func, help_ in (("colorings", cmd_colorings, "count colorings of a link or presentation"),
                              ("simplify", cmd_simplify, "simplify a quandle presentation")):
        p = add(name, func, help_)
        p.add_argument("--pd", help="PD code file")
        p.add_argument("--pres", help="presentation JSON file")
        p.add_argument("--braid", help="braid word file")

    p = add("braid", cmd_braid, "compare braid and diagram routes for a braid closure")
    p.add_argument("braid", help="braid word file, e.g. '3: 1 -2 1'")
    p = add("torus", cmd_torus, "torus knot T(p,q) as a braid closure")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p = add("movie", cmd_movie, "quandle of a surface given by a movie script")
    p.add_argument("input")
    p = add("ch", cmd_ch, "quandle of a surface given by a marked graph diagram")
    p.add_argument("input")
    p = add("concordance-check", cmd_concordance_check, "check coloring consequences of a ribbon concordance")
    p.add_argument("input")
    p = add("obstruct", cmd_obstruct, "screen for a ribbon concordance from K1 to K0")
    p.add_argument("--k1", required=True, help="PD code file of K1")
    p.add_argument("--k0", required=True, help="PD code file of K0")
    p = add("verify-quandle", cmd_verify_quandle, "check the quandle axioms on tables")
    p.add_argument("tables", nargs="*")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.workers < 1:
        parser.error("--workers must be at least 1")
    try:
        report, status = args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 3
    except CheckViolation as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return 2
    except (QuandleError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(report.render(args.format))
    return status


if __name__ == "__main__":
    sys.exit(main())
