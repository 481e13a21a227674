"""Ribbon concordances as banded diagrams and the coloring consequences of
``Q(K0) -> Q(C)`` injective, ``Q(K1) -> Q(C)`` surjective.

Concordance JSON::

    {"base": "<PD of K0 together with the birth components>",
     "births": ["v"],                 # optional, one label per birth component
     "bands": [["a", "v"]],
     "k1": "<PD of K1>",
     "k1_map": {"<k1 arc or edge>": "<element over base arcs>", ...},
     "k0": "<PD of K0>",              # optional, with "k0_map"
     "k0_map": {...}}

``base`` is the still just before the bands are attached.  Birth components
may be drawn entangled with ``K0`` (that is where the knotting of ``C`` comes
from).  Without ``births`` every component except the one containing the
first listed edge is a birth.  Without ``k0`` the diagram of ``K0`` is read
off ``base`` by deleting the birth components, which requires that no birth
component passes over ``K0``.
"""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Sequence

from .errors import ParseError, StructuralError, WitnessMapError
from .free import FreeQuandleElement, evaluate, gen
from .links import LinkDiagram, PDCode, _UnionFind, parse_pd, parse_pd_code, quandle_presentation
from .presentation import QuandlePresentation, count_colorings, satisfies, simplify
from .quandle import FiniteQuandle
from .surfaces import Birth, MovieScript, Saddle


def _resolve_map(diagram: LinkDiagram, raw: Mapping, base_arcs: set, what: str):
    out = {}
    for key, value in raw.items():
        arc = diagram.arc_of(key)
        if arc in out:
            raise StructuralError(f"{what} assigns arc {arc} twice")
        el = value if isinstance(value, FreeQuandleElement) else FreeQuandleElement.from_json(value)
        unknown = el.symbols() - base_arcs
        if unknown:
            raise StructuralError(f"{what}[{key}] = {el} uses labels {sorted(unknown)} not in the base")
        out[arc] = el
    missing = [a for a in diagram.arcs if a not in out]
    if missing:
        raise StructuralError(f"{what} does not cover arcs {missing}")
    return out


def _canonical_element(base: LinkDiagram, el: FreeQuandleElement) -> FreeQuandleElement:
    """Rewrite edge-label aliases in ``el`` into base arc names."""
    return FreeQuandleElement(base.arc_of(el.base), tuple((base.arc_of(g), e) for g, e in el.word))


@dataclass(frozen=True, eq=False)
class RibbonConcordanceDiagram:
    base: LinkDiagram
    bands: tuple[tuple[str, str], ...]
    k1: LinkDiagram
    k1_map: dict
    births: tuple[int, ...] = ()            # component indices of base
    k0: LinkDiagram | None = None
    k0_map: dict = field(default_factory=dict)

    @classmethod
    def build(cls, base: LinkDiagram, bands: Sequence[Sequence[str]], k1: LinkDiagram,
              k1_map: Mapping, births: Sequence[str] | None = None,
              k0: LinkDiagram | None = None, k0_map: Mapping | None = None):
        ncomp = len(base.components)
        if births is None:
            birth_idx = tuple(range(1, ncomp))
        else:
            birth_idx = tuple(base.component_of(b) for b in births)
            if len(set(birth_idx)) != len(birth_idx):
                raise StructuralError("two birth labels lie on the same component")
            if len(birth_idx) >= ncomp:
                raise StructuralError("every component of the base is a birth; K0 is missing")
        bands = tuple((base.arc_of(a), base.arc_of(b)) for a, b in bands)
        if len(bands) != len(birth_idx):
            raise StructuralError(
                f"{len(birth_idx)} birth components but {len(bands)} bands; "
                "a ribbon concordance has as many 0-handles as 1-handles")

        uf = _UnionFind([str(i) for i in range(ncomp)])
        for a, b in bands:
            uf.union(str(base.component_of(a)), str(base.component_of(b)))
        roots = {uf.find(str(i)) for i in range(ncomp) if i not in birth_idx}
        stranded = [i for i in birth_idx if uf.find(str(i)) not in roots]
        if stranded:
            labels = [base.components[i][0] for i in stranded]
            raise StructuralError(f"birth components {labels} are not joined to K0 by the bands")

        base_arcs = set(base.arcs)
        k1_map = {arc: _canonical_element(base, el)
                  for arc, el in _resolve_map(k1, k1_map, base.edge_arc.keys(), "k1_map").items()}

        if k0 is None:
            k0, k0_map = _k0_from_base(base, birth_idx)
        else:
            if k0_map is None:
                raise StructuralError("an explicit k0 diagram needs a k0_map")
            k0_map = {arc: _canonical_element(base, el)
                      for arc, el in _resolve_map(k0, k0_map, base.edge_arc.keys(), "k0_map").items()}
        assert all(el.symbols() <= base_arcs for el in k1_map.values())
        return cls(base, bands, k1, k1_map, birth_idx, k0, k0_map)

    def birth_arcs(self) -> list[str]:
        return [a for i in self.births for a in self.base.components[i]]

    def k0_arcs(self) -> list[str]:
        return [a for i, comp in enumerate(self.base.components) if i not in self.births for a in comp]


def _k0_from_base(base: LinkDiagram, births: Sequence[int]):
    birth_edges = {e for e, arc in base.edge_arc.items()
                   if any(arc in base.components[i] for i in births)}
    code = base.pd
    edges = [e for e in code.edges() if e not in birth_edges]
    uf = _UnionFind(edges)
    crossings = []
    for i, j, k, l in code.crossings:
        if i in birth_edges and j in birth_edges:
            continue
        if i in birth_edges:
            uf.union(j, l)
        elif j in birth_edges:
            raise StructuralError(
                "a birth component passes over K0; give the K0 diagram explicitly with k0/k0_map")
        else:
            crossings.append((i, j, k, l))
    rep = {}
    for cls in uf.classes(edges):
        for e in cls:
            rep[e] = cls[0]
    crossings = [tuple(rep[e] for e in c) for c in crossings]
    touched = {e for c in crossings for e in c}
    loops = []
    for e in edges:
        if rep[e] not in touched and rep[e] not in loops:
            loops.append(rep[e])
    k0 = LinkDiagram.from_pd_code(PDCode(crossings, loops))
    k0_map = {arc: gen(base.arc_of(arc)) for arc in k0.arcs}
    return k0, k0_map


def concordance_from_json(data: Mapping) -> RibbonConcordanceDiagram:
    try:
        base = parse_pd(data["base"])
        k1 = parse_pd(data["k1"])
        k0 = parse_pd(data["k0"]) if data.get("k0") else None
        return RibbonConcordanceDiagram.build(
            base, [tuple(b) for b in data.get("bands", [])], k1, data["k1_map"],
            births=data.get("births"), k0=k0, k0_map=data.get("k0_map"))
    except KeyError as exc:
        raise ParseError(f"concordance file is missing field {exc}") from exc
    except TypeError as exc:
        raise ParseError(f"malformed concordance file: {exc}") from exc


def load_concordance(path) -> RibbonConcordanceDiagram:
    with open(Path(path)) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}: {exc.msg}", exc.lineno, exc.colno) from exc
    return concordance_from_json(data)


def concordance_presentation(rc: RibbonConcordanceDiagram) -> QuandlePresentation:
    """Presentation of the base still plus ``a = b`` for each band."""
    pres = quandle_presentation(rc.base)
    return pres.with_relations((gen(a), gen(b)) for a, b in rc.bands)


def concordance_movie(rc: RibbonConcordanceDiagram) -> MovieScript:
    """The movie ``K0``, births, saddles; only when births are split crossingless loops."""
    loops = set(rc.base.crossingless_components())
    if not set(rc.births) <= loops:
        raise StructuralError("births are entangled with K0; the movie needs Reidemeister events")
    keep = [c for c in rc.base.pd.crossings]
    birth_labels = [rc.base.components[i][0] for i in rc.births]
    code = PDCode(keep, [e for e in rc.base.pd.loops if rc.base.arc_of(e) not in birth_labels])
    initial = LinkDiagram.from_pd_code(code) if (code.crossings or code.loops) else None
    events = [Birth(b) for b in birth_labels] + [Saddle(a, b) for a, b in rc.bands]
    return MovieScript(initial, tuple(events))


# --------------------------------------------------------------------------
# theorem consequences


@dataclass
class SurjectivityResult:
    target: str
    col_c: int
    col_k1: int
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


@dataclass
class InjectivityResult:
    target: str
    col_c: int
    col_k0: int
    image_size: int
    fibers: dict[int, int]
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def _targets_sorted(targets: Sequence[FiniteQuandle]):
    return sorted(targets, key=lambda t: (t.name, t.size))


def check_surjectivity_consequence(rc: RibbonConcordanceDiagram, targets: Sequence[FiniteQuandle],
                                   workers: int = 1) -> list[SurjectivityResult]:
    """Check that colorings of ``C`` pull back injectively to colorings of ``K1``.

    Raises :class:`WitnessMapError` when ``k1_map`` turns a coloring of ``C``
    into something that is not a coloring of ``K1``.
    """
    pres_c = concordance_presentation(rc)
    pres_k1 = quandle_presentation(rc.k1)
    out = []
    for t in _targets_sorted(targets):
        rep = count_colorings(pres_c, t, keep=True, workers=workers)
        col_k1 = count_colorings(pres_k1, t, workers=workers).count
        res = SurjectivityResult(t.name, rep.count, col_k1)
        pushed = set()
        for assignment in rep.assignments():
            k1_col = {arc: evaluate(el, assignment, t) for arc, el in rc.k1_map.items()}
            bad = satisfies(pres_k1, k1_col, t)
            if bad is not None:
                raise WitnessMapError(
                    f"target {t.name}: k1_map sends the coloring {assignment} of C to a "
                    f"non-coloring of K1 (relation {bad[0]} = {bad[1]} fails)",
                    relation=bad, target=t.name)
            pushed.add(tuple(k1_col[a] for a in rc.k1.arcs))
        if len(pushed) != rep.count:
            res.violations.append(
                f"{t.name}: {rep.count} colorings of C pull back to only {len(pushed)} colorings of K1")
        if rep.count > col_k1:
            res.violations.append(f"{t.name}: col(C) = {rep.count} exceeds col(K1) = {col_k1}")
        out.append(res)
    return out


def check_injectivity_consequence(rc: RibbonConcordanceDiagram, targets: Sequence[FiniteQuandle],
                                  workers: int = 1) -> list[InjectivityResult]:
    """Restrict colorings of ``C`` to ``K0`` and describe the restriction map.

    Injectivity of ``Q(K0) -> Q(C)`` gives no inequality between coloring
    counts; the fibers are reported, and a restriction that is not a
    ``K0``-coloring is a violation.
    """
    pres_c = concordance_presentation(rc)
    pres_k0 = quandle_presentation(rc.k0)
    out = []
    for t in _targets_sorted(targets):
        rep = count_colorings(pres_c, t, keep=True, workers=workers)
        col_k0 = count_colorings(pres_k0, t, workers=workers).count
        fibers = Counter()
        violations = []
        for assignment in rep.assignments():
            k0_col = {arc: evaluate(el, assignment, t) for arc, el in rc.k0_map.items()}
            bad = satisfies(pres_k0, k0_col, t)
            if bad is not None and len(violations) < 5:
                violations.append(
                    f"{t.name}: restriction of {assignment} breaks K0 relation {bad[0]} = {bad[1]}")
            fibers[tuple(k0_col[a] for a in rc.k0.arcs)] += 1
        sizes = Counter(fibers.values())
        out.append(InjectivityResult(t.name, rep.count, col_k0, len(fibers),
                                     dict(sorted(sizes.items())), violations))
    return out


# --------------------------------------------------------------------------
# obstruction screen


@dataclass
class Verdict:
    status: str                      # "no obstruction found" | "obstructed" | "inconclusive"
    target: str | None = None
    certificate: dict | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def obstructed(self) -> bool:
        return self.status == "obstructed"


def quandle_size_upper_bound(pres: QuandlePresentation) -> int | None:
    """``1`` when the presented quandle is generated by a single element, else ``None``."""
    simple = simplify(pres)
    if len(simple.generators) <= 1:
        return len(simple.generators)
    return None


def obstruct_ribbon_concordance(k1: LinkDiagram, k0: LinkDiagram, targets: Sequence[FiniteQuandle],
                                budget: int = 10**6, workers: int = 1) -> Verdict:
    """Sound necessary-condition screen for a ribbon concordance from ``k1`` to ``k0``.

    ``Q(K0)`` embeds in ``Q(C)``, a quotient of ``Q(K1)``, so
    ``|Q(K0)| <= |Q(K1)|``.  A coloring of ``K0`` whose image is larger than a
    proven bound on ``|Q(K1)|`` certifies that no ribbon concordance exists.
    ``budget`` caps the number of ``K0`` colorings inspected; running out
    gives ``"inconclusive"``, never ``"obstructed"``.
    """
    bound = quandle_size_upper_bound(quandle_presentation(k1))
    if bound is None:
        return Verdict("no obstruction found",
                       notes=["no finite bound on |Q(K1)| is known; the screen does not apply"])
    pres_k0 = quandle_presentation(k0)
    spent = 0
    exhausted = False
    for t in _targets_sorted(targets):
        count = count_colorings(pres_k0, t, workers=workers).count
        if spent + count > budget:
            exhausted = True
            continue
        spent += count
        rep = count_colorings(pres_k0, t, keep=True, workers=workers)
        for col in rep.colorings:
            image = t.generated_subquandle(col)
            if len(image) > bound:
                return Verdict("obstructed", t.name, {
                    "k0_coloring": dict(zip(rep.generators, col)),
                    "image_size": len(image),
                    "k1_quandle_size_bound": bound,
                })
    if exhausted:
        return Verdict("inconclusive", notes=[f"coloring budget {budget} exhausted"])
    return Verdict("no obstruction found")
