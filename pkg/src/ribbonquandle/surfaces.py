"""Presentations of surfaces in 4-space from movies and marked graph diagrams.

Movie script JSON::

    {"initial": "<PD text, may be empty>",
     "closed": false,
     "events": [
        {"type": "birth", "label": "x"},
        {"type": "saddle", "a": "x", "b": "y"},
        {"type": "death", "label": "x"},
        {"type": "reidemeister", "retired": ["y"],
         "introduced": [["y2", "y ^ x"]], "crossingless": []},
        {"type": "boundary_appear", "pd": "<PD text>"},      # or "presentation": {...}
        {"type": "boundary_cap", "labels": ["z"]}]}

Labels name arcs of the current still.  Edge labels of the initial diagram
are accepted as aliases of their arcs.

Marked graph diagrams use the PD grammar of :mod:`ribbonquandle.links` plus
``M[a,b,c,d,o]`` vertices, ends listed counter-clockwise.  With ``o = 0`` the
lower resolution joins ``a-b`` and ``c-d`` and the upper one ``a-d`` and
``b-c``; ``o = 1`` swaps the two.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Union

from .errors import ParseError, ScriptError, StructuralError
from .free import FreeQuandleElement, gen, parse_element
from .links import (LinkDiagram, PDCode, _UnionFind, parse_pd_code, quandle_presentation)
from .presentation import QuandlePresentation


@dataclass(frozen=True)
class Birth:
    label: str


@dataclass(frozen=True)
class Saddle:
    a: str
    b: str


@dataclass(frozen=True)
class Death:
    label: str


@dataclass(frozen=True)
class ReidemeisterRelabel:
    retired: tuple[str, ...] = ()
    introduced: tuple[tuple[str, FreeQuandleElement], ...] = ()
    crossingless: tuple[str, ...] = ()


@dataclass(frozen=True)
class BoundaryAppear:
    presentation: QuandlePresentation
    diagram: LinkDiagram | None = None


@dataclass(frozen=True)
class BoundaryCap:
    labels: tuple[str, ...]


Event = Union[Birth, Saddle, Death, ReidemeisterRelabel, BoundaryAppear, BoundaryCap]


@dataclass(frozen=True)
class MovieScript:
    initial: LinkDiagram | None
    events: tuple = ()
    closed: bool = False


class _Still:
    """Symbolic state of the current still: live labels grouped by component."""

    def __init__(self):
        self.generators: list[str] = []
        self.relations: list = []
        self.alias: dict[str, str] = {}
        self.used: set[str] = set()
        self.comp: dict[str, int] = {}
        self.crossingless: dict[int, bool] = {}
        self._next = 0

    def new_component(self, crossingless: bool) -> int:
        self._next += 1
        self.crossingless[self._next] = crossingless
        return self._next

    def add_generator(self, name: str, comp: int, where):
        if name in self.used:
            raise ScriptError(f"event {where}: label {name!r} is not fresh", where, name)
        self.used.add(name)
        self.generators.append(name)
        self.alias[name] = name
        self.comp[name] = comp

    def resolve(self, label: str, where) -> str:
        g = self.alias.get(label)
        if g is None or g not in self.comp:
            raise ScriptError(f"event {where}: label {label!r} is not live", where, label)
        return g

    def live(self) -> list[str]:
        return [g for g in self.generators if g in self.comp]

    def kill_component(self, c: int):
        for g in [g for g, k in self.comp.items() if k == c]:
            del self.comp[g]
        self.crossingless.pop(c, None)

    def merge(self, c1: int, c2: int):
        if c1 == c2:
            return
        flag = self.crossingless[c1] and self.crossingless[c2]
        for g, k in self.comp.items():
            if k == c2:
                self.comp[g] = c1
        self.crossingless[c1] = flag
        del self.crossingless[c2]

    def add_diagram(self, diagram: LinkDiagram, where):
        loops = set(diagram.crossingless_components())
        comps = [self.new_component(i in loops) for i in range(len(diagram.components))]
        for i, arcs in enumerate(diagram.components):
            for a in arcs:
                self.add_generator(a, comps[i], where)
        for edge, arc in diagram.edge_arc.items():
            if edge != arc:
                if edge in self.used:
                    raise ScriptError(f"event {where}: label {edge!r} is not fresh", where, edge)
                self.used.add(edge)
                self.alias[edge] = arc
        self.relations.extend(quandle_presentation(diagram).relations)


def _compile(script: MovieScript) -> _Still:
    st = _Still()
    if script.initial is not None:
        st.add_diagram(script.initial, "initial")
    for idx, ev in enumerate(script.events):
        if isinstance(ev, Birth):
            st.add_generator(ev.label, st.new_component(True), idx)
        elif isinstance(ev, Saddle):
            a, b = st.resolve(ev.a, idx), st.resolve(ev.b, idx)
            st.relations.append((gen(a), gen(b)))
            st.merge(st.comp[a], st.comp[b])
        elif isinstance(ev, Death):
            c = st.comp[st.resolve(ev.label, idx)]
            if not st.crossingless[c]:
                raise ScriptError(
                    f"event {idx}: death of {ev.label!r}, whose component is not a crossingless loop",
                    idx, ev.label)
            st.kill_component(c)
        elif isinstance(ev, ReidemeisterRelabel):
            new = []
            for label, definition in ev.introduced:
                resolved = {s: st.resolve(s, idx) for s in definition.symbols()}
                base = resolved[definition.base]
                value = FreeQuandleElement(base, tuple((resolved[h], e) for h, e in definition.word))
                new.append((label, value, st.comp[base]))
            retired = [st.resolve(r, idx) for r in ev.retired]
            for label, value, c in new:
                st.add_generator(label, c, idx)
                st.relations.append((gen(label), value))
            for r in retired:
                del st.comp[r]
            for label in ev.crossingless:
                st.crossingless[st.comp[st.resolve(label, idx)]] = True
        elif isinstance(ev, BoundaryAppear):
            if ev.diagram is not None:
                st.add_diagram(ev.diagram, idx)
            else:
                c = st.new_component(False)
                for g in ev.presentation.generators:
                    st.add_generator(g, c, idx)
                st.relations.extend(ev.presentation.relations)
        elif isinstance(ev, BoundaryCap):
            for c in {st.comp[st.resolve(label, idx)] for label in ev.labels}:
                st.kill_component(c)
        else:
            raise ScriptError(f"event {idx}: unknown event {ev!r}", idx)
    if script.closed and st.live():
        raise ScriptError(f"closed surface script ends with live labels {st.live()}",
                          len(script.events))
    return st


def movie_presentation(script: MovieScript) -> QuandlePresentation:
    """Fold the events of a movie into a presentation.

    birth: new generator; saddle ``a, b``: relation ``a = b``; death and
    boundary_cap: no change; reidemeister: new generators with their defining
    relations; boundary_appear: disjoint union with the supplied presentation.
    """
    st = _compile(script)
    return QuandlePresentation(tuple(st.generators), tuple(st.relations))


def final_live_labels(script: MovieScript) -> list[str]:
    return _compile(script).live()


# --------------------------------------------------------------------------
# script JSON

def _event_from_json(data: dict, idx: int):
    kind = data.get("type")
    try:
        if kind == "birth":
            return Birth(str(data["label"]))
        if kind == "saddle":
            return Saddle(str(data["a"]), str(data["b"]))
        if kind == "death":
            return Death(str(data["label"]))
        if kind == "reidemeister":
            intro = tuple((str(lbl), FreeQuandleElement.from_json(el))
                          for lbl, el in data.get("introduced", []))
            return ReidemeisterRelabel(tuple(data.get("retired", [])), intro,
                                       tuple(data.get("crossingless", [])))
        if kind == "boundary_appear":
            if "pd" in data:
                diagram = LinkDiagram.from_pd_code(parse_pd_code(data["pd"]))
                return BoundaryAppear(quandle_presentation(diagram), diagram)
            return BoundaryAppear(QuandlePresentation.from_json(data["presentation"]))
        if kind == "boundary_cap":
            return BoundaryCap(tuple(data["labels"]))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"event {idx}: malformed {kind} event: {exc}") from exc
    raise ParseError(f"event {idx}: unknown event type {kind!r}")


def _event_to_json(ev) -> dict:
    if isinstance(ev, Birth):
        return {"type": "birth", "label": ev.label}
    if isinstance(ev, Saddle):
        return {"type": "saddle", "a": ev.a, "b": ev.b}
    if isinstance(ev, Death):
        return {"type": "death", "label": ev.label}
    if isinstance(ev, ReidemeisterRelabel):
        return {"type": "reidemeister", "retired": list(ev.retired),
                "introduced": [[lbl, str(el)] for lbl, el in ev.introduced],
                "crossingless": list(ev.crossingless)}
    if isinstance(ev, BoundaryAppear):
        if ev.diagram is not None:
            return {"type": "boundary_appear", "pd": str(ev.diagram.pd)}
        return {"type": "boundary_appear", "presentation": ev.presentation.to_json()}
    if isinstance(ev, BoundaryCap):
        return {"type": "boundary_cap", "labels": list(ev.labels)}
    raise TypeError(ev)


def script_from_json(data: dict) -> MovieScript:
    initial_text = data.get("initial", "") or ""
    code = parse_pd_code(initial_text)
    initial = None
    if code.crossings or code.loops:
        initial = LinkDiagram.from_pd_code(code)
    events = tuple(_event_from_json(ev, i) for i, ev in enumerate(data.get("events", [])))
    return MovieScript(initial, events, bool(data.get("closed", False)))


def script_to_json(script: MovieScript) -> dict:
    return {
        "initial": "" if script.initial is None else str(script.initial.pd),
        "closed": script.closed,
        "events": [_event_to_json(ev) for ev in script.events],
    }


def load_script(path) -> MovieScript:
    with open(Path(path)) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}: {exc.msg}", exc.lineno, exc.colno) from exc
    return script_from_json(data)


# --------------------------------------------------------------------------
# marked graph diagrams


@dataclass(frozen=True, eq=False)
class Resolution:
    diagram: LinkDiagram
    edge_arc: dict = field(repr=False)   # marked-graph edge label -> arc of the resolution


class MarkedGraphDiagram:
    def __init__(self, code: PDCode):
        ends: dict[str, int] = {}
        for c in code.crossings:
            for e in c:
                ends[e] = ends.get(e, 0) + 1
        for m in code.markers:
            for e in m.ends:
                ends[e] = ends.get(e, 0) + 1
        for e in code.loops:
            if e in ends:
                raise StructuralError(f"edge {e} is declared as a loop but also meets a vertex")
        for e, n in ends.items():
            if n != 2:
                raise StructuralError(f"edge {e} has {n} vertex endpoints; every edge needs exactly 2")
        self.code = code
        # both resolutions must be consistent diagrams
        self.lower = self.resolve("lower")
        self.upper = self.resolve("upper")

    @property
    def markers(self):
        return self.code.markers

    def _pairs(self, marker, side):
        a, b, c, d = marker.ends
        first = (marker.orient == 0) == (side == "lower")
        return ((a, b), (c, d)) if first else ((a, d), (b, c))

    def resolve(self, side: str) -> Resolution:
        if side not in ("lower", "upper"):
            raise ValueError(f"side must be 'lower' or 'upper', got {side!r}")
        edges = self.code.edges()
        uf = _UnionFind(edges)
        for m in self.code.markers:
            for x, y in self._pairs(m, side):
                uf.union(x, y)
        rep = {}
        for cls in uf.classes(edges):
            for e in cls:
                rep[e] = cls[0]
        crossings = [tuple(rep[e] for e in c) for c in self.code.crossings]
        touched = {e for c in crossings for e in c}
        loops = []
        for e in edges:
            r = rep[e]
            if r not in touched and r not in loops:
                loops.append(r)
        try:
            diagram = LinkDiagram.from_pd_code(PDCode(crossings, loops))
        except StructuralError as exc:
            raise StructuralError(f"{side} resolution is inconsistent: {exc}") from exc
        return Resolution(diagram, {e: diagram.arc_of(rep[e]) for e in edges})

    def marker_arcs(self) -> list[tuple[str, str]]:
        """The two arcs of the lower resolution meeting at each marker."""
        out = []
        for m in self.code.markers:
            a, _, c, _ = m.ends
            out.append((self.lower.edge_arc[a], self.lower.edge_arc[c]))
        return out


def parse_marked_graph(text: str) -> MarkedGraphDiagram:
    return MarkedGraphDiagram(parse_pd_code(text, allow_markers=True))


def resolve_markers(mgd: MarkedGraphDiagram, side: str = "lower") -> Resolution:
    return mgd.lower if side == "lower" else mgd.upper if side == "upper" else mgd.resolve(side)


def ch_presentation(mgd: MarkedGraphDiagram) -> QuandlePresentation:
    """Crossing relations of the lower resolution plus ``x_i = y_i`` per marker."""
    base = quandle_presentation(mgd.lower.diagram)
    extra = [(gen(x), gen(y)) for x, y in mgd.marker_arcs() if x != y]
    return base.with_relations(extra)


def hyperbolic_movie(mgd: MarkedGraphDiagram) -> MovieScript:
    """Movie of the hyperbolic splitting: lower still, one saddle per marker, then caps."""
    events: list = [Saddle(x, y) for x, y in mgd.marker_arcs()]
    st = _compile(MovieScript(mgd.lower.diagram, tuple(events)))
    for c in sorted(set(st.comp.values())):
        first = next(g for g in st.live() if st.comp[g] == c)
        events.append(Death(first) if st.crossingless[c] else BoundaryCap((first,)))
    return MovieScript(mgd.lower.diagram, tuple(events))
