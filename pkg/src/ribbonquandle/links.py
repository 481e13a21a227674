"""Link diagrams from PD codes, braid words, and their quandle presentations.

PD text grammar (ABNF, whitespace and ``#`` comments allowed between tokens)::

    pd        = [ item *( sep item ) [ sep ] ]
    sep       = ";" / ","
    item      = crossing / loop / marker
    crossing  = "X[" label "," label "," label "," label "]"
    loop      = "O[" label "]"
    marker    = "M[" label "," label "," label "," label "," orient "]"
    label     = 1*( ALPHA / DIGIT / "_" )
    orient    = "0" / "1"

``X[i,j,k,l]`` lists the four edges at a crossing counter-clockwise starting
from the incoming under-edge ``i``; ``k`` is the outgoing under-edge and
``j``/``l`` belong to the over-strand.  The crossing is positive when the
over-strand runs from ``l`` to ``j`` and negative when it runs from ``j`` to
``l``.  At a positive crossing the relation is ``arc(k) = arc(i) ▷ arc(j..l)``,
at a negative one ``arc(k) = arc(i) ◁ arc(j..l)``.  Markers only occur in
marked graph diagrams (see :mod:`ribbonquandle.surfaces`).

Arcs are named after the edge leaving their starting under-crossing (slot
``k``); arcs that never pass under anything are named after their first
listed edge.  Any edge label resolves to its arc via :meth:`LinkDiagram.arc_of`.

Braid text: ``q: i1 i2 ...`` with signed 1-based generator indices, e.g.
``2: 1 1 1`` for the trefoil and ``3: 1 -2 1 -2`` for the figure-eight.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import DomainError, ParseError, StructuralError
from .free import FreeQuandleElement, gen, inv_rack_op, rack_op
from .presentation import QuandlePresentation

# --------------------------------------------------------------------------
# PD text


@dataclass(frozen=True)
class Marker:
    ends: tuple[str, str, str, str]
    orient: int


@dataclass
class PDCode:
    crossings: list[tuple[str, str, str, str]] = field(default_factory=list)
    loops: list[str] = field(default_factory=list)
    markers: list[Marker] = field(default_factory=list)

    def __str__(self):
        items = [f"X[{','.join(c)}]" for c in self.crossings]
        items += [f"M[{','.join(m.ends)},{m.orient}]" for m in self.markers]
        items += [f"O[{e}]" for e in self.loops]
        return "; ".join(items)

    def edges(self) -> list[str]:
        seen: dict[str, None] = {}
        for c in self.crossings:
            for e in c:
                seen.setdefault(e)
        for m in self.markers:
            for e in m.ends:
                seen.setdefault(e)
        for e in self.loops:
            seen.setdefault(e)
        return list(seen)


_TOKEN = re.compile(r"""
    (?P<ws>\s+|\#[^\n]*)
  | (?P<head>[XOM])\s*\[
  | (?P<label>[A-Za-z0-9_]+)
  | (?P<punct>[\],;])
""", re.VERBOSE)


def _tokenize(text: str):
    pos, line, col = 0, 1, 1
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        if kind != "ws":
            value = m.group("head") if kind == "head" else m.group(0)
            yield kind, value, line, col
        chunk = m.group(0)
        nl = chunk.count("\n")
        if nl:
            line += nl
            col = len(chunk) - chunk.rfind("\n")
        else:
            col += len(chunk)
        pos = m.end()
    yield "eof", "", line, col


def parse_pd_code(text: str, allow_markers: bool = False) -> PDCode:
    """Parse PD text into raw crossing, loop and marker tuples (no validation)."""
    code = PDCode()
    toks = list(_tokenize(text))
    i = 0

    def expect(kind, value=None):
        nonlocal i
        k, v, ln, cl = toks[i]
        if k != kind or (value is not None and v != value):
            want = value if value is not None else kind
            got = v or "end of input"
            raise ParseError(f"expected {want!r}, got {got!r}", ln, cl)
        i += 1
        return v

    while toks[i][0] != "eof":
        k, v, ln, cl = toks[i]
        if k != "head":
            raise ParseError(f"expected 'X[', 'O[' or 'M[', got {v!r}", ln, cl)
        i += 1
        if v == "O":
            code.loops.append(expect("label"))
        else:
            arity = 4 if v == "X" else 5
            if v == "M" and not allow_markers:
                raise ParseError("marker vertices are only allowed in marked graph diagrams", ln, cl)
            labels = [expect("label")]
            for _ in range(arity - 1):
                expect("punct", ",")
                labels.append(expect("label"))
            if v == "X":
                code.crossings.append(tuple(labels))
            else:
                if labels[4] not in ("0", "1"):
                    _, _, ln2, cl2 = toks[i - 1]
                    raise ParseError(f"marker orientation must be 0 or 1, got {labels[4]!r}", ln2, cl2)
                code.markers.append(Marker(tuple(labels[:4]), int(labels[4])))
        expect("punct", "]")
        if toks[i][0] == "punct" and toks[i][1] in ",;":
            i += 1
    return code


# --------------------------------------------------------------------------
# diagrams


@dataclass(frozen=True)
class Crossing:
    over: str
    under_in: str
    under_out: str
    sign: int


class _UnionFind:
    def __init__(self, items: Iterable[str]):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra

    def classes(self, order: Sequence[str]) -> list[list[str]]:
        groups: dict[str, list[str]] = {}
        for x in order:
            groups.setdefault(self.find(x), []).append(x)
        return list(groups.values())


def _edge_endpoints(code: PDCode) -> dict[str, list[tuple[int, int]]]:
    ends: dict[str, list[tuple[int, int]]] = {}
    for ci, c in enumerate(code.crossings):
        for slot, e in enumerate(c):
            ends.setdefault(e, []).append((ci, slot))
    loops = set()
    for e in code.loops:
        if e in loops:
            raise StructuralError(f"loop O[{e}] is declared twice")
        if e in ends:
            raise StructuralError(f"edge {e} is declared as a loop but also meets a crossing")
        loops.add(e)
    for e, where in ends.items():
        if len(where) != 2:
            raise StructuralError(
                f"edge {e} has {len(where)} crossing endpoints; every edge needs exactly 2")
    return ends


def _orient(code: PDCode, ends) -> dict[tuple[int, int], int]:
    """Direction of every crossing endpoint: +1 entering the crossing, -1 leaving."""
    status: dict[tuple[int, int], int] = {}
    other_end = {}
    for e, (p, q) in ends.items():
        other_end[p] = (e, q)
        other_end[q] = (e, p)

    def assign(start, value):
        stack = [(start, value)]
        while stack:
            pt, v = stack.pop()
            if pt in status:
                if status[pt] != v:
                    e = code.crossings[pt[0]][pt[1]]
                    raise StructuralError(f"edge {e} has inconsistent orientation")
                continue
            status[pt] = v
            e, far = other_end[pt]
            stack.append((far, -v))
            ci, slot = pt
            if slot in (1, 3):
                stack.append(((ci, 4 - slot), -v))
            else:
                stack.append(((ci, 2 - slot), -v))

    for ci in range(len(code.crossings)):
        assign((ci, 0), 1)
    for ci in range(len(code.crossings)):
        if (ci, 3) not in status:
            # a component that never passes under: run the over-strand l -> j
            assign((ci, 3), 1)
    return status


@dataclass(frozen=True, eq=False)
class LinkDiagram:
    arcs: tuple[str, ...]
    crossings: tuple[Crossing, ...]
    components: tuple[tuple[str, ...], ...]
    edge_arc: dict = field(repr=False)
    pd: PDCode = field(repr=False)

    @classmethod
    def from_pd_code(cls, code: PDCode) -> "LinkDiagram":
        if code.markers:
            raise StructuralError("marked vertices must be resolved before building a link diagram")
        ends = _edge_endpoints(code)
        status = _orient(code, ends)
        edges = code.edges()

        arc_uf = _UnionFind(edges)
        comp_uf = _UnionFind(edges)
        for i, j, k, l in code.crossings:
            arc_uf.union(j, l)
            comp_uf.union(j, l)
            comp_uf.union(i, k)

        starts = {c[2] for c in code.crossings}
        edge_arc = {}
        arcs = []
        for cls_edges in arc_uf.classes(edges):
            named = [e for e in cls_edges if e in starts]
            if len(named) > 1:
                raise StructuralError(f"arc through edges {cls_edges} starts more than once")
            name = named[0] if named else cls_edges[0]
            arcs.append(name)
            for e in cls_edges:
                edge_arc[e] = name

        crossings = []
        for ci, (i, j, k, l) in enumerate(code.crossings):
            sign = 1 if status[(ci, 3)] == 1 else -1
            crossings.append(Crossing(edge_arc[j], edge_arc[i], edge_arc[k], sign))

        components = []
        for comp_edges in comp_uf.classes(edges):
            names: dict[str, None] = {}
            for e in comp_edges:
                names.setdefault(edge_arc[e])
            components.append(tuple(names))
        return cls(tuple(arcs), tuple(crossings), tuple(components), edge_arc, code)

    def arc_of(self, label: str) -> str:
        try:
            return self.edge_arc[label]
        except KeyError:
            raise StructuralError(f"no edge or arc named {label!r} in the diagram") from None

    def component_of(self, label: str) -> int:
        arc = self.arc_of(label)
        for idx, comp in enumerate(self.components):
            if arc in comp:
                return idx
        raise AssertionError(arc)

    def crossingless_components(self) -> list[int]:
        touched = set()
        for c in self.crossings:
            touched.update((c.over, c.under_in, c.under_out))
        return [i for i, comp in enumerate(self.components) if not touched & set(comp)]

    def writhe(self) -> int:
        return sum(c.sign for c in self.crossings)

    def __str__(self):
        return str(self.pd)


def parse_pd(text: str) -> LinkDiagram:
    return LinkDiagram.from_pd_code(parse_pd_code(text))


def quandle_presentation(diagram: LinkDiagram) -> QuandlePresentation:
    """One generator per arc and one crossing relation per crossing."""
    rels = []
    for c in diagram.crossings:
        x, y, z = gen(c.under_in), gen(c.over), gen(c.under_out)
        rels.append((z, rack_op(x, y) if c.sign > 0 else inv_rack_op(x, y)))
    return QuandlePresentation(diagram.arcs, tuple(rels))


def mirror_pd(code: PDCode) -> PDCode:
    """Swap over and under orientation data: every crossing changes sign."""
    return PDCode([(i, l, k, j) for i, j, k, l in code.crossings], list(code.loops), list(code.markers))


def relabel_pd(code: PDCode, prefix: str) -> PDCode:
    def r(e):
        return prefix + e

    return PDCode([tuple(r(e) for e in c) for c in code.crossings],
                  [r(e) for e in code.loops],
                  [Marker(tuple(r(e) for e in m.ends), m.orient) for m in code.markers])


# --------------------------------------------------------------------------
# braids


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.strands < 1:
            raise DomainError("a braid needs at least one strand")
        letters = tuple((int(i), int(s)) for i, s in self.letters)
        for i, s in letters:
            if not 1 <= i < self.strands or s not in (1, -1):
                raise DomainError(f"bad braid letter σ{i}^{s} on {self.strands} strands")
        object.__setattr__(self, "letters", letters)

    @classmethod
    def from_ints(cls, strands: int, word: Sequence[int]) -> "BraidWord":
        if any(w == 0 for w in word):
            raise DomainError("braid letters are nonzero signed indices")
        return cls(strands, tuple((abs(w), 1 if w > 0 else -1) for w in word))

    def __str__(self):
        return f"{self.strands}: " + " ".join(str(i * s) for i, s in self.letters)


def parse_braid(text: str) -> BraidWord:
    head, sep, body = text.strip().partition(":")
    if not sep:
        raise ParseError("braid text must look like 'q: i1 i2 ...'", 1, 1)
    try:
        strands = int(head)
    except ValueError:
        raise ParseError(f"bad strand count {head.strip()!r}", 1, 1) from None
    word = []
    col = len(head) + 2
    for tok in body.split():
        try:
            word.append(int(tok))
        except ValueError:
            raise ParseError(f"bad braid letter {tok!r}", 1, col) from None
        col += len(tok) + 1
    return BraidWord.from_ints(strands, word)


def braid_generators(q: int) -> tuple[str, ...]:
    return tuple(f"x{j}" for j in range(1, q + 1))


def braid_strand_action(braid: BraidWord) -> tuple[FreeQuandleElement, ...]:
    """Push the free generators ``x1..xq`` down through the braid.

    ``σi``:  ``(s_i, s_{i+1}) -> (s_{i+1}, s_i ▷ s_{i+1})``;
    ``σi⁻¹``: ``(s_i, s_{i+1}) -> (s_{i+1} ◁ s_i, s_i)``.
    """
    s = [gen(x) for x in braid_generators(braid.strands)]
    for i, sign in braid.letters:
        a, b = s[i - 1], s[i]
        if sign > 0:
            s[i - 1], s[i] = b, rack_op(a, b)
        else:
            s[i - 1], s[i] = inv_rack_op(b, a), a
    return tuple(s)


def braid_closure_presentation(braid: BraidWord) -> QuandlePresentation:
    gens = braid_generators(braid.strands)
    final = braid_strand_action(braid)
    return QuandlePresentation(gens, tuple((gen(x), f) for x, f in zip(gens, final)))


def braid_closure_pd(braid: BraidWord) -> PDCode:
    """PD code of the braid closure, crossing signs matching the strand action."""
    q = braid.strands
    counter = q
    cur = list(range(1, q + 1))
    raw = []
    for i, sign in braid.letters:
        left, right = cur[i - 1], cur[i]
        out_under, out_over = counter + 1, counter + 2
        counter += 2
        if sign > 0:
            # left strand passes under, ending in position i+1
            raw.append((left, out_over, out_under, right))
            cur[i - 1], cur[i] = out_over, out_under
        else:
            raw.append((right, left, out_under, out_over))
            cur[i - 1], cur[i] = out_under, out_over
    rename = {final: start for start, final in zip(range(1, q + 1), cur)}
    crossings = [tuple(str(rename.get(e, e)) for e in c) for c in raw]
    loops = [str(p) for p, final in zip(range(1, q + 1), cur) if final == p]
    # compact the labels to 1..N in order of appearance
    code = PDCode(crossings, loops)
    compact = {e: str(n) for n, e in enumerate(code.edges(), start=1)}
    return PDCode([tuple(compact[e] for e in c) for c in crossings], [compact[e] for e in loops])


def braid_closure_diagram(braid: BraidWord) -> LinkDiagram:
    return LinkDiagram.from_pd_code(braid_closure_pd(braid))


def torus_knot_braid(p: int, q: int) -> BraidWord:
    """``(σ1 σ2 ... σ_{q-1})^p`` on ``q`` strands; non-coprime input gives a torus link."""
    if q < 2 or p <= q:
        raise DomainError(f"torus knot braid needs p > q > 1, got p={p}, q={q}")
    return BraidWord(q, tuple((i, 1) for _ in range(p) for i in range(1, q)))
