"""Quandle presentations, coloring enumeration and Tietze simplification."""
from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .errors import CyclicSubstitutionError, DomainError, ParseError
from .free import FreeQuandleElement, check_symbol, invert_word, normalize
from .quandle import FiniteQuandle

Relation = tuple[FreeQuandleElement, FreeQuandleElement]


def _relation_key(rel: Relation) -> Relation:
    a, b = rel
    return (a, b) if a <= b else (b, a)


@dataclass(frozen=True)
class QuandlePresentation:
    generators: tuple[str, ...]
    relations: tuple[Relation, ...] = ()

    def __post_init__(self):
        gens = tuple(check_symbol(g) for g in self.generators)
        if len(set(gens)) != len(gens):
            raise DomainError(f"duplicate generators in {gens}")
        rels = tuple((a, b) for a, b in self.relations)
        known = set(gens)
        for a, b in rels:
            missing = (a.symbols() | b.symbols()) - known
            if missing:
                raise DomainError(
                    f"relation {a} = {b} uses undeclared generators {sorted(missing)}")
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "relations", rels)

    @property
    def rank_bound(self) -> int:
        """Number of generators; an upper bound on the rank only."""
        return len(self.generators)

    def total_length(self) -> int:
        return sum(len(a.word) + len(b.word) + 2 for a, b in self.relations)

    def with_relations(self, extra: Iterable[Relation]) -> "QuandlePresentation":
        return QuandlePresentation(self.generators, self.relations + tuple(extra))

    def with_generators(self, extra: Iterable[str]) -> "QuandlePresentation":
        return QuandlePresentation(self.generators + tuple(extra), self.relations)

    def disjoint_union(self, other: "QuandlePresentation") -> "QuandlePresentation":
        clash = set(self.generators) & set(other.generators)
        if clash:
            raise DomainError(f"generator labels are not disjoint: {sorted(clash)}")
        return QuandlePresentation(self.generators + other.generators,
                                   self.relations + other.relations)

    def __str__(self):
        rels = ", ".join(f"{a} = {b}" for a, b in self.relations)
        return f"< {', '.join(self.generators)} | {rels} >"

    def to_json(self) -> dict:
        return {
            "generators": list(self.generators),
            "relations": [[a.to_json(), b.to_json()] for a, b in self.relations],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "QuandlePresentation":
        try:
            gens = [str(g) for g in data["generators"]]
            rels = []
            for pair in data.get("relations", []):
                lhs, rhs = pair
                rels.append((FreeQuandleElement.from_json(lhs), FreeQuandleElement.from_json(rhs)))
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(f"malformed presentation: {exc}") from exc
        return cls(tuple(gens), tuple(rels))


def load_presentation(path) -> QuandlePresentation:
    with open(Path(path)) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}: {exc.msg}", exc.lineno, exc.colno) from exc
    return QuandlePresentation.from_json(data)


# --------------------------------------------------------------------------
# coloring enumeration

@dataclass
class ColoringReport:
    target: FiniteQuandle
    generators: tuple[str, ...]
    count: int
    colorings: list[tuple[int, ...]] | None = None
    truncated: bool = False
    elapsed: float = 0.0

    def assignments(self) -> list[dict[str, int]]:
        if self.colorings is None:
            raise DomainError("colorings were not retained; pass keep=True")
        return [dict(zip(self.generators, c)) for c in self.colorings]


class _Compiled:
    """Index-based form of a presentation used by the search."""

    def __init__(self, pres: QuandlePresentation):
        self.generators = pres.generators
        index = {g: i for i, g in enumerate(pres.generators)}
        self.sides = []
        self.rels_of: list[list[int]] = [[] for _ in pres.generators]
        for r, (a, b) in enumerate(pres.relations):
            pair = tuple(
                (index[x.base], tuple((index[g], e) for g, e in x.word)) for x in (a, b))
            self.sides.append(pair)
            for s in {index[s] for s in a.symbols() | b.symbols()}:
                self.rels_of[s].append(r)
        m = len(pres.generators)
        # branch on the most constrained generators first
        self.order = sorted(range(m), key=lambda g: (-len(self.rels_of[g]), g))


def _side_value(side, values, op, inv):
    base, word = side
    v = values[base]
    if v < 0:
        return -1
    for g, e in word:
        y = values[g]
        if y < 0:
            return -1
        v = op[v][y] if e == 1 else inv[v][y]
    return v


def _forceable(side, values):
    """Generator forced by this side: the unknown base with a fully known word."""
    base, word = side
    if values[base] >= 0:
        return -1
    for g, _ in word:
        if g == base or values[g] < 0:
            return -1
    return base


class _Search:
    def __init__(self, comp: _Compiled, target: FiniteQuandle, keep: bool, limit: int | None,
                 propagate: bool = True):
        self.comp = comp
        self.op = target.op
        self.inv = target.inv_op
        self.n = target.size
        self.keep = keep
        self.limit = limit
        self.propagate = propagate
        self.count = 0
        self.found: list[tuple[int, ...]] = []

    def _propagate(self, values, pending, trail) -> bool:
        comp, op, inv = self.comp, self.op, self.inv
        queue = list(pending)
        while queue:
            r = queue.pop()
            lhs, rhs = comp.sides[r]
            lv = _side_value(lhs, values, op, inv)
            rv = _side_value(rhs, values, op, inv)
            if lv >= 0 and rv >= 0:
                if lv != rv:
                    return False
                continue
            if not self.propagate:
                continue
            if lv >= 0:
                known, side = lv, rhs
            elif rv >= 0:
                known, side = rv, lhs
            else:
                continue
            g = _forceable(side, values)
            if g < 0:
                continue
            v = known
            for h, e in reversed(side[1]):
                y = values[h]
                v = inv[v][y] if e == 1 else op[v][y]
            values[g] = v
            trail.append(g)
            queue.extend(comp.rels_of[g])
        return True

    def _record(self, values):
        self.count += 1
        if self.keep and (self.limit is None or len(self.found) < self.limit):
            self.found.append(tuple(values))

    def _assign(self, values, g, v, depth):
        trail = [g]
        values[g] = v
        if self._propagate(values, self.comp.rels_of[g], trail):
            self._run(values, depth)
        for h in trail:
            values[h] = -1

    def _run(self, values, depth):
        order = self.comp.order
        while depth < len(order) and values[order[depth]] >= 0:
            depth += 1
        if depth == len(order):
            self._record(values)
            return
        g = order[depth]
        for v in range(self.n):
            self._assign(values, g, v, depth + 1)

    def run_all(self):
        self._run([-1] * len(self.comp.generators), 0)

    def run_branch(self, value: int):
        comp = self.comp
        if not comp.order:
            self._record([])
            return
        self._assign([-1] * len(comp.generators), comp.order[0], value, 1)


def _branch_task(args):
    pres, target, keep, limit, propagate, value = args
    s = _Search(_Compiled(pres), target, keep, limit, propagate)
    s.run_branch(value)
    return s.count, s.found


def count_colorings(pres: QuandlePresentation, target: FiniteQuandle, keep: bool = False,
                    workers: int = 1, limit: int | None = None,
                    propagate: bool = True) -> ColoringReport:
    """Count the quandle homomorphisms from ``pres`` to ``target``.

    The search is exhaustive; ``propagate`` only prunes.  With ``keep`` the
    colorings are returned sorted, as tuples in generator order.  ``limit``
    caps how many are retained (the first ones in search order, which does
    not depend on ``workers``).
    """
    start = time.perf_counter()
    comp = _Compiled(pres)
    if not comp.order:
        count, found = 1, [()]
    elif workers <= 1:
        count, found = 0, []
        for v in range(target.size):
            c, f = _branch_task((pres, target, keep, limit, propagate, v))
            count += c
            found.extend(f)
    else:
        tasks = [(pres, target, keep, limit, propagate, v) for v in range(target.size)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_branch_task, tasks))
        count = sum(c for c, _ in results)
        found = [f for _, fs in results for f in fs]
    truncated = False
    if keep and limit is not None and len(found) > limit:
        found = found[:limit]
    if keep and limit is not None and count > len(found):
        truncated = True
    return ColoringReport(
        target=target,
        generators=pres.generators,
        count=count,
        colorings=sorted(found) if keep else None,
        truncated=truncated,
        elapsed=time.perf_counter() - start,
    )


def satisfies(pres: QuandlePresentation, assignment: Mapping[str, int], target: FiniteQuandle) -> Relation | None:
    """First relation violated by ``assignment``, or ``None``."""
    from .free import evaluate

    for a, b in pres.relations:
        if evaluate(a, assignment, target) != evaluate(b, assignment, target):
            return (a, b)
    return None


def coloring_profile(pres: QuandlePresentation, targets: Sequence[FiniteQuandle],
                     workers: int = 1) -> tuple[int, ...]:
    return tuple(count_colorings(pres, t, workers=workers).count for t in targets)


# --------------------------------------------------------------------------
# substitution and simplification

def substitute_element(x: FreeQuandleElement, g: str, value: FreeQuandleElement) -> FreeQuandleElement:
    """Replace ``g`` in ``x``; a letter ``g^e`` becomes ``w⁻¹ b^e w`` for ``value = (b, w)``."""
    if g not in x.symbols():
        return x
    conj_in = invert_word(value.word)
    letters: list = []
    base = x.base
    if base == g:
        base = value.base
        letters.extend(value.word)
    for h, e in x.word:
        if h == g:
            letters.extend(conj_in)
            letters.append((value.base, e))
            letters.extend(value.word)
        else:
            letters.append((h, e))
    return normalize(base, letters)


def substitute(pres: QuandlePresentation, g: str, value: FreeQuandleElement) -> QuandlePresentation:
    """Eliminate generator ``g`` by replacing it with ``value`` everywhere."""
    if g in value.symbols():
        raise CyclicSubstitutionError(f"cannot substitute {g} := {value}: {g} occurs in the value")
    rels = tuple((substitute_element(a, g, value), substitute_element(b, g, value))
                 for a, b in pres.relations)
    gens = tuple(h for h in pres.generators if h != g)
    return QuandlePresentation(gens, rels)


def drop_tautologies(pres: QuandlePresentation) -> QuandlePresentation:
    seen = set()
    rels = []
    for rel in pres.relations:
        a, b = rel
        key = _relation_key(rel)
        if a == b or key in seen:
            continue
        seen.add(key)
        rels.append(rel)
    return QuandlePresentation(pres.generators, tuple(rels))


def _find_move(pres: QuandlePresentation):
    pos = {g: i for i, g in enumerate(pres.generators)}
    best = None
    for a, b in pres.relations:
        if a.is_generator() and b.is_generator() and pos[a.base] < pos[b.base]:
            a, b = b, a     # a merge keeps the earlier generator
        for lhs, rhs in ((a, b), (b, a)):
            if not lhs.is_generator() or lhs.base in rhs.symbols():
                continue
            # merges first, then the shortest definition
            key = (0 if rhs.is_generator() else 1, len(rhs.word))
            if best is None or key < best[0]:
                best = (key, lhs.base, rhs)
        if best is not None and best[0][0] == 0:
            break
    return None if best is None else (best[1], best[2])


def simplify(pres: QuandlePresentation) -> QuandlePresentation:
    """Tietze simplification: merge, eliminate defined generators, drop tautologies.

    Every step removes a generator or a relation, so the loop terminates.
    The generator count of the result is an upper bound on the rank.
    """
    pres = drop_tautologies(pres)
    while True:
        move = _find_move(pres)
        if move is None:
            return pres
        g, value = move
        pres = drop_tautologies(substitute(pres, g, value))
