"""Finite quandles stored as operation tables.

Elements are the integers ``0..n-1``.  ``op[x][y]`` is ``x ▷ y`` and
``inv_op[x][y]`` is ``x ◁ y``, the inverse of the right translation by ``y``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import DomainError, MalformedTableError

MAX_REPORTED_VIOLATIONS = 20


@dataclass(frozen=True)
class Violation:
    axiom: int
    witness: tuple[int, ...]

    def __str__(self):
        return f"axiom {self.axiom} fails at {self.witness}"


@dataclass(frozen=True)
class AxiomReport:
    valid: bool
    violations: tuple[Violation, ...] = ()
    truncated: bool = False

    def __bool__(self):
        return self.valid


def _as_table(table) -> np.ndarray:
    try:
        arr = np.asarray(table, dtype=np.int64)
    except (TypeError, ValueError) as exc:
        raise MalformedTableError(f"table is not an integer matrix: {exc}") from exc
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise MalformedTableError(f"table must be a non-empty square matrix, got shape {arr.shape}")
    n = arr.shape[0]
    bad = np.argwhere((arr < 0) | (arr >= n))
    if len(bad):
        x, y = (int(v) for v in bad[0])
        raise MalformedTableError(
            f"entry op[{x}][{y}] = {int(arr[x, y])} is outside [0, {n})", cell=(x, y))
    return arr


def verify_axioms(table, limit: int = MAX_REPORTED_VIOLATIONS) -> AxiomReport:
    """Exhaustively check the three quandle axioms on an ``n x n`` table.

    Witnesses: axiom 1 ``(x,)``; axiom 2 ``(x1, x2, y)`` with
    ``x1 ▷ y == x2 ▷ y``; axiom 3 ``(x, y, z)``.
    """
    op = _as_table(table)
    n = op.shape[0]
    found: list[Violation] = []
    total = 0

    diag = op[np.arange(n), np.arange(n)]
    for x in np.flatnonzero(diag != np.arange(n)):
        total += 1
        if len(found) < limit:
            found.append(Violation(1, (int(x),)))

    for y in range(n):
        column = op[:, y]
        seen: dict[int, int] = {}
        for x in range(n):
            v = int(column[x])
            if v in seen:
                total += 1
                if len(found) < limit:
                    found.append(Violation(2, (seen[v], x, y)))
            else:
                seen[v] = x

    # lhs[x,y,z] = (x▷y)▷z ; rhs[x,y,z] = (x▷z)▷(y▷z)
    lhs = op[op]
    rhs = op[op[:, None, :], op[None, :, :]]
    bad = np.argwhere(lhs != rhs)
    total += len(bad)
    for x, y, z in bad[: max(0, limit - len(found))]:
        found.append(Violation(3, (int(x), int(y), int(z))))

    return AxiomReport(valid=total == 0, violations=tuple(found), truncated=total > len(found))


@dataclass(frozen=True, eq=False)
class FiniteQuandle:
    """A quandle on ``{0, ..., size-1}``; axioms are checked on construction."""

    op: tuple[tuple[int, ...], ...]
    name: str = ""
    inv_op: tuple[tuple[int, ...], ...] = field(init=False, repr=False)

    def __init__(self, op, name: str = "", check: bool = True):
        arr = _as_table(op)
        if check:
            report = verify_axioms(arr, limit=1)
            if not report.valid:
                raise MalformedTableError(f"not a quandle: {report.violations[0]}")
        n = arr.shape[0]
        inv = np.empty_like(arr)
        for y in range(n):
            inv[arr[:, y], y] = np.arange(n)
        object.__setattr__(self, "op", tuple(tuple(int(v) for v in row) for row in arr))
        object.__setattr__(self, "inv_op", tuple(tuple(int(v) for v in row) for row in inv))
        object.__setattr__(self, "name", name or f"Q{n}")

    @property
    def size(self) -> int:
        return len(self.op)

    def __len__(self):
        return len(self.op)

    def __eq__(self, other):
        return isinstance(other, FiniteQuandle) and self.op == other.op

    def __hash__(self):
        return hash(self.op)

    def rop(self, x: int, y: int) -> int:
        return self.op[x][y]

    def inv_rop(self, x: int, y: int) -> int:
        return self.inv_op[x][y]

    def is_kei(self) -> bool:
        return self.op == self.inv_op

    def generated_subquandle(self, elements) -> frozenset[int]:
        """Closure of ``elements`` under ▷ and ◁."""
        closed = set(elements)
        frontier = list(closed)
        while frontier:
            new = []
            for x in list(closed):
                for y in frontier:
                    for v in (self.op[x][y], self.op[y][x], self.inv_op[x][y], self.inv_op[y][x]):
                        if v not in closed:
                            closed.add(v)
                            new.append(v)
            frontier = new
        return frozenset(closed)

    def to_json(self) -> dict:
        return {"size": self.size, "op": [list(row) for row in self.op]}

    @classmethod
    def from_json(cls, data: dict, name: str = "") -> "FiniteQuandle":
        if "op" not in data:
            raise MalformedTableError("quandle table needs an 'op' field")
        if "size" in data and data["size"] != len(data["op"]):
            raise MalformedTableError(
                f"declared size {data['size']} but table has {len(data['op'])} rows")
        return cls(data["op"], name=name or data.get("name", ""))


def load_quandle(path) -> FiniteQuandle:
    path = Path(path)
    with open(path) as fh:
        return FiniteQuandle.from_json(json.load(fh), name=path.stem)


def trivial_quandle(n: int) -> FiniteQuandle:
    if n < 1:
        raise DomainError("trivial quandle needs n >= 1")
    return FiniteQuandle([[x] * n for x in range(n)], name=f"trivial:{n}")


def dihedral_quandle(n: int) -> FiniteQuandle:
    """``R_n``: ``x ▷ y = 2y - x mod n``."""
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise DomainError(f"dihedral quandle needs a positive integer, got {n!r}")
    n = int(n)
    table = [[(2 * y - x) % n for y in range(n)] for x in range(n)]
    return FiniteQuandle(table, name=f"dihedral:{n}", check=False)


def conjugation_quandle(group) -> FiniteQuandle:
    """``conj(G)`` with ``a ▷ b = b⁻¹ a b``.

    ``group`` is a :class:`~ribbonquandle.groups.GroupTable` or a raw
    multiplication table (validated as a group).
    """
    from .groups import GroupTable

    if not isinstance(group, GroupTable):
        group = GroupTable(group)
    mul, inv = group.mul, group.inv
    n = group.order
    table = [[mul[mul[inv[b]][a]][b] for b in range(n)] for a in range(n)]
    return FiniteQuandle(table, name=f"conj:{group.name}")


@dataclass(frozen=True)
class QuandleMap:
    source: FiniteQuandle
    target: FiniteQuandle
    values: tuple[int, ...]

    def __init__(self, source: FiniteQuandle, target: FiniteQuandle, values: Sequence[int]):
        values = tuple(int(v) for v in values)
        if len(values) != source.size:
            raise DomainError(
                f"map has {len(values)} values but source has {source.size} elements")
        for x, v in enumerate(values):
            if not 0 <= v < target.size:
                raise DomainError(f"value {v} of element {x} is outside the target")
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "values", values)

    def __call__(self, x: int) -> int:
        return self.values[x]


@dataclass(frozen=True)
class HomomorphismCheck:
    ok: bool
    counterexample: tuple[str, int, int] | None = None

    def __bool__(self):
        return self.ok


def is_homomorphism(qmap: QuandleMap) -> HomomorphismCheck:
    """Check ``f(x▷y) = f(x)▷f(y)`` and ``f(x◁y) = f(x)◁f(y)`` for all pairs.

    The counterexample is ``(operation, x, y)`` with operation ``"▷"`` or ``"◁"``.
    """
    s, t, f = qmap.source, qmap.target, qmap.values
    n = s.size
    for x in range(n):
        for y in range(n):
            if f[s.op[x][y]] != t.op[f[x]][f[y]]:
                return HomomorphismCheck(False, ("▷", x, y))
            if f[s.inv_op[x][y]] != t.inv_op[f[x]][f[y]]:
                return HomomorphismCheck(False, ("◁", x, y))
    return HomomorphismCheck(True)
