"""Finite groups given by Cayley tables; source of conjugation quandles."""
from __future__ import annotations

import itertools
import json
import re
from pathlib import Path

import numpy as np

from .errors import DomainError, MalformedGroupError


class GroupTable:
    """A validated multiplication table ``mul[a][b] = a*b`` on ``0..n-1``."""

    def __init__(self, mul, inv=None, name: str = ""):
        try:
            arr = np.asarray(mul, dtype=np.int64)
        except (TypeError, ValueError) as exc:
            raise MalformedGroupError(f"multiplication table is not an integer matrix: {exc}")
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
            raise MalformedGroupError(f"multiplication table must be square, got shape {arr.shape}")
        n = arr.shape[0]
        bad = np.argwhere((arr < 0) | (arr >= n))
        if len(bad):
            a, b = (int(v) for v in bad[0])
            raise MalformedGroupError(f"entry mul[{a}][{b}] is outside [0, {n})", witness=(a, b))

        assoc = np.argwhere(arr[arr] != arr[:, arr])
        if len(assoc):
            a, b, c = (int(v) for v in assoc[0])
            raise MalformedGroupError(f"not associative at ({a}, {b}, {c})", witness=(a, b, c))

        idx = np.arange(n)
        ids = [e for e in range(n) if (arr[e] == idx).all() and (arr[:, e] == idx).all()]
        if not ids:
            raise MalformedGroupError("no two-sided identity element")
        e = ids[0]

        if inv is None:
            inv_list = []
            for a in range(n):
                cands = np.flatnonzero(arr[a] == e)
                if len(cands) == 0 or arr[cands[0], a] != e:
                    raise MalformedGroupError(f"element {a} has no inverse", witness=(a,))
                inv_list.append(int(cands[0]))
        else:
            inv_list = [int(v) for v in inv]
            if len(inv_list) != n:
                raise MalformedGroupError(f"inverse list has length {len(inv_list)}, expected {n}")
            for a, b in enumerate(inv_list):
                if not 0 <= b < n or arr[a, b] != e or arr[b, a] != e:
                    raise MalformedGroupError(f"inv[{a}] = {b} is not an inverse", witness=(a,))

        self.mul = tuple(tuple(int(v) for v in row) for row in arr)
        self.inv = tuple(inv_list)
        self.identity = e
        self.name = name or f"G{n}"

    @property
    def order(self) -> int:
        return len(self.mul)

    def product(self, *elements: int) -> int:
        acc = self.identity
        for g in elements:
            acc = self.mul[acc][g]
        return acc

    def to_json(self) -> dict:
        return {"mul": [list(r) for r in self.mul], "inv": list(self.inv)}

    @classmethod
    def from_json(cls, data: dict, name: str = "") -> "GroupTable":
        if "mul" not in data:
            raise MalformedGroupError("group table needs a 'mul' field")
        return cls(data["mul"], data.get("inv"), name=name or data.get("name", ""))


def load_group(path) -> GroupTable:
    path = Path(path)
    with open(path) as fh:
        return GroupTable.from_json(json.load(fh), name=path.stem)


def permutation_group(perms, name: str = "") -> GroupTable:
    """Cayley table of a list of permutations closed under composition.

    Product convention: ``(p*q)(i) = q[p[i]]`` (apply ``p`` first).
    """
    perms = [tuple(p) for p in perms]
    index = {p: i for i, p in enumerate(perms)}
    mul = [[index[tuple(q[p[i]] for i in range(len(p)))] for q in perms] for p in perms]
    return GroupTable(mul, name=name)


def cyclic_group(n: int) -> GroupTable:
    if n < 1:
        raise DomainError("cyclic group needs n >= 1")
    return GroupTable([[(a + b) % n for b in range(n)] for a in range(n)], name=f"Z{n}")


def symmetric_group(n: int) -> GroupTable:
    if n < 1:
        raise DomainError("symmetric group needs n >= 1")
    return permutation_group(sorted(itertools.permutations(range(n))), name=f"S{n}")


def dihedral_group(n: int) -> GroupTable:
    """Symmetries of the regular ``n``-gon, order ``2n``."""
    if n < 3:
        raise DomainError("dihedral group needs n >= 3")
    rot = [tuple((i + k) % n for i in range(n)) for k in range(n)]
    ref = [tuple((k - i) % n for i in range(n)) for k in range(n)]
    return permutation_group(rot + ref, name=f"D{n}")


_BUILTIN = {"Z": cyclic_group, "S": symmetric_group, "D": dihedral_group}


def builtin_group(spec: str) -> GroupTable:
    """``Z<n>``, ``S<n>`` or ``D<n>`` (``D4`` has order 8)."""
    m = re.fullmatch(r"([ZSD])(\d+)", spec)
    if not m:
        raise DomainError(f"unknown builtin group {spec!r}; expected Z<n>, S<n> or D<n>")
    return _BUILTIN[m.group(1)](int(m.group(2)))
