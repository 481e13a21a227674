"""Fixture-building helpers: PD faces, trivial-band fission, connected sums.

Used only to generate files under ``corpus/``; not part of the package.
"""
from __future__ import annotations

from ribbonquandle.links import PDCode, _edge_endpoints, _orient


def faces(code: PDCode):
    """Faces as lists of (edge, agrees_with_orientation)."""
    ends = _edge_endpoints(code)
    status = _orient(code, ends)
    other = {}
    for e, (p, q) in ends.items():
        other[p] = q
        other[q] = p
    seen = set()
    out = []
    for ci in range(len(code.crossings)):
        for s in range(4):
            d = (ci, s)
            if d in seen:
                continue
            face = []
            while d not in seen:
                seen.add(d)
                e = code.crossings[d[0]][d[1]]
                face.append((e, status[d] == -1))
                far = other[d]
                d = (far[0], (far[1] + 1) % 4)
            out.append(face)
    return out


def fission(code: PDCode, e: str, f: str) -> PDCode:
    """Reconnect edges ``e`` and ``f`` by a short band across a shared face."""
    ends = _edge_endpoints(code)
    status = _orient(code, ends)
    head_e = next(p for p in ends[e] if status[p] == 1)
    head_f = next(p for p in ends[f] if status[p] == 1)
    crossings = [list(c) for c in code.crossings]
    crossings[head_e[0]][head_e[1]] = f
    crossings[head_f[0]][head_f[1]] = e
    return PDCode([tuple(c) for c in crossings], list(code.loops))


def connected_sum(a: PDCode, b: PDCode, ea: str, eb: str) -> PDCode:
    """Connected sum along edge ``ea`` of ``a`` and ``eb`` of ``b`` (labels must be disjoint)."""
    merged = PDCode(list(a.crossings) + list(b.crossings))
    return fission(merged, ea, eb)


def band_candidates(code: PDCode):
    out = []
    for face in faces(code):
        for x in range(len(face)):
            for y in range(x + 1, len(face)):
                (e, da), (f, db) = face[x], face[y]
                if e != f and da == db:
                    out.append((e, f))
    return sorted(set(out))
