"""Named coloring targets and the default battery."""
from __future__ import annotations

import json
from pathlib import Path

from .errors import DomainError, ParseError
from .groups import GroupTable, builtin_group
from .quandle import FiniteQuandle, conjugation_quandle, dihedral_quandle


def default_battery() -> list[FiniteQuandle]:
    """Dihedral quandles of order 3, 4, 5, 7 and conj(S3)."""
    return [dihedral_quandle(n) for n in (3, 4, 5, 7)] + [conjugation_quandle(builtin_group("S3"))]


def parse_target(spec: str) -> list[FiniteQuandle]:
    """Resolve a target spec to one or more quandles.

    Accepted forms: ``dihedral:<n>``, ``conj:<Zn|Sn|Dn>``, ``conj:<group.json>``,
    ``battery``, or a path to a quandle table JSON file.
    """
    if spec == "battery":
        return default_battery()
    kind, sep, arg = spec.partition(":")
    if sep and kind == "dihedral":
        try:
            n = int(arg)
        except ValueError:
            raise DomainError(f"bad dihedral order in target {spec!r}") from None
        return [dihedral_quandle(n)]
    if sep and kind == "conj":
        path = Path(arg)
        if path.suffix == ".json" or path.exists():
            data = _read_json(path)
            group = GroupTable.from_json(data, name=path.stem)
        else:
            group = builtin_group(arg)
        return [conjugation_quandle(group)]
    path = Path(spec)
    if not path.exists():
        raise DomainError(f"unknown target {spec!r}")
    return [FiniteQuandle.from_json(_read_json(path), name=path.stem)]


def _read_json(path: Path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise DomainError(f"no such file: {path}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc.msg}", exc.lineno, exc.colno) from exc
